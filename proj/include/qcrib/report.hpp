#pragma once

#include <chrono>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace qcrib {

inline constexpr const char* kToolVersion = "qcrib 0.1.0 (format 1)";

/// One verdict with an optional structured counterexample. `info` carries
/// auxiliary data (seeds, sample counts) that is not a counterexample.
struct Check {
  std::string name;
  bool verdict = false;
  nlohmann::json witness;  // null when the check passed
  nlohmann::json info;
  double timing_ms = 0.0;
};

/// Result record emitted by every checker and by the CLI.
struct CheckReport {
  std::string subject;
  std::vector<Check> checks;

  bool overall() const {
    for (const auto& c : checks)
      if (!c.verdict) return false;
    return true;
  }

  Check& add(std::string name, bool verdict, nlohmann::json witness = nullptr) {
    checks.push_back({std::move(name), verdict, std::move(witness), nullptr, 0.0});
    return checks.back();
  }

  void append(const CheckReport& other) {
    checks.insert(checks.end(), other.checks.begin(), other.checks.end());
  }

  /// `with_timing=false` yields the canonical form used for digests and
  /// determinism comparisons.
  nlohmann::json to_json(bool with_timing = true) const {
    nlohmann::json cs = nlohmann::json::array();
    for (const auto& c : checks) {
      nlohmann::json j{{"name", c.name}, {"verdict", c.verdict}};
      if (!c.witness.is_null()) j["witness"] = c.witness;
      if (!c.info.is_null()) j["info"] = c.info;
      if (with_timing) j["timing_ms"] = c.timing_ms;
      cs.push_back(std::move(j));
    }
    return nlohmann::json{{"subject", subject},
                          {"version", kToolVersion},
                          {"checks", std::move(cs)},
                          {"overall", overall()}};
  }

  std::string to_text() const {
    std::string out;
    for (const auto& c : checks) {
      out += c.verdict ? "ok   " : "FAIL ";
      out += c.name;
      if (!c.witness.is_null()) out += "  witness: " + c.witness.dump();
      out += '\n';
    }
    out += overall() ? "overall: pass\n" : "overall: fail\n";
    return out;
  }
};

/// Runs `fn` (returning a Check) and stamps its wall time.
template <typename Fn>
Check timed_check(Fn&& fn) {
  auto t0 = std::chrono::steady_clock::now();
  Check c = fn();
  auto t1 = std::chrono::steady_clock::now();
  c.timing_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
  return c;
}

}  // namespace qcrib
