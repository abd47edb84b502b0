#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qcrib/bitset.hpp"
#include "qcrib/report.hpp"

namespace qcrib {

inline constexpr std::uint32_t npos32 = static_cast<std::uint32_t>(-1);

/// A finite complete lattice presented by its order relation. Join and
/// meet tables are computed once (`finalize`) and cached; all other code
/// treats the value as immutable.
class FinLattice {
 public:
  FinLattice() = default;

  /// Strict constructor for parsed input: `ids` are sorted (duplicates are
  /// a malformed-input error), `leq_pairs` is the relation exactly as
  /// given. Nothing is completed silently; `validate_lattice` reports
  /// missing axioms.
  static FinLattice from_leq(std::vector<std::string> ids,
                             const std::vector<std::pair<std::string, std::string>>& leq_pairs);

  /// Builder constructor: `ids` already canonical, `up[a] = {b | a <= b}`.
  static FinLattice from_order(std::vector<std::string> ids, std::vector<Bitset> up);

  std::size_t size() const { return ids_.size(); }
  const std::vector<std::string>& ids() const { return ids_; }
  const std::string& id(std::uint32_t a) const { return ids_[a]; }
  std::uint32_t index_of(std::string_view id) const;  // throws UnknownElementError

  bool leq(std::uint32_t a, std::uint32_t b) const { return up_[a].test(b); }
  const Bitset& up_set(std::uint32_t a) const { return up_[a]; }

  bool finalized() const { return finalized_; }
  std::uint32_t top() const { return top_; }
  std::uint32_t bottom() const { return bot_; }

  std::uint32_t join2(std::uint32_t a, std::uint32_t b) const { return join_[a * size() + b]; }
  std::uint32_t meet2(std::uint32_t a, std::uint32_t b) const { return meet_[a * size() + b]; }

  /// join(empty) = bottom, meet(empty) = top.
  std::uint32_t join_all(std::span<const std::uint32_t> xs) const;
  std::uint32_t meet_all(std::span<const std::uint32_t> xs) const;
  std::uint32_t join_all(const Bitset& xs) const;
  std::uint32_t meet_all(const Bitset& xs) const;

  /// Computes the tables from the order relation. Returns the first
  /// violated axiom instead when the presented order is not a complete
  /// lattice; the value stays unusable for join/meet in that case.
  std::optional<Check> finalize();

  /// Builder path: install tables known by construction (set algebra).
  void set_tables(std::vector<std::uint32_t> join, std::vector<std::uint32_t> meet,
                  std::uint32_t top, std::uint32_t bottom);

 private:
  std::vector<std::string> ids_;
  std::vector<Bitset> up_;
  std::vector<std::uint32_t> join_, meet_;
  std::uint32_t top_ = npos32, bot_ = npos32;
  bool finalized_ = false;
};

/// Full axiom scan (reflexive, antisymmetric, transitive, all joins and
/// meets exist). Independent of any cached tables.
CheckReport validate_lattice(const FinLattice& L);

/// a /\ (b \/ c) = (a /\ b) \/ (a /\ c) over all triples; witness is the
/// first violating triple in canonical order.
Check distributivity_check(const FinLattice& L);

}  // namespace qcrib
