#include "qcrib/lattice.hpp"

#include <algorithm>

#include "qcrib/errors.hpp"

namespace qcrib {

namespace {

// Least element of `candidates` w.r.t. up-sets, or npos32 if there is none
// (empty set, or no single element below all others).
std::uint32_t least_of(const std::vector<Bitset>& up, const Bitset& candidates) {
  for (std::size_t a = candidates.first(); a != npos; a = candidates.next(a))
    if (candidates.is_subset_of(up[a])) return static_cast<std::uint32_t>(a);
  return npos32;
}

std::uint32_t greatest_of(const std::vector<Bitset>& up, const Bitset& candidates) {
  for (std::size_t a = candidates.first(); a != npos; a = candidates.next(a)) {
    bool above_all = true;
    for (std::size_t b = candidates.first(); b != npos && above_all; b = candidates.next(b))
      above_all = up[b].test(a);
    if (above_all) return static_cast<std::uint32_t>(a);
  }
  return npos32;
}

struct OrderScan {
  std::vector<std::uint32_t> join, meet;
  std::uint32_t top = npos32, bot = npos32;
  std::optional<Check> violation;
};

// Shared core of validation and finalization: checks the poset axioms and
// computes all binary joins/meets, stopping at the first violation.
OrderScan scan_order(const FinLattice& L) {
  OrderScan out;
  const std::size_t n = L.size();
  auto fail = [&](nlohmann::json w) {
    out.violation = Check{"lattice-axioms", false, std::move(w)};
    return out;
  };

  for (std::uint32_t a = 0; a < n; ++a)
    if (!L.leq(a, a)) return fail({{"axiom", "reflexivity"}, {"element", L.id(a)}});
  for (std::uint32_t a = 0; a < n; ++a)
    for (std::uint32_t b = a + 1; b < n; ++b)
      if (L.leq(a, b) && L.leq(b, a))
        return fail({{"axiom", "antisymmetry"}, {"elements", {L.id(a), L.id(b)}}});
  for (std::uint32_t a = 0; a < n; ++a)
    for (std::uint32_t b = 0; b < n; ++b) {
      if (!L.leq(a, b)) continue;
      for (std::uint32_t c = 0; c < n; ++c)
        if (L.leq(b, c) && !L.leq(a, c))
          return fail({{"axiom", "transitivity"}, {"elements", {L.id(a), L.id(b), L.id(c)}}});
    }

  std::vector<Bitset> down(n, Bitset(n));
  for (std::uint32_t a = 0; a < n; ++a)
    for (std::uint32_t b = 0; b < n; ++b)
      if (L.leq(a, b)) down[b].set(a);

  out.join.assign(n * n, npos32);
  out.meet.assign(n * n, npos32);
  std::vector<Bitset> up(n);
  for (std::uint32_t a = 0; a < n; ++a) up[a] = L.up_set(a);

  for (std::uint32_t a = 0; a < n; ++a)
    for (std::uint32_t b = a; b < n; ++b) {
      std::uint32_t j = least_of(up, up[a] & up[b]);
      if (j == npos32)
        return fail({{"axiom", "join-exists"}, {"elements", {L.id(a), L.id(b)}}});
      std::uint32_t m = greatest_of(up, down[a] & down[b]);
      if (m == npos32)
        return fail({{"axiom", "meet-exists"}, {"elements", {L.id(a), L.id(b)}}});
      out.join[a * n + b] = out.join[b * n + a] = j;
      out.meet[a * n + b] = out.meet[b * n + a] = m;
    }

  out.bot = least_of(up, Bitset::full(n));
  if (out.bot == npos32) return fail({{"axiom", "bottom-exists"}});
  out.top = greatest_of(up, Bitset::full(n));
  if (out.top == npos32) return fail({{"axiom", "top-exists"}});
  return out;
}

}  // namespace

FinLattice FinLattice::from_leq(std::vector<std::string> ids,
                                const std::vector<std::pair<std::string, std::string>>& leq_pairs) {
  std::sort(ids.begin(), ids.end());
  if (std::adjacent_find(ids.begin(), ids.end()) != ids.end())
    throw MalformedInputError("duplicate element ids in lattice");
  if (ids.empty()) throw MalformedInputError("lattice must have at least one element");
  FinLattice L;
  L.ids_ = std::move(ids);
  L.up_.assign(L.ids_.size(), Bitset(L.ids_.size()));
  for (const auto& [a, b] : leq_pairs) L.up_[L.index_of(a)].set(L.index_of(b));
  return L;
}

FinLattice FinLattice::from_order(std::vector<std::string> ids, std::vector<Bitset> up) {
  FinLattice L;
  L.ids_ = std::move(ids);
  L.up_ = std::move(up);
  return L;
}

std::uint32_t FinLattice::index_of(std::string_view id) const {
  auto it = std::lower_bound(ids_.begin(), ids_.end(), id);
  if (it == ids_.end() || *it != id)
    throw UnknownElementError("unknown lattice element '" + std::string(id) + "'");
  return static_cast<std::uint32_t>(it - ids_.begin());
}

std::uint32_t FinLattice::join_all(std::span<const std::uint32_t> xs) const {
  std::uint32_t acc = bot_;
  for (auto x : xs) acc = join2(acc, x);
  return acc;
}

std::uint32_t FinLattice::meet_all(std::span<const std::uint32_t> xs) const {
  std::uint32_t acc = top_;
  for (auto x : xs) acc = meet2(acc, x);
  return acc;
}

std::uint32_t FinLattice::join_all(const Bitset& xs) const {
  std::uint32_t acc = bot_;
  for (std::size_t x = xs.first(); x != npos; x = xs.next(x))
    acc = join2(acc, static_cast<std::uint32_t>(x));
  return acc;
}

std::uint32_t FinLattice::meet_all(const Bitset& xs) const {
  std::uint32_t acc = top_;
  for (std::size_t x = xs.first(); x != npos; x = xs.next(x))
    acc = meet2(acc, static_cast<std::uint32_t>(x));
  return acc;
}

std::optional<Check> FinLattice::finalize() {
  auto scan = scan_order(*this);
  if (scan.violation) return scan.violation;
  join_ = std::move(scan.join);
  meet_ = std::move(scan.meet);
  top_ = scan.top;
  bot_ = scan.bot;
  finalized_ = true;
  return std::nullopt;
}

void FinLattice::set_tables(std::vector<std::uint32_t> join, std::vector<std::uint32_t> meet,
                            std::uint32_t top, std::uint32_t bottom) {
  join_ = std::move(join);
  meet_ = std::move(meet);
  top_ = top;
  bot_ = bottom;
  finalized_ = true;
}

CheckReport validate_lattice(const FinLattice& L) {
  if (L.size() == 0) throw MalformedInputError("lattice must have at least one element");
  CheckReport rep;
  rep.subject = "lattice";
  auto scan = scan_order(L);
  if (scan.violation)
    rep.checks.push_back(*scan.violation);
  else
    rep.add("lattice-axioms", true);
  return rep;
}

Check distributivity_check(const FinLattice& L) {
  const std::uint32_t n = static_cast<std::uint32_t>(L.size());
  for (std::uint32_t a = 0; a < n; ++a)
    for (std::uint32_t b = 0; b < n; ++b)
      for (std::uint32_t c = 0; c < n; ++c) {
        std::uint32_t lhs = L.meet2(a, L.join2(b, c));
        std::uint32_t rhs = L.join2(L.meet2(a, b), L.meet2(a, c));
        if (lhs != rhs)
          return {"distributive", false,
                  nlohmann::json{{"elements", {L.id(a), L.id(b), L.id(c)}},
                                 {"lhs", L.id(lhs)},
                                 {"rhs", L.id(rhs)}}};
      }
  return {"distributive", true, nullptr};
}

}  // namespace qcrib
