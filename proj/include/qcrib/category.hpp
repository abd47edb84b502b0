#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qcrib/bitset.hpp"
#include "qcrib/report.hpp"

namespace qcrib {

/// A finite category as a composition table. Objects and morphisms are
/// kept sorted by id; every index below refers to that order.
class FinCategory {
 public:
  struct Mor {
    std::string id;
    int dom = -1, cod = -1;
  };

  std::vector<std::string> objects;
  std::vector<Mor> mor;
  std::vector<int> identity;  // per object, index into mor
  // comp[g * n_mor + f] = g∘f, or -1 when no entry. Entries may exist for
  // non-composable pairs when the input declared them; validation flags those.
  std::vector<int> comp;

  std::size_t n_obj() const { return objects.size(); }
  std::size_t n_mor() const { return mor.size(); }

  int object_index(std::string_view id) const;    // throws UnknownElementError
  int morphism_index(std::string_view id) const;  // throws UnknownElementError

  int compose(int g, int f) const { return comp[static_cast<std::size_t>(g) * mor.size() + f]; }
  bool composable(int g, int f) const { return mor[f].cod == mor[g].dom; }

  struct MorSpec {
    std::string id, dom, cod;
  };

  /// Strict builder: sorts and cross-checks ids, fills identity-forced
  /// composition entries, throws MalformedInputError on duplicates,
  /// dangling references or conflicting entries. Composition entries read
  /// [g, f, gf] with gf = g∘f.
  static FinCategory make(std::vector<std::string> objects, const std::vector<MorSpec>& morphisms,
                          const std::vector<std::pair<std::string, std::string>>& identities,
                          const std::vector<std::array<std::string, 3>>& composition);
};

/// A set of morphisms with common codomain, closed under precomposition.
struct Sieve {
  int at = -1;
  Bitset members;  // over morphism indices

  friend bool operator==(const Sieve& a, const Sieve& b) {
    return a.at == b.at && a.members == b.members;
  }
};

/// covers[x] lists the covering sieves at object x, in canonical
/// (set-lex) order.
struct GrothendieckTopology {
  std::vector<std::vector<Sieve>> covers;

  bool contains(int x, const Bitset& sieve_members) const {
    for (const auto& s : covers[x])
      if (s.members == sieve_members) return true;
    return false;
  }

  friend bool operator==(const GrothendieckTopology& a, const GrothendieckTopology& b) {
    return a.covers == b.covers;
  }
};

/// Identity and unit laws, typed composition totality, associativity.
CheckReport validate_category(const FinCategory& C);

/// The maximal sieve at x: every morphism with codomain x.
Sieve maximal_sieve(const FinCategory& C, int x);

/// True iff members all have codomain `at` and are precomposition-closed.
bool is_sieve(const FinCategory& C, const Sieve& s, std::string* why = nullptr);

/// f*(S) = {g | f∘g ∈ S} at dom(f). S must live at cod(f).
Sieve pullback_sieve(const FinCategory& C, int f, const Sieve& S);

/// All sieves at x, duplicate-free, in canonical set-lex order.
std::vector<Sieve> sieves_on(const FinCategory& C, int x);

/// The three covering axioms (maximality, stability, transitivity).
CheckReport validate_topology(const FinCategory& C, const GrothendieckTopology& J);

/// Exhaustive brute-force oracle. Throws ResourceBoundError when the
/// number of candidate assignments exceeds `bound`.
std::vector<GrothendieckTopology> enumerate_topologies(const FinCategory& C,
                                                       std::size_t bound = 1u << 14);

/// The smallest topology: only maximal sieves cover.
GrothendieckTopology smallest_topology(const FinCategory& C);

/// Renders a sieve as its sorted member-id list.
nlohmann::json sieve_to_json(const FinCategory& C, const Sieve& s);

}  // namespace qcrib
