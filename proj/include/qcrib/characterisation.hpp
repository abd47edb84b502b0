#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "qcrib/nucleus.hpp"
#include "qcrib/quantaloid.hpp"

namespace qcrib {

/// The comparison machinery between Q and the cribles of its left
/// adjoints: F(R) = \/{f g* | (f,g) in R} and its right adjoint F*.
struct CharContext {
  MapsResult maps;
  CribleModel rmap;  // R(Map(Q))
  // f_tab[x*n+y][crible] = Q element; fstar_tab[x*n+y][element] = crible.
  std::vector<std::vector<std::uint32_t>> f_tab;
  std::vector<std::vector<std::uint32_t>> fstar_tab;

  std::uint32_t F(const FinQuantaloid& Q, int x, int y, std::uint32_t crible) const {
    return f_tab[static_cast<std::size_t>(x) * Q.n_obj() + y][crible];
  }
  std::uint32_t F_star(const FinQuantaloid& Q, int x, int y, std::uint32_t elt) const {
    return fstar_tab[static_cast<std::size_t>(x) * Q.n_obj() + y][elt];
  }

  /// j = F* ∘ F on R(Map(Q)).
  Nucleus induced_nucleus() const;
};

CharContext build_char_context(const FinQuantaloid& Q, std::size_t bound = 1u << 14);

/// J(X) = {sieves S on Map(Q) at X with \/_{s in S} s s* = 1_X}.
GrothendieckTopology derive_topology(const FinQuantaloid& Q, const MapsResult& maps);

/// Certificate that q |-> F*(q) and R |-> F(R) are mutually inverse
/// Sup-functor isomorphisms between Q and R(Map(Q), J), hom by hom.
struct IsoWitness {
  // per hom x*n+y: pairs (quotient element of R(Map(Q),J), element of Q).
  std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> pairs;
  nlohmann::json to_json(const FinQuantaloid& Q, const Rcj& rcj) const;
};

struct RoundtripResult {
  CheckReport report;
  // Set when all four axioms hold:
  std::optional<CharContext> ctx;
  std::optional<GrothendieckTopology> topology;
  std::optional<Rcj> rcj;
  std::optional<IsoWitness> iso;
};

/// Checks the four axioms; on success derives J, builds R(Map(Q), J) and
/// certifies the isomorphism. Any breakage past the axioms raises
/// InternalConsistencyError (the theorem guarantees it cannot happen).
RoundtripResult roundtrip(const FinQuantaloid& Q, std::size_t bound = 1u << 14);

/// q^o = \/{g f* | (f,g) span of left adjoints with f g* <= q}. Requires
/// the four axioms (ArgumentError otherwise); the result always passes
/// validate_involution.
Involution derived_involution(const FinQuantaloid& Q);

/// Sheaf condition for every representable: each natural family over a
/// covering sieve has exactly one amalgamation.
CheckReport check_subcanonical(const FinCategory& C, const GrothendieckTopology& J,
                               std::size_t bound = 1u << 14);

/// Every e <= 1_X splits as e = g∘f with f∘g an identity.
CheckReport check_coreflexives_split(const FinQuantaloid& Q);

/// J is subcanonical and contains every subcanonical topology that the
/// brute-force enumeration finds.
CheckReport check_canonical(const FinCategory& C, const GrothendieckTopology& J,
                            std::size_t bound = 1u << 14);

}  // namespace qcrib
