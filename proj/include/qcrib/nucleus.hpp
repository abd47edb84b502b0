#pragma once

#include <cstdint>
#include <vector>

#include "qcrib/crible.hpp"
#include "qcrib/quantaloid.hpp"

namespace qcrib {

/// A hom-wise closure operator that is a lax endofunctor; act[x*n+y]
/// maps hom(x,y) elements to hom(x,y) elements.
struct Nucleus {
  std::vector<std::vector<std::uint32_t>> act;

  std::uint32_t of(const FinQuantaloid& Q, int x, int y, std::uint32_t a) const {
    return act[static_cast<std::size_t>(x) * Q.n_obj() + y][a];
  }

  static Nucleus identity(const FinQuantaloid& Q);
  static Nucleus all_to_top(const FinQuantaloid& Q);

  friend bool operator==(const Nucleus& a, const Nucleus& b) { return a.act == b.act; }
};

/// Closure and lax-functor laws; with `require_llex` also preservation of
/// binary meets and top per hom.
CheckReport validate_nucleus(const FinQuantaloid& Q, const Nucleus& j, bool require_llex);

/// j(R) = {(f,g) | exists S in J(dom f) with (f∘s, g∘s) in R for all s}.
Nucleus topology_to_nucleus(const CribleModel& M, const GrothendieckTopology& J);

/// J(C) = {sieves S with id_C <= j({(s,s) | s in S})}. Requires a locally
/// left exact nucleus (ArgumentError otherwise).
GrothendieckTopology nucleus_to_topology(const CribleModel& M, const Nucleus& j);

/// The quotient quantaloid of j-closed arrows, with the index maps
/// between Q and the quotient.
struct QuotientResult {
  FinQuantaloid Q;
  // closed_of[x*n+y][a] = quotient index of a, or npos32 when j(a) != a.
  std::vector<std::vector<std::uint32_t>> closed_of;
  std::vector<std::vector<std::uint32_t>> embed;  // quotient index -> element of the base
};

QuotientResult quotient(const FinQuantaloid& Q, const Nucleus& j);

/// R(C,J): the quotient of R(C) by the nucleus of J, carrying the
/// involution inherited from reversal.
struct Rcj {
  CribleModel rc;
  Nucleus j;
  QuotientResult quo;
  Involution involution;
};

Rcj build_rcj(const FinCategory& C, const GrothendieckTopology& J, std::size_t bound = 1u << 14);
Rcj build_rcj(CribleModel rc, const GrothendieckTopology& J);

/// Restricts an involution of Q to the j-closed arrows. Requires that j
/// commutes with the involution.
Involution restrict_involution(const FinQuantaloid& Q, const Nucleus& j, const QuotientResult& quo,
                               const Involution& inv);

}  // namespace qcrib
