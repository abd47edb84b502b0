#pragma once

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "qcrib/category.hpp"
#include "qcrib/quantaloid.hpp"

namespace qcrib {

/// A span (f,g): x -|> y has cod(g) = x, cod(f) = y and a common domain
/// (the apex). Both components are morphism indices of the base category.
struct Span {
  int f = -1, g = -1;

  friend bool operator==(const Span& a, const Span& b) { return a.f == b.f && a.g == b.g; }
  friend bool operator<(const Span& a, const Span& b) {
    return a.f != b.f ? a.f < b.f : a.g < b.g;
  }
};

/// All spans x -|> y, in canonical (f,g) order, with their generated
/// cribles precomputed.
struct SpanUniverse {
  int src = -1, dst = -1;
  std::vector<Span> spans;
  std::vector<Bitset> generated;  // generated[s] = smallest crible containing span s
  std::map<Span, std::uint32_t> index;

  std::uint32_t index_of(Span s) const;  // throws ArgumentError if absent
};

/// A precomposition-closed set of spans, as a bitset over the universe.
struct Crible {
  int src = -1, dst = -1;
  Bitset members;
};

/// The quantaloid R(C): hom(x,y) = all cribles x -|> y ordered by
/// inclusion, composition by span matching, involution by reversal.
/// Lattice element k of Q.hom(x,y) is homs[x*n+y].cribles[k].
struct CribleModel {
  FinCategory cat;
  struct Hom {
    SpanUniverse universe;
    std::vector<Bitset> cribles;  // canonical set-lex order
    std::map<Bitset, std::uint32_t> index;
  };
  std::vector<Hom> homs;  // x*n + y
  FinQuantaloid Q;
  Involution reversal;

  const Hom& hom(int x, int y) const { return homs[static_cast<std::size_t>(x) * cat.n_obj() + y]; }
  std::uint32_t element_of(const Crible& c) const;  // index in Q.hom(src,dst)
  Crible crible_of(int x, int y, std::uint32_t elt) const;
};

/// Builds R(C). Throws ResourceBoundError when a hom would need more than
/// `bound` spans or cribles.
CribleModel build_rc(const FinCategory& C, std::size_t bound = 1u << 14);

/// {(f,g) | exists t with (f,t) in S and (t,g) in R}; the composition
/// formula itself, independent of the compiled tables.
Crible crible_compose(const CribleModel& M, const Crible& S, const Crible& R);

/// {(f,f) | cod(f) = x}.
Crible crible_identity(const CribleModel& M, int x);

/// Smallest crible containing the span (f,g).
Crible generated_crible(const CribleModel& M, int f, int g);

/// Reverses every span.
Crible crible_involution(const CribleModel& M, const Crible& R);

/// Sorted [f,g] id pairs.
nlohmann::json crible_to_json(const CribleModel& M, const Crible& R);

}  // namespace qcrib
