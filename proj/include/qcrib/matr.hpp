#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qcrib/quantaloid.hpp"

namespace qcrib {

/// A finite set whose elements carry objects of Q as types.
struct TypedSet {
  std::vector<std::string> ids;
  std::vector<int> type;  // object index per element

  std::size_t size() const { return ids.size(); }
  friend bool operator==(const TypedSet& a, const TypedSet& b) {
    return a.ids == b.ids && a.type == b.type;
  }
};

/// entry[y * |src| + x] lives in hom(type(src x), type(dst y)).
struct QMatrix {
  TypedSet src, dst;
  std::vector<std::uint32_t> entry;

  std::uint32_t at(std::size_t y, std::size_t x) const { return entry[y * src.size() + x]; }
  std::uint32_t& at(std::size_t y, std::size_t x) { return entry[y * src.size() + x]; }
};

/// (N∘M)(z,x) = \/_y N(z,y)∘M(y,x). The middle typed sets must agree.
QMatrix matrix_compose(const FinQuantaloid& Q, const QMatrix& N, const QMatrix& M);

/// Transpose with entrywise involution.
QMatrix matrix_involution(const FinQuantaloid& Q, const Involution& inv, const QMatrix& M);

QMatrix identity_matrix(const FinQuantaloid& Q, const TypedSet& X);

struct MatrOptions {
  std::size_t size_bound = 2;
  // A (sizes, types) combination with at most this many entry assignments
  // is enumerated exhaustively, otherwise sampled.
  std::size_t exhaustive_threshold = std::size_t{1} << 24;
  std::size_t samples = 4096;
  std::uint64_t seed = 0;
};

/// The modular law g∘f /\ h <= g∘(f /\ g^o∘h) over matrix triples with
/// typed sets of size <= size_bound. Combinations are scanned in
/// canonical order; each is exhausted when small enough and sampled with
/// a deterministic per-combination generator otherwise. The report
/// records the mode, the seed and the sample counts.
CheckReport check_matr_modular(const FinQuantaloid& Q, const Involution& inv,
                               const MatrOptions& opts = {});

}  // namespace qcrib
