#include "qcrib/matr.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "qcrib/errors.hpp"

namespace qcrib {

QMatrix matrix_compose(const FinQuantaloid& Q, const QMatrix& N, const QMatrix& M) {
  if (!(M.dst == N.src)) throw ArgumentError("matrix composition needs a shared middle typed set");
  QMatrix out{M.src, N.dst, {}};
  out.entry.resize(M.src.size() * N.dst.size());
  for (std::size_t z = 0; z < N.dst.size(); ++z)
    for (std::size_t x = 0; x < M.src.size(); ++x) {
      const int tx = M.src.type[x], tz = N.dst.type[z];
      std::uint32_t acc = Q.at(tx, tz).bottom();
      for (std::size_t y = 0; y < M.dst.size(); ++y) {
        const int ty = M.dst.type[y];
        acc = Q.at(tx, tz).join2(acc, Q.then(tx, ty, tz, M.at(y, x), N.at(z, y)));
      }
      out.at(z, x) = acc;
    }
  return out;
}

QMatrix matrix_involution(const FinQuantaloid& Q, const Involution& inv, const QMatrix& M) {
  QMatrix out{M.dst, M.src, {}};
  out.entry.resize(M.src.size() * M.dst.size());
  for (std::size_t x = 0; x < M.src.size(); ++x)
    for (std::size_t y = 0; y < M.dst.size(); ++y)
      out.at(x, y) = inv.of(Q, M.src.type[x], M.dst.type[y], M.at(y, x));
  return out;
}

QMatrix identity_matrix(const FinQuantaloid& Q, const TypedSet& X) {
  QMatrix out{X, X, {}};
  out.entry.resize(X.size() * X.size());
  for (std::size_t y = 0; y < X.size(); ++y)
    for (std::size_t x = 0; x < X.size(); ++x)
      out.at(y, x) = y == x ? Q.identity[X.type[x]] : Q.at(X.type[x], X.type[y]).bottom();
  return out;
}

namespace {

TypedSet make_set(const char* prefix, const std::vector<int>& types) {
  TypedSet s;
  for (std::size_t i = 0; i < types.size(); ++i) {
    s.ids.push_back(prefix + std::to_string(i));
    s.type.push_back(types[i]);
  }
  return s;
}

nlohmann::json matrix_json(const FinQuantaloid& Q, const QMatrix& M) {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t y = 0; y < M.dst.size(); ++y) {
    nlohmann::json row = nlohmann::json::array();
    for (std::size_t x = 0; x < M.src.size(); ++x)
      row.push_back(Q.at(M.src.type[x], M.dst.type[y]).id(M.at(y, x)));
    rows.push_back(std::move(row));
  }
  nlohmann::json types_src = nlohmann::json::array(), types_dst = nlohmann::json::array();
  for (int t : M.src.type) types_src.push_back(Q.objects[t]);
  for (int t : M.dst.type) types_dst.push_back(Q.objects[t]);
  return {{"src_types", types_src}, {"dst_types", types_dst}, {"rows", rows}};
}

// Checks g∘f /\ h <= g∘(f /\ g^o∘h) with f = M, g = N, h = P.
bool modular_holds(const FinQuantaloid& Q, const Involution& inv, const QMatrix& M,
                   const QMatrix& N, const QMatrix& P) {
  QMatrix nm = matrix_compose(Q, N, M);
  QMatrix no = matrix_involution(Q, inv, N);
  QMatrix noh = matrix_compose(Q, no, P);
  QMatrix mid = M;
  for (std::size_t y = 0; y < M.dst.size(); ++y)
    for (std::size_t x = 0; x < M.src.size(); ++x)
      mid.at(y, x) = Q.at(M.src.type[x], M.dst.type[y]).meet2(M.at(y, x), noh.at(y, x));
  QMatrix rhs = matrix_compose(Q, N, mid);
  for (std::size_t z = 0; z < N.dst.size(); ++z)
    for (std::size_t x = 0; x < M.src.size(); ++x) {
      const auto& H = Q.at(M.src.type[x], N.dst.type[z]);
      if (!H.leq(H.meet2(nm.at(z, x), P.at(z, x)), rhs.at(z, x))) return false;
    }
  return true;
}

}  // namespace

CheckReport check_matr_modular(const FinQuantaloid& Q, const Involution& inv,
                               const MatrOptions& opts) {
  CheckReport rep;
  rep.subject = "matr-modular";
  const int n = static_cast<int>(Q.n_obj());
  std::size_t exhaustive_combos = 0, sampled_combos = 0, samples_drawn = 0;

  // All type vectors of a given length, in lexicographic order.
  auto type_vectors = [&](std::size_t len) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur(len, 0);
    while (true) {
      out.push_back(cur);
      std::size_t i = 0;
      while (i < len && ++cur[i] == n) cur[i++] = 0;
      if (i == len) break;
    }
    return out;
  };

  std::uint64_t combo_index = 0;
  for (std::size_t a = 1; a <= opts.size_bound; ++a)
    for (std::size_t b = 1; b <= opts.size_bound; ++b)
      for (std::size_t c = 1; c <= opts.size_bound; ++c)
        for (const auto& tx : type_vectors(a))
          for (const auto& ty : type_vectors(b))
            for (const auto& tz : type_vectors(c)) {
              ++combo_index;
              TypedSet X = make_set("x", tx), Y = make_set("y", ty), Z = make_set("z", tz);
              // Entry slots: M (b*a), then N (c*b), then P (c*a).
              std::vector<std::uint32_t> domain;
              for (std::size_t y = 0; y < b; ++y)
                for (std::size_t x = 0; x < a; ++x)
                  domain.push_back(static_cast<std::uint32_t>(Q.at(tx[x], ty[y]).size()));
              for (std::size_t z = 0; z < c; ++z)
                for (std::size_t y = 0; y < b; ++y)
                  domain.push_back(static_cast<std::uint32_t>(Q.at(ty[y], tz[z]).size()));
              for (std::size_t z = 0; z < c; ++z)
                for (std::size_t x = 0; x < a; ++x)
                  domain.push_back(static_cast<std::uint32_t>(Q.at(tx[x], tz[z]).size()));

              double log_total = 0;
              for (auto d : domain) log_total += std::log2(static_cast<double>(d));
              const bool exhaustive =
                  log_total <= 63 &&
                  std::pow(2.0, log_total) <= static_cast<double>(opts.exhaustive_threshold);

              QMatrix M{X, Y, std::vector<std::uint32_t>(b * a, 0)};
              QMatrix N{Y, Z, std::vector<std::uint32_t>(c * b, 0)};
              QMatrix P{X, Z, std::vector<std::uint32_t>(c * a, 0)};
              auto load = [&](const std::vector<std::uint32_t>& slots) {
                std::copy(slots.begin(), slots.begin() + b * a, M.entry.begin());
                std::copy(slots.begin() + b * a, slots.begin() + b * a + c * b, N.entry.begin());
                std::copy(slots.begin() + b * a + c * b, slots.end(), P.entry.begin());
              };
              auto witness = [&]() {
                rep.add("matr-modular", false,
                        {{"sizes", {a, b, c}},
                         {"M", matrix_json(Q, M)},
                         {"N", matrix_json(Q, N)},
                         {"P", matrix_json(Q, P)},
                         {"mode", exhaustive ? "exhaustive" : "randomized"}});
              };

              if (exhaustive) {
                ++exhaustive_combos;
                std::vector<std::uint32_t> slots(domain.size(), 0);
                while (true) {
                  load(slots);
                  if (!modular_holds(Q, inv, M, N, P)) {
                    witness();
                    return rep;
                  }
                  std::size_t i = 0;
                  while (i < slots.size() && ++slots[i] == domain[i]) slots[i++] = 0;
                  if (i == slots.size()) break;
                }
              } else {
                ++sampled_combos;
                std::mt19937_64 rng(opts.seed * 0x9e3779b97f4a7c15ull + combo_index);
                std::vector<std::uint32_t> slots(domain.size());
                for (std::size_t k = 0; k < opts.samples; ++k) {
                  for (std::size_t i = 0; i < slots.size(); ++i)
                    slots[i] = static_cast<std::uint32_t>(rng() % domain[i]);
                  ++samples_drawn;
                  load(slots);
                  if (!modular_holds(Q, inv, M, N, P)) {
                    witness();
                    return rep;
                  }
                }
              }
            }

  Check& ok = rep.add("matr-modular", true);
  ok.info = {{"exhaustive_combinations", exhaustive_combos},
             {"sampled_combinations", sampled_combos},
             {"samples_drawn", samples_drawn},
             {"seed", opts.seed},
             {"size_bound", opts.size_bound}};
  return rep;
}

}  // namespace qcrib
