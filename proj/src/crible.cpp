#include "qcrib/crible.hpp"

#include <algorithm>
#include <string>

#include "qcrib/errors.hpp"

namespace qcrib {

std::uint32_t SpanUniverse::index_of(Span s) const {
  auto it = index.find(s);
  if (it == index.end()) throw ArgumentError("span does not live in this hom");
  return it->second;
}

std::uint32_t CribleModel::element_of(const Crible& c) const {
  const auto& h = hom(c.src, c.dst);
  auto it = h.index.find(c.members);
  if (it == h.index.end()) throw InternalConsistencyError("crible not interned");
  return it->second;
}

Crible CribleModel::crible_of(int x, int y, std::uint32_t elt) const {
  return {x, y, hom(x, y).cribles[elt]};
}

namespace {

std::string padded_id(std::size_t k, std::size_t count) {
  std::size_t width = 1;
  for (std::size_t v = count > 0 ? count - 1 : 0; v >= 10; v /= 10) ++width;
  std::string digits = std::to_string(k);
  return "c" + std::string(width - digits.size(), '0') + digits;
}

}  // namespace

CribleModel build_rc(const FinCategory& C, std::size_t bound) {
  const int n = static_cast<int>(C.n_obj());
  CribleModel M;
  M.cat = C;
  M.homs.resize(static_cast<std::size_t>(n) * n);

  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      auto& H = M.homs[static_cast<std::size_t>(x) * n + y];
      auto& U = H.universe;
      U.src = x;
      U.dst = y;
      for (int f = 0; f < static_cast<int>(C.n_mor()); ++f) {
        if (C.mor[f].cod != y) continue;
        for (int g = 0; g < static_cast<int>(C.n_mor()); ++g)
          if (C.mor[g].cod == x && C.mor[g].dom == C.mor[f].dom) U.spans.push_back({f, g});
      }
      if (U.spans.size() > bound)
        throw ResourceBoundError("hom " + C.objects[x] + "|" + C.objects[y] + " needs " +
                                     std::to_string(U.spans.size()) +
                                     " spans, more than the bound of " + std::to_string(bound),
                                 bound);
      for (std::uint32_t s = 0; s < U.spans.size(); ++s) U.index[U.spans[s]] = s;
      U.generated.assign(U.spans.size(), Bitset(U.spans.size()));
      for (std::uint32_t s = 0; s < U.spans.size(); ++s) {
        const Span sp = U.spans[s];
        U.generated[s].set(s);
        for (int h = 0; h < static_cast<int>(C.n_mor()); ++h)
          if (C.mor[h].cod == C.mor[sp.f].dom)
            U.generated[s].set(U.index_of({C.compose(sp.f, h), C.compose(sp.g, h)}));
      }

      // All cribles: close {none} under union with generated cribles.
      H.cribles.push_back(Bitset(U.spans.size()));
      H.index[H.cribles[0]] = 0;
      for (std::size_t i = 0; i < H.cribles.size(); ++i)
        for (std::uint32_t s = 0; s < U.spans.size(); ++s) {
          if (H.cribles[i].test(s)) continue;
          Bitset u = H.cribles[i] | U.generated[s];
          if (H.index.emplace(u, 0).second) {
            H.cribles.push_back(std::move(u));
            if (H.cribles.size() > bound)
              throw ResourceBoundError("hom " + C.objects[x] + "|" + C.objects[y] +
                                           " has more cribles than the bound of " +
                                           std::to_string(bound),
                                       bound);
          }
        }
      std::sort(H.cribles.begin(), H.cribles.end());
      for (std::uint32_t k = 0; k < H.cribles.size(); ++k) H.index[H.cribles[k]] = k;
    }

  // Compile the quantaloid: inclusion lattices and composition tables.
  auto& Q = M.Q;
  Q.objects = C.objects;
  Q.hom.resize(static_cast<std::size_t>(n) * n);
  Q.identity.resize(n);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      auto& H = M.homs[static_cast<std::size_t>(x) * n + y];
      const std::size_t k = H.cribles.size();
      std::vector<std::string> ids(k);
      for (std::size_t i = 0; i < k; ++i) ids[i] = padded_id(i, k);
      std::vector<Bitset> up(k, Bitset(k));
      std::vector<std::uint32_t> join(k * k), meet(k * k);
      for (std::uint32_t a = 0; a < k; ++a)
        for (std::uint32_t b = 0; b < k; ++b) {
          if (H.cribles[a].is_subset_of(H.cribles[b])) up[a].set(b);
          join[a * k + b] = H.index.at(H.cribles[a] | H.cribles[b]);
          meet[a * k + b] = H.index.at(H.cribles[a] & H.cribles[b]);
        }
      std::uint32_t top = H.index.at(Bitset::full(H.universe.spans.size()));
      std::uint32_t bot = H.index.at(Bitset(H.universe.spans.size()));
      FinLattice L = FinLattice::from_order(std::move(ids), std::move(up));
      L.set_tables(std::move(join), std::move(meet), top, bot);
      Q.at(x, y) = std::move(L);
    }

  for (int x = 0; x < n; ++x) {
    Crible idc = crible_identity(M, x);
    Q.identity[x] = M.hom(x, x).index.at(idc.members);
  }

  Q.init_tables();
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z) {
        const auto& A = M.hom(x, y);
        const auto& B = M.hom(y, z);
        const auto& R = M.hom(x, z);
        // matches[w] lists (u, r): span w of A and span u of B share the
        // middle morphism and compose to span r of R.
        std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> matches(
            A.universe.spans.size());
        for (std::uint32_t u = 0; u < B.universe.spans.size(); ++u) {
          const Span su = B.universe.spans[u];
          for (std::uint32_t w = 0; w < A.universe.spans.size(); ++w) {
            const Span sw = A.universe.spans[w];
            if (sw.f != su.g) continue;
            matches[w].push_back({u, R.universe.index_of({su.f, sw.g})});
          }
        }
        auto& t = Q.table(x, y, z);
        t.resize(A.cribles.size() * B.cribles.size());
        for (std::uint32_t a = 0; a < A.cribles.size(); ++a)
          for (std::uint32_t b = 0; b < B.cribles.size(); ++b) {
            Bitset out(R.universe.spans.size());
            for (std::size_t w = A.cribles[a].first(); w != npos; w = A.cribles[a].next(w))
              for (const auto& [u, r] : matches[w])
                if (B.cribles[b].test(u)) out.set(r);
            t[static_cast<std::size_t>(a) * B.cribles.size() + b] = R.index.at(out);
          }
      }

  M.reversal.op.resize(static_cast<std::size_t>(n) * n);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      const auto& A = M.hom(x, y);
      const auto& B = M.hom(y, x);
      auto& t = M.reversal.op[static_cast<std::size_t>(x) * n + y];
      t.resize(A.cribles.size());
      for (std::uint32_t a = 0; a < A.cribles.size(); ++a) {
        Bitset rev(B.universe.spans.size());
        for (std::size_t s = A.cribles[a].first(); s != npos; s = A.cribles[a].next(s)) {
          const Span sp = A.universe.spans[s];
          rev.set(B.universe.index_of({sp.g, sp.f}));
        }
        t[a] = B.index.at(rev);
      }
    }
  return M;
}

Crible crible_compose(const CribleModel& M, const Crible& S, const Crible& R) {
  if (R.dst != S.src)
    throw ArgumentError("crible composition mismatch: target of the first factor is '" +
                        M.cat.objects[R.dst] + "', source of the second is '" +
                        M.cat.objects[S.src] + "'");
  const auto& US = M.hom(S.src, S.dst).universe;
  const auto& UR = M.hom(R.src, R.dst).universe;
  const auto& UO = M.hom(R.src, S.dst).universe;
  Crible out{R.src, S.dst, Bitset(UO.spans.size())};
  for (std::size_t i = S.members.first(); i != npos; i = S.members.next(i)) {
    const Span s = US.spans[i];
    for (std::size_t j = R.members.first(); j != npos; j = R.members.next(j)) {
      const Span r = UR.spans[j];
      if (r.f == s.g) out.members.set(UO.index_of({s.f, r.g}));
    }
  }
  return out;
}

Crible crible_identity(const CribleModel& M, int x) {
  const auto& U = M.hom(x, x).universe;
  Crible out{x, x, Bitset(U.spans.size())};
  for (int f = 0; f < static_cast<int>(M.cat.n_mor()); ++f)
    if (M.cat.mor[f].cod == x) out.members.set(U.index_of({f, f}));
  return out;
}

Crible generated_crible(const CribleModel& M, int f, int g) {
  if (M.cat.mor[f].dom != M.cat.mor[g].dom)
    throw ArgumentError("span components must share their domain");
  const int x = M.cat.mor[g].cod, y = M.cat.mor[f].cod;
  const auto& U = M.hom(x, y).universe;
  return {x, y, U.generated[U.index_of({f, g})]};
}

Crible crible_involution(const CribleModel& M, const Crible& R) {
  const auto& U = M.hom(R.src, R.dst).universe;
  const auto& V = M.hom(R.dst, R.src).universe;
  Crible out{R.dst, R.src, Bitset(V.spans.size())};
  for (std::size_t s = R.members.first(); s != npos; s = R.members.next(s))
    out.members.set(V.index_of({U.spans[s].g, U.spans[s].f}));
  return out;
}

nlohmann::json crible_to_json(const CribleModel& M, const Crible& R) {
  const auto& U = M.hom(R.src, R.dst).universe;
  nlohmann::json pairs = nlohmann::json::array();
  for (std::size_t s = R.members.first(); s != npos; s = R.members.next(s))
    pairs.push_back({M.cat.mor[U.spans[s].f].id, M.cat.mor[U.spans[s].g].id});
  return pairs;
}

}  // namespace qcrib
