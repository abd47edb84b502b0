#include "qcrib/nucleus.hpp"

#include <algorithm>

#include "qcrib/errors.hpp"

namespace qcrib {

namespace {

nlohmann::json elt_json(const FinQuantaloid& Q, int x, int y, std::uint32_t a) {
  return nlohmann::json{{"src", Q.objects[x]}, {"dst", Q.objects[y]}, {"element", Q.at(x, y).id(a)}};
}

}  // namespace

Nucleus Nucleus::identity(const FinQuantaloid& Q) {
  const std::size_t n = Q.n_obj();
  Nucleus j;
  j.act.resize(n * n);
  for (std::size_t i = 0; i < n * n; ++i) {
    j.act[i].resize(Q.hom[i].size());
    for (std::uint32_t a = 0; a < j.act[i].size(); ++a) j.act[i][a] = a;
  }
  return j;
}

Nucleus Nucleus::all_to_top(const FinQuantaloid& Q) {
  const std::size_t n = Q.n_obj();
  Nucleus j;
  j.act.resize(n * n);
  for (std::size_t i = 0; i < n * n; ++i)
    j.act[i].assign(Q.hom[i].size(), Q.hom[i].top());
  return j;
}

CheckReport validate_nucleus(const FinQuantaloid& Q, const Nucleus& j, bool require_llex) {
  CheckReport rep;
  rep.subject = "nucleus";
  const int n = static_cast<int>(Q.n_obj());
  if (j.act.size() != static_cast<std::size_t>(n) * n)
    throw MalformedInputError("nucleus must act on every hom");
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      const auto& t = j.act[static_cast<std::size_t>(x) * n + y];
      if (t.size() != Q.at(x, y).size())
        throw MalformedInputError("nucleus action has wrong size on " + Q.objects[x] + "|" +
                                  Q.objects[y]);
      for (auto v : t)
        if (v >= Q.at(x, y).size()) throw MalformedInputError("nucleus action out of range");
    }

  auto fail = [&](nlohmann::json w) {
    rep.add("nucleus-axioms", false, std::move(w));
    return rep;
  };

  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      const auto& H = Q.at(x, y);
      for (std::uint32_t a = 0; a < H.size(); ++a) {
        const std::uint32_t ja = j.of(Q, x, y, a);
        if (!H.leq(a, ja))
          return fail({{"law", "extensive"}, {"arrow", elt_json(Q, x, y, a)}});
        if (j.of(Q, x, y, ja) != ja)
          return fail({{"law", "idempotent"}, {"arrow", elt_json(Q, x, y, a)}});
        for (std::uint32_t b = 0; b < H.size(); ++b)
          if (H.leq(a, b) && !H.leq(ja, j.of(Q, x, y, b)))
            return fail({{"law", "monotone"},
                         {"arrows", {elt_json(Q, x, y, a), elt_json(Q, x, y, b)}}});
      }
    }
  for (int x = 0; x < n; ++x)
    if (!Q.at(x, x).leq(Q.identity[x], j.of(Q, x, x, Q.identity[x])))
      return fail({{"law", "lax-unit"}, {"object", Q.objects[x]}});
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z)
        for (std::uint32_t r = 0; r < Q.at(x, y).size(); ++r)
          for (std::uint32_t s = 0; s < Q.at(y, z).size(); ++s) {
            const std::uint32_t lhs = Q.then(x, y, z, j.of(Q, x, y, r), j.of(Q, y, z, s));
            const std::uint32_t rhs = j.of(Q, x, z, Q.then(x, y, z, r, s));
            if (!Q.at(x, z).leq(lhs, rhs))
              return fail({{"law", "lax-composition"},
                           {"arrows", {elt_json(Q, x, y, r), elt_json(Q, y, z, s)}}});
          }
  if (require_llex)
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y) {
        const auto& H = Q.at(x, y);
        if (j.of(Q, x, y, H.top()) != H.top())
          return fail({{"law", "preserves-top"}, {"src", Q.objects[x]}, {"dst", Q.objects[y]}});
        for (std::uint32_t a = 0; a < H.size(); ++a)
          for (std::uint32_t b = a; b < H.size(); ++b)
            if (j.of(Q, x, y, H.meet2(a, b)) !=
                H.meet2(j.of(Q, x, y, a), j.of(Q, x, y, b)))
              return fail({{"law", "preserves-binary-meets"},
                           {"arrows", {elt_json(Q, x, y, a), elt_json(Q, x, y, b)}}});
      }
  rep.add("nucleus-axioms", true);
  return rep;
}

Nucleus topology_to_nucleus(const CribleModel& M, const GrothendieckTopology& J) {
  const int n = static_cast<int>(M.cat.n_obj());
  Nucleus j;
  j.act.resize(static_cast<std::size_t>(n) * n);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      const auto& H = M.hom(x, y);
      const auto& U = H.universe;
      auto& t = j.act[static_cast<std::size_t>(x) * n + y];
      t.resize(H.cribles.size());
      for (std::uint32_t c = 0; c < H.cribles.size(); ++c) {
        const Bitset& R = H.cribles[c];
        Bitset out(U.spans.size());
        for (std::uint32_t s = 0; s < U.spans.size(); ++s) {
          const Span sp = U.spans[s];
          const int apex = M.cat.mor[sp.f].dom;
          bool closed_in = false;
          for (const auto& S : J.covers[apex]) {
            bool all = true;
            for (std::size_t m = S.members.first(); m != npos && all; m = S.members.next(m)) {
              const Span shifted{M.cat.compose(sp.f, static_cast<int>(m)),
                                 M.cat.compose(sp.g, static_cast<int>(m))};
              all = R.test(U.index_of(shifted));
            }
            if (all) {
              closed_in = true;
              break;
            }
          }
          if (closed_in) out.set(s);
        }
        auto it = H.index.find(out);
        if (it == H.index.end())
          throw InternalConsistencyError("topology closure produced a non-crible");
        t[c] = it->second;
      }
    }
  return j;
}

GrothendieckTopology nucleus_to_topology(const CribleModel& M, const Nucleus& j) {
  if (!validate_nucleus(M.Q, j, true).overall())
    throw ArgumentError("nucleus_to_topology needs a locally left exact nucleus");
  const int n = static_cast<int>(M.cat.n_obj());
  GrothendieckTopology J;
  J.covers.resize(n);
  for (int x = 0; x < n; ++x) {
    const auto& H = M.hom(x, x);
    const auto& U = H.universe;
    for (const Sieve& S : sieves_on(M.cat, x)) {
      Bitset diag(U.spans.size());
      for (std::size_t s = S.members.first(); s != npos; s = S.members.next(s))
        diag.set(U.index_of({static_cast<int>(s), static_cast<int>(s)}));
      const std::uint32_t closed = j.of(M.Q, x, x, H.index.at(diag));
      if (M.Q.at(x, x).leq(M.Q.identity[x], closed)) J.covers[x].push_back(S);
    }
  }
  return J;
}

QuotientResult quotient(const FinQuantaloid& Q, const Nucleus& j) {
  const int n = static_cast<int>(Q.n_obj());
  QuotientResult out;
  out.Q.objects = Q.objects;
  out.Q.hom.resize(static_cast<std::size_t>(n) * n);
  out.Q.identity.resize(n);
  out.closed_of.resize(static_cast<std::size_t>(n) * n);
  out.embed.resize(static_cast<std::size_t>(n) * n);

  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      const auto& H = Q.at(x, y);
      auto& closed_of = out.closed_of[static_cast<std::size_t>(x) * n + y];
      auto& embed = out.embed[static_cast<std::size_t>(x) * n + y];
      closed_of.assign(H.size(), npos32);
      std::vector<std::string> ids;
      for (std::uint32_t a = 0; a < H.size(); ++a)
        if (j.of(Q, x, y, a) == a) {
          closed_of[a] = static_cast<std::uint32_t>(embed.size());
          embed.push_back(a);
          ids.push_back(H.id(a));
        }
      std::vector<Bitset> up(embed.size(), Bitset(embed.size()));
      for (std::size_t a = 0; a < embed.size(); ++a)
        for (std::size_t b = 0; b < embed.size(); ++b)
          if (H.leq(embed[a], embed[b])) up[a].set(b);
      FinLattice L = FinLattice::from_order(std::move(ids), std::move(up));
      if (auto bad = L.finalize())
        throw InternalConsistencyError("quotient hom is not a complete lattice: " +
                                       bad->witness.dump());
      out.Q.at(x, y) = std::move(L);
    }

  for (int x = 0; x < n; ++x) {
    const std::uint32_t jid = j.of(Q, x, x, Q.identity[x]);
    out.Q.identity[x] = out.closed_of[static_cast<std::size_t>(x) * n + x][jid];
  }

  out.Q.init_tables();
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z) {
        const auto& ea = out.embed[static_cast<std::size_t>(x) * n + y];
        const auto& eb = out.embed[static_cast<std::size_t>(y) * n + z];
        const auto& cc = out.closed_of[static_cast<std::size_t>(x) * n + z];
        auto& t = out.Q.table(x, y, z);
        t.resize(ea.size() * eb.size());
        for (std::size_t a = 0; a < ea.size(); ++a)
          for (std::size_t b = 0; b < eb.size(); ++b)
            t[a * eb.size() + b] = cc[j.of(Q, x, z, Q.then(x, y, z, ea[a], eb[b]))];
      }

  CheckReport check = validate_quantaloid(out.Q);
  if (!check.overall())
    throw InternalConsistencyError("quotient is not a quantaloid: " +
                                   check.checks.front().witness.dump());
  return out;
}

Involution restrict_involution(const FinQuantaloid& Q, const Nucleus& j, const QuotientResult& quo,
                               const Involution& inv) {
  const int n = static_cast<int>(Q.n_obj());
  Involution out;
  out.op.resize(static_cast<std::size_t>(n) * n);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      const auto& embed = quo.embed[static_cast<std::size_t>(x) * n + y];
      const auto& closed_of = quo.closed_of[static_cast<std::size_t>(y) * n + x];
      auto& t = out.op[static_cast<std::size_t>(x) * n + y];
      t.resize(embed.size());
      for (std::size_t a = 0; a < embed.size(); ++a) {
        const std::uint32_t rev = inv.of(Q, x, y, embed[a]);
        if (j.of(Q, y, x, rev) != rev)
          throw InternalConsistencyError("involution does not commute with the nucleus");
        t[a] = closed_of[rev];
      }
    }
  return out;
}

Rcj build_rcj(CribleModel rc, const GrothendieckTopology& J) {
  Rcj out{std::move(rc), {}, {}, {}};
  out.j = topology_to_nucleus(out.rc, J);
  out.quo = quotient(out.rc.Q, out.j);
  out.involution = restrict_involution(out.rc.Q, out.j, out.quo, out.rc.reversal);
  return out;
}

Rcj build_rcj(const FinCategory& C, const GrothendieckTopology& J, std::size_t bound) {
  return build_rcj(build_rc(C, bound), J);
}

}  // namespace qcrib
