#include "qcrib/characterisation.hpp"

#include <algorithm>
#include <functional>

#include "qcrib/errors.hpp"

namespace qcrib {

Nucleus CharContext::induced_nucleus() const {
  Nucleus j;
  j.act.resize(f_tab.size());
  for (std::size_t i = 0; i < f_tab.size(); ++i) {
    j.act[i].resize(f_tab[i].size());
    for (std::uint32_t c = 0; c < f_tab[i].size(); ++c) j.act[i][c] = fstar_tab[i][f_tab[i][c]];
  }
  return j;
}

CharContext build_char_context(const FinQuantaloid& Q, std::size_t bound) {
  CharContext ctx;
  ctx.maps = maps_category(Q);
  ctx.rmap = build_rc(ctx.maps.cat, bound);
  const int n = static_cast<int>(Q.n_obj());
  ctx.f_tab.resize(static_cast<std::size_t>(n) * n);
  ctx.fstar_tab.resize(static_cast<std::size_t>(n) * n);

  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      const auto& H = ctx.rmap.hom(x, y);
      const auto& U = H.universe;
      // fg*[span] in Q(x,y), computed once per span.
      std::vector<std::uint32_t> span_val(U.spans.size());
      for (std::uint32_t s = 0; s < U.spans.size(); ++s) {
        const MapMor& f = ctx.maps.maps[U.spans[s].f];
        const MapMor& g = ctx.maps.maps[U.spans[s].g];
        span_val[s] = Q.then(x, f.src, y, g.star, f.elt);
      }
      auto& ft = ctx.f_tab[static_cast<std::size_t>(x) * n + y];
      ft.resize(H.cribles.size());
      for (std::uint32_t c = 0; c < H.cribles.size(); ++c) {
        std::uint32_t acc = Q.at(x, y).bottom();
        for (std::size_t s = H.cribles[c].first(); s != npos; s = H.cribles[c].next(s))
          acc = Q.at(x, y).join2(acc, span_val[s]);
        ft[c] = acc;
      }
      auto& st = ctx.fstar_tab[static_cast<std::size_t>(x) * n + y];
      st.resize(Q.at(x, y).size());
      for (std::uint32_t q = 0; q < Q.at(x, y).size(); ++q) {
        Bitset members(U.spans.size());
        for (std::uint32_t s = 0; s < U.spans.size(); ++s)
          if (Q.at(x, y).leq(span_val[s], q)) members.set(s);
        auto it = H.index.find(members);
        if (it == H.index.end())
          throw InternalConsistencyError("F* produced a span set that is not a crible");
        st[q] = it->second;
      }
    }
  return ctx;
}

GrothendieckTopology derive_topology(const FinQuantaloid& Q, const MapsResult& maps) {
  const int n = static_cast<int>(Q.n_obj());
  GrothendieckTopology J;
  J.covers.resize(n);
  for (int x = 0; x < n; ++x)
    for (const Sieve& S : sieves_on(maps.cat, x)) {
      std::uint32_t acc = Q.at(x, x).bottom();
      for (std::size_t m = S.members.first(); m != npos; m = S.members.next(m)) {
        const MapMor& s = maps.maps[m];
        acc = Q.at(x, x).join2(acc, Q.then(x, s.src, x, s.star, s.elt));
      }
      if (acc == Q.identity[x]) J.covers[x].push_back(S);
    }
  return J;
}

nlohmann::json IsoWitness::to_json(const FinQuantaloid& Q, const Rcj& rcj) const {
  const int n = static_cast<int>(Q.n_obj());
  nlohmann::json out = nlohmann::json::object();
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      nlohmann::json homj = nlohmann::json::array();
      for (const auto& [c, q] : pairs[static_cast<std::size_t>(x) * n + y]) {
        const auto& embed = rcj.quo.embed[static_cast<std::size_t>(x) * n + y];
        Crible cr = rcj.rc.crible_of(x, y, embed[c]);
        homj.push_back({{"crible", crible_to_json(rcj.rc, cr)}, {"element", Q.at(x, y).id(q)}});
      }
      out[Q.objects[x] + "|" + Q.objects[y]] = std::move(homj);
    }
  return out;
}

RoundtripResult roundtrip(const FinQuantaloid& Q, std::size_t bound) {
  RoundtripResult out;
  out.report.subject = "roundtrip";
  bool axioms = true;
  for (Property p : {Property::locally_localic, Property::map_discrete, Property::weakly_tabular,
                     Property::weakly_modular}) {
    PropertyVerdict v = check_property(Q, p);
    out.report.checks.push_back(v.to_check());
    axioms = axioms && v.verdict;
  }
  if (!axioms) return out;

  out.ctx = build_char_context(Q, bound);
  const CharContext& ctx = *out.ctx;
  const int n = static_cast<int>(Q.n_obj());

  GrothendieckTopology J = derive_topology(Q, ctx.maps);
  if (!validate_topology(ctx.maps.cat, J).overall())
    throw InternalConsistencyError("derived covers do not satisfy the topology axioms");
  out.report.add("derived-topology-valid", true);

  Nucleus jJ = topology_to_nucleus(ctx.rmap, J);
  if (!(jJ == ctx.induced_nucleus()))
    throw InternalConsistencyError("topology nucleus differs from F*∘F");
  out.report.add("nucleus-consistency", true);

  Rcj rcj = build_rcj(ctx.rmap, J);

  IsoWitness iso;
  iso.pairs.resize(static_cast<std::size_t>(n) * n);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      const auto& embed = rcj.quo.embed[static_cast<std::size_t>(x) * n + y];
      const auto& closed_of = rcj.quo.closed_of[static_cast<std::size_t>(x) * n + y];
      const auto& HQ = Q.at(x, y);
      if (embed.size() != HQ.size())
        throw InternalConsistencyError("closed cribles and hom elements differ in number");
      std::vector<bool> hit(HQ.size(), false);
      for (std::uint32_t c = 0; c < embed.size(); ++c) {
        const std::uint32_t q = ctx.F(Q, x, y, embed[c]);
        if (hit[q]) throw InternalConsistencyError("F is not injective on closed cribles");
        hit[q] = true;
        iso.pairs[static_cast<std::size_t>(x) * n + y].push_back({c, q});
      }
      for (std::uint32_t q = 0; q < HQ.size(); ++q) {
        const std::uint32_t c = closed_of[ctx.F_star(Q, x, y, q)];
        if (c == npos32 || ctx.F(Q, x, y, embed[c]) != q)
          throw InternalConsistencyError("F and F* are not mutually inverse");
      }
    }
  out.report.add("iso-homs-bijective", true);

  const FinQuantaloid& R = rcj.quo.Q;
  for (int x = 0; x < n; ++x) {
    const auto& embx = rcj.quo.embed[static_cast<std::size_t>(x) * n + x];
    if (ctx.F(Q, x, x, embx[R.identity[x]]) != Q.identity[x])
      throw InternalConsistencyError("F does not send the quotient identity to the identity");
  }
  out.report.add("iso-preserves-identities", true);

  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z) {
        const auto& ea = rcj.quo.embed[static_cast<std::size_t>(x) * n + y];
        const auto& eb = rcj.quo.embed[static_cast<std::size_t>(y) * n + z];
        const auto& ec = rcj.quo.embed[static_cast<std::size_t>(x) * n + z];
        for (std::uint32_t a = 0; a < ea.size(); ++a)
          for (std::uint32_t b = 0; b < eb.size(); ++b) {
            const std::uint32_t lhs = ctx.F(Q, x, z, ec[R.then(x, y, z, a, b)]);
            const std::uint32_t rhs =
                Q.then(x, y, z, ctx.F(Q, x, y, ea[a]), ctx.F(Q, y, z, eb[b]));
            if (lhs != rhs)
              throw InternalConsistencyError("F does not preserve composition");
          }
      }
  out.report.add("iso-preserves-composition", true);

  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      const auto& embed = rcj.quo.embed[static_cast<std::size_t>(x) * n + y];
      const auto& HR = R.at(x, y);
      const auto& HQ = Q.at(x, y);
      if (ctx.F(Q, x, y, embed[HR.bottom()]) != HQ.bottom())
        throw InternalConsistencyError("F does not preserve the bottom element");
      for (std::uint32_t a = 0; a < HR.size(); ++a)
        for (std::uint32_t b = a; b < HR.size(); ++b)
          if (ctx.F(Q, x, y, embed[HR.join2(a, b)]) !=
              HQ.join2(ctx.F(Q, x, y, embed[a]), ctx.F(Q, x, y, embed[b])))
            throw InternalConsistencyError("F does not preserve joins");
    }
  out.report.add("iso-preserves-joins", true);

  out.topology = std::move(J);
  out.rcj = std::move(rcj);
  out.iso = std::move(iso);
  return out;
}

Involution derived_involution(const FinQuantaloid& Q) {
  for (Property p : {Property::locally_localic, Property::map_discrete, Property::weakly_tabular,
                     Property::weakly_modular}) {
    PropertyVerdict v = check_property(Q, p);
    if (!v.verdict)
      throw ArgumentError(std::string("derived involution needs the four axioms; ") +
                          property_name(p) + " fails");
  }
  MapsResult M = maps_category(Q);
  const int n = static_cast<int>(Q.n_obj());
  Involution inv;
  inv.op.resize(static_cast<std::size_t>(n) * n);
  for (int s = 0; s < n; ++s)
    for (int d = 0; d < n; ++d) {
      const auto& H = Q.at(s, d);
      auto& t = inv.op[static_cast<std::size_t>(s) * n + d];
      t.resize(H.size());
      for (std::uint32_t q = 0; q < H.size(); ++q) {
        std::uint32_t acc = Q.at(d, s).bottom();
        for (int w = 0; w < n; ++w)
          for (auto fi : M.by_hom[static_cast<std::size_t>(w) * n + d])
            for (auto gi : M.by_hom[static_cast<std::size_t>(w) * n + s]) {
              const MapMor& f = M.maps[fi];
              const MapMor& g = M.maps[gi];
              if (H.leq(Q.then(s, w, d, g.star, f.elt), q))
                acc = Q.at(d, s).join2(acc, Q.then(d, w, s, f.star, g.elt));
            }
        t[q] = acc;
      }
    }
  CheckReport check = validate_involution(Q, inv);
  if (!check.overall())
    throw InternalConsistencyError("derived involution fails its laws: " +
                                   check.checks.front().witness.dump());
  return inv;
}

namespace {

// Enumerates the natural families over a sieve by backtracking with
// propagation along precompositions; calls `leaf` for each complete one.
struct FamilyEnumerator {
  const FinCategory& C;
  const std::vector<std::size_t>& members;  // morphism indices of the sieve
  int target;                               // object D
  std::size_t bound;
  std::size_t enumerated = 0;

  std::vector<int> pos_of;  // morphism index -> position in members, or -1
  std::vector<int> tau;     // per position, morphism index into C(dom, D)

  FamilyEnumerator(const FinCategory& c, const std::vector<std::size_t>& mem, int tgt,
                   std::size_t b)
      : C(c), members(mem), target(tgt), bound(b), pos_of(c.n_mor(), -1),
        tau(mem.size(), -1) {
    for (std::size_t i = 0; i < mem.size(); ++i) pos_of[mem[i]] = static_cast<int>(i);
  }

  bool assign(std::size_t pos, int value, std::vector<std::size_t>& trail) {
    if (tau[pos] >= 0) return tau[pos] == value;
    tau[pos] = value;
    trail.push_back(pos);
    const int m = static_cast<int>(members[pos]);
    for (int h = 0; h < static_cast<int>(C.n_mor()); ++h) {
      if (C.mor[h].cod != C.mor[m].dom) continue;
      const int child = pos_of[C.compose(m, h)];
      if (!assign(static_cast<std::size_t>(child), C.compose(value, h), trail)) return false;
    }
    return true;
  }

  void run(const std::function<void(const std::vector<int>&)>& leaf) {
    std::size_t pos = 0;
    while (pos < tau.size() && tau[pos] >= 0) ++pos;
    if (pos == tau.size()) {
      if (++enumerated > bound)
        throw ResourceBoundError("family enumeration exceeds bound of " + std::to_string(bound),
                                 bound);
      leaf(tau);
      return;
    }
    const int dom = C.mor[members[pos]].dom;
    for (int v = 0; v < static_cast<int>(C.n_mor()); ++v) {
      if (C.mor[v].dom != dom || C.mor[v].cod != target) continue;
      std::vector<std::size_t> trail;
      if (assign(pos, v, trail)) run(leaf);
      for (auto p : trail) tau[p] = -1;
    }
  }
};

}  // namespace

CheckReport check_subcanonical(const FinCategory& C, const GrothendieckTopology& J,
                               std::size_t bound) {
  CheckReport rep;
  rep.subject = "subcanonical";
  for (std::size_t x = 0; x < C.n_obj(); ++x)
    for (const Sieve& S : J.covers[x]) {
      std::vector<std::size_t> members = S.members.members();
      for (int d = 0; d < static_cast<int>(C.n_obj()); ++d) {
        FamilyEnumerator fam(C, members, d, bound);
        nlohmann::json bad;
        fam.run([&](const std::vector<int>& tau) {
          if (!bad.is_null()) return;
          int amalgamations = 0;
          for (int f = 0; f < static_cast<int>(C.n_mor()); ++f) {
            if (C.mor[f].dom != static_cast<int>(x) || C.mor[f].cod != d) continue;
            bool glues = true;
            for (std::size_t i = 0; i < members.size() && glues; ++i)
              glues = C.compose(f, static_cast<int>(members[i])) == tau[i];
            if (glues) ++amalgamations;
          }
          if (amalgamations != 1) {
            nlohmann::json family = nlohmann::json::object();
            for (std::size_t i = 0; i < members.size(); ++i)
              family[C.mor[members[i]].id] = C.mor[tau[i]].id;
            bad = {{"object", C.objects[x]},
                   {"sieve", sieve_to_json(C, S)},
                   {"target", C.objects[d]},
                   {"family", std::move(family)},
                   {"amalgamations", amalgamations}};
          }
        });
        if (!bad.is_null()) {
          rep.add("sheaf-condition", false, std::move(bad));
          return rep;
        }
      }
    }
  rep.add("sheaf-condition", true);
  return rep;
}

CheckReport check_coreflexives_split(const FinQuantaloid& Q) {
  CheckReport rep;
  rep.subject = "coreflexives-split";
  const int n = static_cast<int>(Q.n_obj());
  for (int x = 0; x < n; ++x) {
    const auto& H = Q.at(x, x);
    for (std::uint32_t e = 0; e < H.size(); ++e) {
      if (!H.leq(e, Q.identity[x])) continue;
      bool split = false;
      for (int w = 0; w < n && !split; ++w)
        for (std::uint32_t f = 0; f < Q.at(x, w).size() && !split; ++f)
          for (std::uint32_t g = 0; g < Q.at(w, x).size() && !split; ++g)
            split = Q.then(w, x, w, g, f) == Q.identity[w] &&
                    Q.then(x, w, x, f, g) == e;
      if (!split) {
        rep.add("coreflexives-split", false,
                {{"object", Q.objects[x]}, {"element", H.id(e)}});
        return rep;
      }
    }
  }
  rep.add("coreflexives-split", true);
  return rep;
}

CheckReport check_canonical(const FinCategory& C, const GrothendieckTopology& J,
                            std::size_t bound) {
  CheckReport rep;
  rep.subject = "canonical";
  CheckReport own = check_subcanonical(C, J, bound);
  if (!own.overall()) {
    rep.add("canonical", false,
            {{"reason", "not subcanonical"}, {"witness", own.checks.front().witness}});
    return rep;
  }
  for (const GrothendieckTopology& other : enumerate_topologies(C, bound)) {
    if (!check_subcanonical(C, other, bound).overall()) continue;
    for (std::size_t x = 0; x < C.n_obj(); ++x)
      for (const Sieve& S : other.covers[x])
        if (!J.contains(static_cast<int>(x), S.members)) {
          rep.add("canonical", false,
                  {{"reason", "a larger subcanonical topology exists"},
                   {"object", C.objects[x]},
                   {"sieve", sieve_to_json(C, S)}});
          return rep;
        }
  }
  rep.add("canonical", true);
  return rep;
}

}  // namespace qcrib
