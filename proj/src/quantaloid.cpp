#include "qcrib/quantaloid.hpp"

#include <algorithm>
#include <map>
#include <tuple>

#include "qcrib/errors.hpp"
#include "qcrib/parallel.hpp"

namespace qcrib {

namespace {

nlohmann::json elt_json(const FinQuantaloid& Q, int x, int y, std::uint32_t a) {
  return nlohmann::json{{"src", Q.objects[x]}, {"dst", Q.objects[y]}, {"element", Q.at(x, y).id(a)}};
}

}  // namespace

int FinQuantaloid::object_index(std::string_view id) const {
  auto it = std::lower_bound(objects.begin(), objects.end(), id);
  if (it == objects.end() || *it != id)
    throw UnknownElementError("unknown object '" + std::string(id) + "'");
  return static_cast<int>(it - objects.begin());
}

Involution Involution::identity_on_elements(const FinQuantaloid& Q) {
  const std::size_t n = Q.n_obj();
  Involution inv;
  inv.op.resize(n * n);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      auto& t = inv.op[x * n + y];
      t.resize(Q.at(static_cast<int>(x), static_cast<int>(y)).size());
      for (std::uint32_t a = 0; a < t.size(); ++a) t[a] = a;
    }
  return inv;
}

const char* property_name(Property p) {
  switch (p) {
    case Property::locally_localic: return "locally_localic";
    case Property::map_discrete: return "map_discrete";
    case Property::weakly_tabular: return "weakly_tabular";
    case Property::map_tabular: return "map_tabular";
    case Property::weakly_modular: return "weakly_modular";
    case Property::modular: return "modular";
    case Property::tabular: return "tabular";
  }
  return "?";
}

std::optional<Property> property_from_name(std::string_view name) {
  for (Property p : {Property::locally_localic, Property::map_discrete, Property::weakly_tabular,
                     Property::map_tabular, Property::weakly_modular, Property::modular,
                     Property::tabular})
    if (name == property_name(p)) return p;
  return std::nullopt;
}

CheckReport validate_quantaloid(const FinQuantaloid& Q) {
  CheckReport rep;
  rep.subject = "quantaloid";
  const int n = static_cast<int>(Q.n_obj());
  if (Q.hom.size() != static_cast<std::size_t>(n) * n || Q.identity.size() != static_cast<std::size_t>(n))
    throw MalformedInputError("quantaloid tables have wrong shape");
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      if (!Q.at(x, y).finalized()) throw MalformedInputError("hom lattice not finalized");
      for (int z = 0; z < n; ++z) {
        const auto& t = Q.comp[(static_cast<std::size_t>(x) * n + y) * n + z];
        if (t.size() != Q.at(x, y).size() * Q.at(y, z).size())
          throw MalformedInputError("missing composition entries for " + Q.objects[x] + "|" +
                                    Q.objects[y] + "|" + Q.objects[z]);
        for (auto v : t)
          if (v >= Q.at(x, z).size()) throw MalformedInputError("composition entry out of range");
      }
    }

  auto fail = [&](nlohmann::json w) {
    rep.add("quantaloid-axioms", false, std::move(w));
    return rep;
  };

  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      const auto& H = Q.at(x, y);
      for (std::uint32_t a = 0; a < H.size(); ++a) {
        if (Q.then(x, x, y, Q.identity[x], a) != a)
          return fail({{"law", "right-unit"}, {"arrow", elt_json(Q, x, y, a)}});
        if (Q.then(x, y, y, a, Q.identity[y]) != a)
          return fail({{"law", "left-unit"}, {"arrow", elt_json(Q, x, y, a)}});
      }
    }
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z)
        for (int w = 0; w < n; ++w) {
          const std::uint32_t na = static_cast<std::uint32_t>(Q.at(x, y).size());
          const std::uint32_t nb = static_cast<std::uint32_t>(Q.at(y, z).size());
          const std::uint32_t nc = static_cast<std::uint32_t>(Q.at(z, w).size());
          for (std::uint32_t a = 0; a < na; ++a)
            for (std::uint32_t b = 0; b < nb; ++b)
              for (std::uint32_t c = 0; c < nc; ++c)
                if (Q.then(x, z, w, Q.then(x, y, z, a, b), c) !=
                    Q.then(x, y, w, a, Q.then(y, z, w, b, c)))
                  return fail({{"law", "associativity"},
                               {"arrows",
                                {elt_json(Q, x, y, a), elt_json(Q, y, z, b), elt_json(Q, z, w, c)}}});
        }
  // Join preservation in each variable: binary joins and bottom.
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z) {
        const auto& A = Q.at(x, y);
        const auto& B = Q.at(y, z);
        const auto& R = Q.at(x, z);
        for (std::uint32_t b = 0; b < B.size(); ++b) {
          if (Q.then(x, y, z, A.bottom(), b) != R.bottom())
            return fail({{"law", "composition-preserves-bottom"},
                         {"side", "pre"},
                         {"arrow", elt_json(Q, y, z, b)}});
          for (std::uint32_t a1 = 0; a1 < A.size(); ++a1)
            for (std::uint32_t a2 = a1; a2 < A.size(); ++a2)
              if (Q.then(x, y, z, A.join2(a1, a2), b) !=
                  R.join2(Q.then(x, y, z, a1, b), Q.then(x, y, z, a2, b)))
                return fail({{"law", "composition-preserves-joins"},
                             {"arrows",
                              {elt_json(Q, x, y, a1), elt_json(Q, x, y, a2), elt_json(Q, y, z, b)}}});
        }
        for (std::uint32_t a = 0; a < A.size(); ++a) {
          if (Q.then(x, y, z, a, B.bottom()) != R.bottom())
            return fail({{"law", "composition-preserves-bottom"},
                         {"side", "post"},
                         {"arrow", elt_json(Q, x, y, a)}});
          for (std::uint32_t b1 = 0; b1 < B.size(); ++b1)
            for (std::uint32_t b2 = b1; b2 < B.size(); ++b2)
              if (Q.then(x, y, z, a, B.join2(b1, b2)) !=
                  R.join2(Q.then(x, y, z, a, b1), Q.then(x, y, z, a, b2)))
                return fail({{"law", "composition-preserves-joins"},
                             {"arrows",
                              {elt_json(Q, x, y, a), elt_json(Q, y, z, b1), elt_json(Q, y, z, b2)}}});
        }
      }
  rep.add("quantaloid-axioms", true);
  return rep;
}

std::optional<std::uint32_t> right_adjoint(const FinQuantaloid& Q, int x, int y, std::uint32_t f) {
  const auto& H = Q.at(y, x);
  std::optional<std::uint32_t> found;
  for (std::uint32_t g = 0; g < H.size(); ++g) {
    bool unit = Q.at(x, x).leq(Q.identity[x], Q.then(x, y, x, f, g));
    bool counit = Q.at(y, y).leq(Q.then(y, x, y, g, f), Q.identity[y]);
    if (unit && counit) {
      if (found)
        throw InternalConsistencyError("two right adjoints for one arrow; quantaloid is invalid");
      found = g;
    }
  }
  return found;
}

MapsResult maps_category(const FinQuantaloid& Q) {
  const int n = static_cast<int>(Q.n_obj());
  std::vector<MapMor> found;
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (std::uint32_t f = 0; f < Q.at(x, y).size(); ++f)
        if (auto star = right_adjoint(Q, x, y, f)) {
          MapMor m{x, y, f, *star,
                   Q.objects[x] + ">" + Q.objects[y] + ":" + Q.at(x, y).id(f)};
          found.push_back(std::move(m));
        }

  std::map<std::string, const MapMor*> by_id;
  std::map<std::tuple<int, int, std::uint32_t>, const MapMor*> by_elt;
  std::vector<FinCategory::MorSpec> mors;
  for (const auto& m : found) {
    by_id[m.id] = &m;
    by_elt[{m.src, m.dst, m.elt}] = &m;
    mors.push_back({m.id, Q.objects[m.src], Q.objects[m.dst]});
  }

  std::vector<std::pair<std::string, std::string>> identities;
  for (int x = 0; x < n; ++x) {
    auto it = by_elt.find({x, x, Q.identity[x]});
    if (it == by_elt.end())
      throw InternalConsistencyError("identity arrow is not a left adjoint");
    identities.emplace_back(Q.objects[x], it->second->id);
  }

  std::vector<std::array<std::string, 3>> comp;
  for (const auto& f : found)
    for (const auto& g : found) {
      if (g.src != f.dst) continue;
      std::uint32_t gf = Q.then(f.src, f.dst, g.dst, f.elt, g.elt);
      auto it = by_elt.find({f.src, g.dst, gf});
      if (it == by_elt.end())
        throw InternalConsistencyError("composite of left adjoints is not a left adjoint");
      comp.push_back({g.id, f.id, it->second->id});
    }

  MapsResult out;
  out.cat = FinCategory::make(Q.objects, mors, identities, comp);
  out.maps.resize(out.cat.n_mor());
  for (std::size_t i = 0; i < out.cat.n_mor(); ++i) out.maps[i] = *by_id[out.cat.mor[i].id];
  out.by_hom.assign(static_cast<std::size_t>(n) * n, {});
  for (std::size_t i = 0; i < out.maps.size(); ++i)
    out.by_hom[static_cast<std::size_t>(out.maps[i].src) * n + out.maps[i].dst].push_back(i);
  return out;
}

namespace {

// Spans of left adjoints (f,g): x -|> y, i.e. f: w -> y and g: w -> x.
// Canonical order: apex w ascending, then f, then g (by map index, which
// follows id-lexicographic morphism order).
struct MapSpan {
  int apex;
  const MapMor* f;
  const MapMor* g;
};

std::vector<MapSpan> map_spans(const MapsResult& M, int n, int x, int y) {
  std::vector<MapSpan> out;
  for (int w = 0; w < n; ++w)
    for (auto fi : M.by_hom[static_cast<std::size_t>(w) * n + y])
      for (auto gi : M.by_hom[static_cast<std::size_t>(w) * n + x])
        out.push_back({w, &M.maps[fi], &M.maps[gi]});
  return out;
}

nlohmann::json span_json(const FinQuantaloid& Q, const MapSpan& s) {
  return nlohmann::json{{"apex", Q.objects[s.apex]}, {"f", s.f->id}, {"g", s.g->id}};
}

}  // namespace

PropertyVerdict check_property(const FinQuantaloid& Q, Property p, const Involution* inv) {
  const int n = static_cast<int>(Q.n_obj());
  if ((p == Property::modular || p == Property::tabular) && inv == nullptr)
    throw ArgumentError(std::string(property_name(p)) + " requires an involution");

  PropertyVerdict out{p, true, nullptr};
  auto fail = [&](nlohmann::json w) {
    out.verdict = false;
    out.witness = std::move(w);
  };

  if (p == Property::locally_localic) {
    std::vector<nlohmann::json> bad(static_cast<std::size_t>(n) * n);
    parallel_for(static_cast<std::size_t>(n) * n, [&](std::size_t i) {
      Check c = distributivity_check(Q.hom[i]);
      if (!c.verdict) {
        bad[i] = c.witness;
        bad[i]["src"] = Q.objects[i / n];
        bad[i]["dst"] = Q.objects[i % n];
      }
    });
    for (auto& w : bad)
      if (!w.is_null()) {
        fail(std::move(w));
        break;
      }
    return out;
  }

  if (p == Property::modular) {
    // g∘f /\ h <= g∘(f /\ g^o∘h) over all composable triples.
    std::vector<nlohmann::json> bad(static_cast<std::size_t>(n) * n * n);
    parallel_for(bad.size(), [&](std::size_t i) {
      const int x = static_cast<int>(i / (n * n));
      const int y = static_cast<int>((i / n) % n);
      const int z = static_cast<int>(i % n);
      const auto& F = Q.at(x, y);
      const auto& G = Q.at(y, z);
      const auto& H = Q.at(x, z);
      for (std::uint32_t f = 0; f < F.size(); ++f)
        for (std::uint32_t g = 0; g < G.size(); ++g) {
          const std::uint32_t gf = Q.then(x, y, z, f, g);
          const std::uint32_t g_o = inv->of(Q, y, z, g);
          for (std::uint32_t h = 0; h < H.size(); ++h) {
            const std::uint32_t lhs = H.meet2(gf, h);
            const std::uint32_t rhs =
                Q.then(x, y, z, F.meet2(f, Q.then(x, z, y, h, g_o)), g);
            if (!H.leq(lhs, rhs)) {
              bad[i] = {{"law", "modular"},
                        {"f", elt_json(Q, x, y, f)},
                        {"g", elt_json(Q, y, z, g)},
                        {"h", elt_json(Q, x, z, h)}};
              return;
            }
          }
        }
    });
    for (auto& w : bad)
      if (!w.is_null()) {
        fail(std::move(w));
        break;
      }
    return out;
  }

  // The remaining properties quantify over left adjoints.
  MapsResult M = maps_category(Q);

  if (p == Property::map_discrete) {
    for (int x = 0; x < n && out.verdict; ++x)
      for (int y = 0; y < n && out.verdict; ++y) {
        const auto& ms = M.by_hom[static_cast<std::size_t>(x) * n + y];
        for (std::size_t i = 0; i < ms.size() && out.verdict; ++i)
          for (std::size_t j = 0; j < ms.size(); ++j) {
            if (i == j) continue;
            std::uint32_t a = M.maps[ms[i]].elt, b = M.maps[ms[j]].elt;
            if (Q.at(x, y).leq(a, b)) {
              fail({{"law", "map-discrete"},
                    {"f", elt_json(Q, x, y, a)},
                    {"g", elt_json(Q, x, y, b)}});
              break;
            }
          }
      }
    return out;
  }

  if (p == Property::weakly_tabular || p == Property::map_tabular || p == Property::tabular) {
    for (int x = 0; x < n && out.verdict; ++x)
      for (int y = 0; y < n && out.verdict; ++y) {
        const auto& H = Q.at(x, y);
        auto spans = map_spans(M, n, x, y);
        for (std::uint32_t q = 0; q < H.size(); ++q) {
          if (p == Property::weakly_tabular) {
            std::uint32_t acc = H.bottom();
            for (const auto& s : spans) {
              std::uint32_t v = Q.then(x, s.apex, y, s.g->star, s.f->elt);
              if (H.leq(v, q)) acc = H.join2(acc, v);
            }
            if (acc != q) {
              fail({{"law", "weakly-tabular"},
                    {"q", elt_json(Q, x, y, q)},
                    {"join", H.id(acc)}});
              break;
            }
          } else {
            bool tabulated = false;
            for (const auto& s : spans) {
              const int w = s.apex;
              std::uint32_t gdual = p == Property::tabular ? inv->of(Q, w, x, s.g->elt)
                                                           : s.g->star;
              if (Q.then(x, w, y, gdual, s.f->elt) != q) continue;
              std::uint32_t fdual = p == Property::tabular ? inv->of(Q, w, y, s.f->elt)
                                                           : s.f->star;
              std::uint32_t ff = Q.then(w, y, w, s.f->elt, fdual);
              std::uint32_t gg = Q.then(w, x, w, s.g->elt, gdual);
              if (Q.at(w, w).meet2(ff, gg) == Q.identity[w]) {
                tabulated = true;
                break;
              }
            }
            if (!tabulated) {
              fail({{"law", p == Property::tabular ? "tabular" : "map-tabular"},
                    {"q", elt_json(Q, x, y, q)}});
              break;
            }
          }
        }
      }
    return out;
  }

  // weakly_modular: f g* /\ m n* <= f (g* n /\ f* m) n* for all span pairs.
  for (int x = 0; x < n && out.verdict; ++x)
    for (int y = 0; y < n && out.verdict; ++y) {
      const auto& H = Q.at(x, y);
      auto spans = map_spans(M, n, x, y);
      for (std::size_t i = 0; i < spans.size() && out.verdict; ++i) {
        const auto& s1 = spans[i];
        const int w = s1.apex;
        const std::uint32_t fg = Q.then(x, w, y, s1.g->star, s1.f->elt);
        for (std::size_t j = 0; j < spans.size(); ++j) {
          const auto& s2 = spans[j];
          const int v = s2.apex;
          const std::uint32_t mn = Q.then(x, v, y, s2.g->star, s2.f->elt);
          const std::uint32_t lhs = H.meet2(fg, mn);
          const std::uint32_t gn = Q.then(v, x, w, s2.g->elt, s1.g->star);
          const std::uint32_t fm = Q.then(v, y, w, s2.f->elt, s1.f->star);
          const std::uint32_t mid = Q.at(v, w).meet2(gn, fm);
          const std::uint32_t rhs =
              Q.then(x, v, y, s2.g->star, Q.then(v, w, y, mid, s1.f->elt));
          if (!H.leq(lhs, rhs)) {
            fail({{"law", "weakly-modular"},
                  {"span1", span_json(Q, s1)},
                  {"span2", span_json(Q, s2)}});
            break;
          }
        }
      }
    }
  return out;
}

CheckReport validate_involution(const FinQuantaloid& Q, const Involution& inv) {
  CheckReport rep;
  rep.subject = "involution";
  const int n = static_cast<int>(Q.n_obj());
  if (inv.op.size() != static_cast<std::size_t>(n) * n)
    throw MalformedInputError("involution must cover every hom");
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      const auto& t = inv.op[static_cast<std::size_t>(x) * n + y];
      if (t.size() != Q.at(x, y).size())
        throw MalformedInputError("involution table has wrong size on " + Q.objects[x] + "|" +
                                  Q.objects[y]);
      for (auto v : t)
        if (v >= Q.at(y, x).size())
          throw MalformedInputError("involution entry out of range on " + Q.objects[x] + "|" +
                                    Q.objects[y]);
    }

  auto fail = [&](nlohmann::json w) {
    rep.add("involution-axioms", false, std::move(w));
    return rep;
  };

  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      const auto& H = Q.at(x, y);
      for (std::uint32_t a = 0; a < H.size(); ++a)
        if (inv.of(Q, y, x, inv.of(Q, x, y, a)) != a)
          return fail({{"law", "self-inverse"}, {"arrow", elt_json(Q, x, y, a)}});
      if (inv.of(Q, x, y, H.bottom()) != Q.at(y, x).bottom())
        return fail({{"law", "preserves-bottom"}, {"src", Q.objects[x]}, {"dst", Q.objects[y]}});
      for (std::uint32_t a = 0; a < H.size(); ++a)
        for (std::uint32_t b = a; b < H.size(); ++b)
          if (inv.of(Q, x, y, H.join2(a, b)) !=
              Q.at(y, x).join2(inv.of(Q, x, y, a), inv.of(Q, x, y, b)))
            return fail({{"law", "preserves-joins"},
                         {"arrows", {elt_json(Q, x, y, a), elt_json(Q, x, y, b)}}});
    }
  for (int x = 0; x < n; ++x)
    if (inv.of(Q, x, x, Q.identity[x]) != Q.identity[x])
      return fail({{"law", "fixes-identities"}, {"object", Q.objects[x]}});
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z)
        for (std::uint32_t a = 0; a < Q.at(x, y).size(); ++a)
          for (std::uint32_t b = 0; b < Q.at(y, z).size(); ++b)
            if (inv.of(Q, x, z, Q.then(x, y, z, a, b)) !=
                Q.then(z, y, x, inv.of(Q, y, z, b), inv.of(Q, x, y, a)))
              return fail({{"law", "antidistributes"},
                           {"arrows", {elt_json(Q, x, y, a), elt_json(Q, y, z, b)}}});
  rep.add("involution-axioms", true);
  return rep;
}

FinQuantaloid split_idempotent_completion(const FinQuantaloid& Q) {
  const int n = static_cast<int>(Q.n_obj());
  struct Obj {
    std::string id;
    int base;
    std::uint32_t e;
  };
  std::vector<Obj> objs;
  for (int x = 0; x < n; ++x)
    for (std::uint32_t e = 0; e < Q.at(x, x).size(); ++e)
      if (Q.then(x, x, x, e, e) == e)
        objs.push_back({Q.objects[x] + "@" + Q.at(x, x).id(e), x, e});
  std::sort(objs.begin(), objs.end(), [](const Obj& a, const Obj& b) { return a.id < b.id; });

  const int m = static_cast<int>(objs.size());
  FinQuantaloid R;
  for (const auto& o : objs) R.objects.push_back(o.id);
  R.hom.resize(static_cast<std::size_t>(m) * m);
  R.identity.resize(m);
  // members[i*m+j]: elements q of Q.hom(base_i, base_j) with f∘q∘e = q.
  std::vector<std::vector<std::uint32_t>> members(static_cast<std::size_t>(m) * m);

  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      const int x = objs[i].base, y = objs[j].base;
      const std::uint32_t e = objs[i].e, f = objs[j].e;
      const auto& H = Q.at(x, y);
      std::vector<std::string> ids;
      std::vector<std::uint32_t>& mem = members[static_cast<std::size_t>(i) * m + j];
      for (std::uint32_t q = 0; q < H.size(); ++q)
        if (Q.then(x, y, y, Q.then(x, x, y, e, q), f) == q) {
          mem.push_back(q);
          ids.push_back(H.id(q));
        }
      std::vector<Bitset> up(mem.size(), Bitset(mem.size()));
      for (std::size_t a = 0; a < mem.size(); ++a)
        for (std::size_t b = 0; b < mem.size(); ++b)
          if (H.leq(mem[a], mem[b])) up[a].set(b);
      FinLattice L = FinLattice::from_order(std::move(ids), std::move(up));
      if (auto bad = L.finalize())
        throw InternalConsistencyError("split completion hom is not a complete lattice: " +
                                       bad->witness.dump());
      R.at(i, j) = std::move(L);
    }

  for (int i = 0; i < m; ++i) {
    const auto& mem = members[static_cast<std::size_t>(i) * m + i];
    auto it = std::find(mem.begin(), mem.end(), objs[i].e);
    R.identity[i] = static_cast<std::uint32_t>(it - mem.begin());
  }

  R.init_tables();
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      for (int k = 0; k < m; ++k) {
        const auto& A = members[static_cast<std::size_t>(i) * m + j];
        const auto& B = members[static_cast<std::size_t>(j) * m + k];
        const auto& C = members[static_cast<std::size_t>(i) * m + k];
        auto& t = R.table(i, j, k);
        t.resize(A.size() * B.size());
        for (std::size_t a = 0; a < A.size(); ++a)
          for (std::size_t b = 0; b < B.size(); ++b) {
            std::uint32_t c = Q.then(objs[i].base, objs[j].base, objs[k].base, A[a], B[b]);
            auto it = std::lower_bound(C.begin(), C.end(), c);
            if (it == C.end() || *it != c)
              throw InternalConsistencyError("split completion composition left the hom");
            t[a * B.size() + b] = static_cast<std::uint32_t>(it - C.begin());
          }
      }
  return R;
}

FinQuantaloid free_quantaloid(const FinCategory& C) {
  const int n = static_cast<int>(C.n_obj());
  FinQuantaloid Q;
  Q.objects = C.objects;
  Q.hom.resize(static_cast<std::size_t>(n) * n);
  Q.identity.resize(n);

  // arrows[x*n+y]: morphism indices x -> y, ascending (id order).
  std::vector<std::vector<int>> arrows(static_cast<std::size_t>(n) * n);
  for (std::size_t f = 0; f < C.n_mor(); ++f) {
    if (C.mor[f].id.find_first_of(",{}") != std::string::npos)
      throw MalformedInputError("free quantaloid needs morphism ids without ',', '{' or '}'");
    arrows[static_cast<std::size_t>(C.mor[f].dom) * n + C.mor[f].cod].push_back(
        static_cast<int>(f));
  }

  auto subset_id = [&](const std::vector<int>& arr, std::size_t mask) {
    std::string id = "{";
    bool first = true;
    for (std::size_t i = 0; i < arr.size(); ++i)
      if (mask & (std::size_t{1} << i)) {
        if (!first) id += ",";
        id += C.mor[arr[i]].id;
        first = false;
      }
    return id + "}";
  };

  // mask_of[x*n+y][element index] = subset mask, aligned with sorted ids.
  std::vector<std::vector<std::size_t>> mask_of(static_cast<std::size_t>(n) * n);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      const auto& arr = arrows[static_cast<std::size_t>(x) * n + y];
      if (arr.size() > 16)
        throw ResourceBoundError("free quantaloid hom would have more than 2^16 elements", 1u << 16);
      std::vector<std::pair<std::string, std::size_t>> named;
      for (std::size_t mask = 0; mask < (std::size_t{1} << arr.size()); ++mask)
        named.emplace_back(subset_id(arr, mask), mask);
      std::sort(named.begin(), named.end());
      std::vector<std::string> ids;
      std::vector<std::size_t>& masks = mask_of[static_cast<std::size_t>(x) * n + y];
      for (auto& [id, mask] : named) {
        ids.push_back(id);
        masks.push_back(mask);
      }
      std::vector<Bitset> up(masks.size(), Bitset(masks.size()));
      std::vector<std::uint32_t> join(masks.size() * masks.size()),
          meet(masks.size() * masks.size());
      std::map<std::size_t, std::uint32_t> index;
      for (std::uint32_t a = 0; a < masks.size(); ++a) index[masks[a]] = a;
      std::uint32_t top = index[(std::size_t{1} << arr.size()) - 1], bot = index[0];
      for (std::uint32_t a = 0; a < masks.size(); ++a)
        for (std::uint32_t b = 0; b < masks.size(); ++b) {
          if ((masks[a] & masks[b]) == masks[a]) up[a].set(b);
          join[a * masks.size() + b] = index[masks[a] | masks[b]];
          meet[a * masks.size() + b] = index[masks[a] & masks[b]];
        }
      FinLattice L = FinLattice::from_order(std::move(ids), std::move(up));
      L.set_tables(std::move(join), std::move(meet), top, bot);
      Q.at(x, y) = std::move(L);
    }

  auto index_of_mask = [&](int x, int y, std::size_t mask) {
    const auto& masks = mask_of[static_cast<std::size_t>(x) * n + y];
    for (std::uint32_t i = 0; i < masks.size(); ++i)
      if (masks[i] == mask) return i;
    throw InternalConsistencyError("subset not interned");
  };

  for (int x = 0; x < n; ++x) {
    const auto& arr = arrows[static_cast<std::size_t>(x) * n + x];
    std::size_t mask = 0;
    for (std::size_t i = 0; i < arr.size(); ++i)
      if (arr[i] == C.identity[x]) mask = std::size_t{1} << i;
    Q.identity[x] = index_of_mask(x, x, mask);
  }

  Q.init_tables();
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z) {
        const auto& axy = arrows[static_cast<std::size_t>(x) * n + y];
        const auto& ayz = arrows[static_cast<std::size_t>(y) * n + z];
        const auto& axz = arrows[static_cast<std::size_t>(x) * n + z];
        const auto& ma = mask_of[static_cast<std::size_t>(x) * n + y];
        const auto& mb = mask_of[static_cast<std::size_t>(y) * n + z];
        auto pos_in = [&](int f) {
          for (std::size_t i = 0; i < axz.size(); ++i)
            if (axz[i] == f) return i;
          throw InternalConsistencyError("composite arrow missing");
        };
        auto& t = Q.table(x, y, z);
        t.resize(ma.size() * mb.size());
        for (std::uint32_t a = 0; a < ma.size(); ++a)
          for (std::uint32_t b = 0; b < mb.size(); ++b) {
            std::size_t mask = 0;
            for (std::size_t i = 0; i < axy.size(); ++i) {
              if (!(ma[a] & (std::size_t{1} << i))) continue;
              for (std::size_t j = 0; j < ayz.size(); ++j)
                if (mb[b] & (std::size_t{1} << j))
                  mask |= std::size_t{1} << pos_in(C.compose(ayz[j], axy[i]));
            }
            t[static_cast<std::size_t>(a) * mb.size() + b] = index_of_mask(x, z, mask);
          }
      }
  return Q;
}

Involution free_quantaloid_involution(const FinCategory& C, const FinQuantaloid& Q) {
  const int n = static_cast<int>(C.n_obj());
  std::vector<int> inverse(C.n_mor(), -1);
  for (std::size_t f = 0; f < C.n_mor(); ++f) {
    for (std::size_t g = 0; g < C.n_mor(); ++g) {
      if (C.mor[g].dom != C.mor[f].cod || C.mor[g].cod != C.mor[f].dom) continue;
      if (C.compose(static_cast<int>(g), static_cast<int>(f)) == C.identity[C.mor[f].dom] &&
          C.compose(static_cast<int>(f), static_cast<int>(g)) == C.identity[C.mor[f].cod]) {
        inverse[f] = static_cast<int>(g);
        break;
      }
    }
    if (inverse[f] < 0)
      throw ArgumentError("the canonical involution needs a groupoid; '" + C.mor[f].id +
                          "' has no inverse");
  }

  Involution inv;
  inv.op.resize(static_cast<std::size_t>(n) * n);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      const auto& H = Q.at(x, y);
      const auto& T = Q.at(y, x);
      auto& t = inv.op[static_cast<std::size_t>(x) * n + y];
      t.resize(H.size());
      for (std::uint32_t a = 0; a < H.size(); ++a) {
        // Parse is avoided: rebuild the reversed subset id from member ids.
        std::string id = H.id(a);
        std::vector<std::string> rev;
        std::string cur;
        for (std::size_t k = 1; k + 1 < id.size(); ++k) {
          if (id[k] == ',') {
            rev.push_back(C.mor[inverse[C.morphism_index(cur)]].id);
            cur.clear();
          } else {
            cur += id[k];
          }
        }
        if (!cur.empty()) rev.push_back(C.mor[inverse[C.morphism_index(cur)]].id);
        std::sort(rev.begin(), rev.end());
        std::string out = "{";
        for (std::size_t k = 0; k < rev.size(); ++k) out += (k ? "," : "") + rev[k];
        out += "}";
        t[a] = T.index_of(out);
      }
    }
  return inv;
}

}  // namespace qcrib
