#include "qcrib/category.hpp"

#include <algorithm>
#include <array>
#include <map>

#include "qcrib/errors.hpp"

namespace qcrib {

int FinCategory::object_index(std::string_view id) const {
  auto it = std::lower_bound(objects.begin(), objects.end(), id);
  if (it == objects.end() || *it != id)
    throw UnknownElementError("unknown object '" + std::string(id) + "'");
  return static_cast<int>(it - objects.begin());
}

int FinCategory::morphism_index(std::string_view id) const {
  auto it = std::lower_bound(mor.begin(), mor.end(), id,
                             [](const Mor& m, std::string_view v) { return m.id < v; });
  if (it == mor.end() || it->id != id)
    throw UnknownElementError("unknown morphism '" + std::string(id) + "'");
  return static_cast<int>(it - mor.begin());
}

FinCategory FinCategory::make(std::vector<std::string> objects,
                              const std::vector<MorSpec>& morphisms,
                              const std::vector<std::pair<std::string, std::string>>& identities,
                              const std::vector<std::array<std::string, 3>>& composition) {
  FinCategory C;
  std::sort(objects.begin(), objects.end());
  if (std::adjacent_find(objects.begin(), objects.end()) != objects.end())
    throw MalformedInputError("duplicate object ids");
  C.objects = std::move(objects);

  std::vector<Mor> mors;
  for (const auto& m : morphisms) mors.push_back({m.id, 0, 0});
  std::sort(mors.begin(), mors.end(), [](const Mor& a, const Mor& b) { return a.id < b.id; });
  for (std::size_t i = 0; i + 1 < mors.size(); ++i)
    if (mors[i].id == mors[i + 1].id)
      throw MalformedInputError("duplicate morphism id '" + mors[i].id + "'");
  C.mor = std::move(mors);
  for (const auto& m : morphisms) {
    Mor& slot = C.mor[C.morphism_index(m.id)];
    slot.dom = C.object_index(m.dom);
    slot.cod = C.object_index(m.cod);
  }

  C.identity.assign(C.objects.size(), -1);
  for (const auto& [obj, m] : identities) {
    int x = C.object_index(obj);
    if (C.identity[x] != -1) throw MalformedInputError("two identities declared for '" + obj + "'");
    C.identity[x] = C.morphism_index(m);
  }
  for (std::size_t x = 0; x < C.objects.size(); ++x)
    if (C.identity[x] == -1)
      throw MalformedInputError("no identity declared for '" + C.objects[x] + "'");

  const std::size_t m = C.mor.size();
  C.comp.assign(m * m, -1);
  auto put = [&](int g, int f, int gf) {
    int& slot = C.comp[static_cast<std::size_t>(g) * m + f];
    if (slot != -1 && slot != gf)
      throw MalformedInputError("conflicting composition entries for (" + C.mor[g].id + ", " +
                                C.mor[f].id + ")");
    slot = gf;
  };
  // Identity-forced entries first, then the declared table.
  for (int f = 0; f < static_cast<int>(m); ++f) {
    if (C.mor[f].dom >= 0 && C.mor[f].dom < static_cast<int>(C.objects.size()))
      put(f, C.identity[C.mor[f].dom], f);
    if (C.mor[f].cod >= 0 && C.mor[f].cod < static_cast<int>(C.objects.size()))
      put(C.identity[C.mor[f].cod], f, f);
  }
  for (const auto& [g, f, gf] : composition)
    put(C.morphism_index(g), C.morphism_index(f), C.morphism_index(gf));
  return C;
}

CheckReport validate_category(const FinCategory& C) {
  CheckReport rep;
  rep.subject = "category";
  const int m = static_cast<int>(C.n_mor());
  auto fail = [&](nlohmann::json w) {
    rep.add("category-axioms", false, std::move(w));
    return rep;
  };

  for (std::size_t x = 0; x < C.n_obj(); ++x) {
    int e = C.identity[x];
    if (C.mor[e].dom != static_cast<int>(x) || C.mor[e].cod != static_cast<int>(x))
      return fail({{"law", "identity-endo"}, {"object", C.objects[x]}, {"morphism", C.mor[e].id}});
  }
  // comp defined iff composable, with well-typed results.
  for (int g = 0; g < m; ++g)
    for (int f = 0; f < m; ++f) {
      int gf = C.compose(g, f);
      if (C.composable(g, f)) {
        if (gf < 0)
          return fail({{"law", "composition-total"}, {"morphisms", {C.mor[g].id, C.mor[f].id}}});
        if (C.mor[gf].dom != C.mor[f].dom || C.mor[gf].cod != C.mor[g].cod)
          return fail({{"law", "composition-typed"}, {"morphisms", {C.mor[g].id, C.mor[f].id}}});
      } else if (gf >= 0) {
        return fail(
            {{"law", "composition-defined-iff-composable"}, {"morphisms", {C.mor[g].id, C.mor[f].id}}});
      }
    }
  for (int f = 0; f < m; ++f) {
    if (C.compose(f, C.identity[C.mor[f].dom]) != f)
      return fail({{"law", "right-unit"}, {"morphism", C.mor[f].id}});
    if (C.compose(C.identity[C.mor[f].cod], f) != f)
      return fail({{"law", "left-unit"}, {"morphism", C.mor[f].id}});
  }
  for (int h = 0; h < m; ++h)
    for (int g = 0; g < m; ++g) {
      if (!C.composable(h, g)) continue;
      for (int f = 0; f < m; ++f) {
        if (!C.composable(g, f)) continue;
        if (C.compose(C.compose(h, g), f) != C.compose(h, C.compose(g, f)))
          return fail(
              {{"law", "associativity"}, {"morphisms", {C.mor[h].id, C.mor[g].id, C.mor[f].id}}});
      }
    }
  rep.add("category-axioms", true);
  return rep;
}

Sieve maximal_sieve(const FinCategory& C, int x) {
  Sieve s{x, Bitset(C.n_mor())};
  for (std::size_t f = 0; f < C.n_mor(); ++f)
    if (C.mor[f].cod == x) s.members.set(f);
  return s;
}

bool is_sieve(const FinCategory& C, const Sieve& s, std::string* why) {
  for (std::size_t f = s.members.first(); f != npos; f = s.members.next(f)) {
    if (C.mor[f].cod != s.at) {
      if (why) *why = "member '" + C.mor[f].id + "' does not end at the sieve's object";
      return false;
    }
    for (std::size_t h = 0; h < C.n_mor(); ++h) {
      if (C.mor[h].cod != C.mor[f].dom) continue;
      if (!s.members.test(C.compose(static_cast<int>(f), static_cast<int>(h)))) {
        if (why)
          *why = "not closed: '" + C.mor[f].id + "' o '" + C.mor[h].id + "' is missing";
        return false;
      }
    }
  }
  return true;
}

Sieve pullback_sieve(const FinCategory& C, int f, const Sieve& S) {
  if (S.at != C.mor[f].cod)
    throw ArgumentError("pullback: sieve lives at '" + C.objects[S.at] + "', not at cod(" +
                        C.mor[f].id + ")");
  Sieve out{C.mor[f].dom, Bitset(C.n_mor())};
  for (std::size_t g = 0; g < C.n_mor(); ++g)
    if (C.mor[g].cod == C.mor[f].dom && S.members.test(C.compose(f, static_cast<int>(g))))
      out.members.set(g);
  return out;
}

std::vector<Sieve> sieves_on(const FinCategory& C, int x) {
  // Principal sieve of each arrow into x, then close under unions.
  std::vector<Bitset> gen;
  for (std::size_t s = 0; s < C.n_mor(); ++s) {
    if (C.mor[s].cod != x) continue;
    Bitset b(C.n_mor());
    b.set(s);
    for (std::size_t h = 0; h < C.n_mor(); ++h)
      if (C.mor[h].cod == C.mor[s].dom) b.set(C.compose(static_cast<int>(s), static_cast<int>(h)));
    gen.push_back(std::move(b));
  }
  std::vector<Bitset> found{Bitset(C.n_mor())};
  std::map<Bitset, bool> seen{{found[0], true}};
  for (std::size_t i = 0; i < found.size(); ++i)
    for (const auto& g : gen) {
      Bitset u = found[i] | g;
      if (seen.emplace(u, true).second) found.push_back(std::move(u));
    }
  std::sort(found.begin(), found.end());
  std::vector<Sieve> out;
  out.reserve(found.size());
  for (auto& b : found) out.push_back({x, std::move(b)});
  return out;
}

CheckReport validate_topology(const FinCategory& C, const GrothendieckTopology& J) {
  if (J.covers.size() != C.n_obj())
    throw MalformedInputError("covers must assign a sieve set to every object");
  for (std::size_t x = 0; x < C.n_obj(); ++x)
    for (const auto& s : J.covers[x]) {
      std::string why;
      if (s.at != static_cast<int>(x) || !is_sieve(C, s, &why))
        throw MalformedInputError("ill-formed sieve at '" + C.objects[x] + "': " +
                                  (why.empty() ? "wrong object" : why));
    }

  CheckReport rep;
  rep.subject = "topology";
  auto fail = [&](nlohmann::json w) {
    rep.add("topology-axioms", false, std::move(w));
    return rep;
  };

  for (std::size_t x = 0; x < C.n_obj(); ++x) {
    Sieve top = maximal_sieve(C, static_cast<int>(x));
    if (!J.contains(static_cast<int>(x), top.members))
      return fail({{"axiom", "maximality"}, {"object", C.objects[x]}});
  }
  for (std::size_t x = 0; x < C.n_obj(); ++x)
    for (const auto& S : J.covers[x])
      for (std::size_t f = 0; f < C.n_mor(); ++f) {
        if (C.mor[f].cod != static_cast<int>(x)) continue;
        Sieve pb = pullback_sieve(C, static_cast<int>(f), S);
        if (!J.contains(pb.at, pb.members))
          return fail({{"axiom", "stability"},
                       {"object", C.objects[x]},
                       {"sieve", sieve_to_json(C, S)},
                       {"morphism", C.mor[f].id}});
      }
  for (std::size_t x = 0; x < C.n_obj(); ++x) {
    auto all = sieves_on(C, static_cast<int>(x));
    for (const auto& S : J.covers[x])
      for (const auto& T : all) {
        if (J.contains(static_cast<int>(x), T.members)) continue;
        bool locally_covering = true;
        for (std::size_t s = S.members.first(); s != npos && locally_covering;
             s = S.members.next(s)) {
          Sieve pb = pullback_sieve(C, static_cast<int>(s), T);
          locally_covering = J.contains(pb.at, pb.members);
        }
        if (locally_covering)
          return fail({{"axiom", "transitivity"},
                       {"object", C.objects[x]},
                       {"sieve", sieve_to_json(C, S)},
                       {"candidate", sieve_to_json(C, T)}});
      }
  }
  rep.add("topology-axioms", true);
  return rep;
}

std::vector<GrothendieckTopology> enumerate_topologies(const FinCategory& C, std::size_t bound) {
  const std::size_t n = C.n_obj();
  std::vector<std::vector<Sieve>> all(n);
  std::vector<std::size_t> top_at(n);
  double log2_total = 0;
  for (std::size_t x = 0; x < n; ++x) {
    all[x] = sieves_on(C, static_cast<int>(x));
    Sieve top = maximal_sieve(C, static_cast<int>(x));
    top_at[x] = npos;
    for (std::size_t i = 0; i < all[x].size(); ++i)
      if (all[x][i].members == top.members) top_at[x] = i;
    log2_total += static_cast<double>(all[x].size() - 1);
  }
  if (log2_total > 62 || (std::size_t{1} << static_cast<std::size_t>(log2_total)) > bound)
    throw ResourceBoundError("topology enumeration exceeds bound of " + std::to_string(bound) +
                                 " candidate assignments",
                             bound);

  // Odometer over per-object sieve subsets; the maximal sieve is always in.
  std::vector<std::vector<std::vector<std::size_t>>> choices(n);
  for (std::size_t x = 0; x < n; ++x) {
    std::vector<std::size_t> optional;
    for (std::size_t i = 0; i < all[x].size(); ++i)
      if (i != top_at[x]) optional.push_back(i);
    const std::size_t k = optional.size();
    for (std::size_t mask = 0; mask < (std::size_t{1} << k); ++mask) {
      std::vector<std::size_t> pick{top_at[x]};
      for (std::size_t i = 0; i < k; ++i)
        if (mask & (std::size_t{1} << i)) pick.push_back(optional[i]);
      std::sort(pick.begin(), pick.end());
      choices[x].push_back(std::move(pick));
    }
  }

  std::vector<GrothendieckTopology> out;
  std::vector<std::size_t> odo(n, 0);
  while (true) {
    GrothendieckTopology J;
    J.covers.resize(n);
    for (std::size_t x = 0; x < n; ++x)
      for (auto i : choices[x][odo[x]]) J.covers[x].push_back(all[x][i]);
    if (validate_topology(C, J).overall()) out.push_back(std::move(J));
    std::size_t x = 0;
    while (x < n && ++odo[x] == choices[x].size()) odo[x++] = 0;
    if (x == n) break;
  }
  return out;
}

GrothendieckTopology smallest_topology(const FinCategory& C) {
  GrothendieckTopology J;
  J.covers.resize(C.n_obj());
  for (std::size_t x = 0; x < C.n_obj(); ++x)
    J.covers[x].push_back(maximal_sieve(C, static_cast<int>(x)));
  return J;
}

nlohmann::json sieve_to_json(const FinCategory& C, const Sieve& s) {
  nlohmann::json members = nlohmann::json::array();
  for (std::size_t f = s.members.first(); f != npos; f = s.members.next(f))
    members.push_back(C.mor[f].id);
  return nlohmann::json{{"at", C.objects[s.at]}, {"members", std::move(members)}};
}

}  // namespace qcrib
