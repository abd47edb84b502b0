#include "qcrib/io.hpp"

#include <algorithm>
#include <fstream>

#include "qcrib/errors.hpp"

namespace qcrib {

namespace {

const nlohmann::json& field(const nlohmann::json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) throw MalformedInputError(std::string("missing field '") + key + "'");
  return *it;
}

std::string str(const nlohmann::json& j, const char* what) {
  if (!j.is_string()) throw MalformedInputError(std::string(what) + " must be a string");
  return j.get<std::string>();
}

}  // namespace

FileKind detect_kind(const nlohmann::json& j) {
  if (!j.is_object()) throw MalformedInputError("input must be a JSON object");
  if (j.contains("covers")) return FileKind::site;
  if (j.contains("homs")) return FileKind::quantaloid;
  if (j.contains("morphisms")) return FileKind::category;
  throw MalformedInputError("cannot tell a category, site or quantaloid file from the keys");
}

FinCategory parse_category(const nlohmann::json& j) {
  std::vector<std::string> objects;
  for (const auto& o : field(j, "objects")) objects.push_back(str(o, "object id"));
  std::vector<FinCategory::MorSpec> mors;
  for (const auto& m : field(j, "morphisms"))
    mors.push_back({str(field(m, "id"), "morphism id"), str(field(m, "dom"), "dom"),
                    str(field(m, "cod"), "cod")});
  std::vector<std::pair<std::string, std::string>> identities;
  for (const auto& [obj, mid] : field(j, "identities").items())
    identities.emplace_back(obj, str(mid, "identity morphism"));
  std::vector<std::array<std::string, 3>> comp;
  if (j.contains("composition"))
    for (const auto& e : j["composition"]) {
      if (!e.is_array() || e.size() != 3)
        throw MalformedInputError("composition entries must be [g, f, gf] triples");
      comp.push_back({str(e[0], "g"), str(e[1], "f"), str(e[2], "gf")});
    }
  return FinCategory::make(std::move(objects), mors, identities, comp);
}

SiteData parse_site(const nlohmann::json& j, const std::string& base_dir) {
  const nlohmann::json& cat = field(j, "category");
  SiteData out;
  if (cat.is_string())
    out.category = parse_category(load_json_file(base_dir + "/" + cat.get<std::string>()));
  else
    out.category = parse_category(cat);

  const FinCategory& C = out.category;
  out.topology.covers.resize(C.n_obj());
  for (const auto& [obj, sieves] : field(j, "covers").items()) {
    const int x = C.object_index(obj);
    for (const auto& s : sieves) {
      Sieve sieve{x, Bitset(C.n_mor())};
      for (const auto& m : s) sieve.members.set(C.morphism_index(str(m, "sieve member")));
      std::string why;
      if (!is_sieve(C, sieve, &why))
        throw MalformedInputError("covers of '" + obj + "' contain a non-sieve: " + why);
      out.topology.covers[x].push_back(std::move(sieve));
    }
    std::sort(out.topology.covers[x].begin(), out.topology.covers[x].end(),
              [](const Sieve& a, const Sieve& b) { return a.members < b.members; });
  }
  return out;
}

QuantaloidData parse_quantaloid(const nlohmann::json& j) {
  QuantaloidData out;
  FinQuantaloid& Q = out.quantaloid;
  for (const auto& o : field(j, "objects")) Q.objects.push_back(str(o, "object id"));
  std::sort(Q.objects.begin(), Q.objects.end());
  if (std::adjacent_find(Q.objects.begin(), Q.objects.end()) != Q.objects.end())
    throw MalformedInputError("duplicate object ids");
  const int n = static_cast<int>(Q.n_obj());
  Q.hom.resize(static_cast<std::size_t>(n) * n);

  std::vector<bool> have(static_cast<std::size_t>(n) * n, false);
  for (const auto& [key, homj] : field(j, "homs").items()) {
    auto bar = key.find('|');
    if (bar == std::string::npos) throw MalformedInputError("hom keys must look like 'X|Y'");
    const int x = Q.object_index(key.substr(0, bar));
    const int y = Q.object_index(key.substr(bar + 1));
    std::vector<std::string> ids;
    for (const auto& e : field(homj, "elements")) ids.push_back(str(e, "element id"));
    std::vector<std::pair<std::string, std::string>> leq;
    for (const auto& p : field(homj, "leq")) {
      if (!p.is_array() || p.size() != 2)
        throw MalformedInputError("leq entries must be [a, b] pairs");
      leq.emplace_back(str(p[0], "leq"), str(p[1], "leq"));
    }
    Q.at(x, y) = FinLattice::from_leq(std::move(ids), leq);
    have[static_cast<std::size_t>(x) * n + y] = true;
  }
  for (std::size_t i = 0; i < have.size(); ++i)
    if (!have[i])
      throw MalformedInputError("missing hom '" + Q.objects[i / n] + "|" + Q.objects[i % n] + "'");

  Q.identity.resize(n);
  for (const auto& [obj, elt] : field(j, "identities").items()) {
    const int x = Q.object_index(obj);
    Q.identity[x] = Q.at(x, x).index_of(str(elt, "identity element"));
  }
  if (field(j, "identities").size() != static_cast<std::size_t>(n))
    throw MalformedInputError("identities must name every object exactly once");

  Q.init_tables();
  for (const auto& entry : field(j, "composition")) {
    const std::string key = str(field(entry, "hom_pair"), "hom_pair");
    auto b1 = key.find('|');
    auto b2 = key.find('|', b1 == std::string::npos ? 0 : b1 + 1);
    if (b1 == std::string::npos || b2 == std::string::npos)
      throw MalformedInputError("hom_pair must look like 'X|Y|Z'");
    const int x = Q.object_index(key.substr(0, b1));
    const int y = Q.object_index(key.substr(b1 + 1, b2 - b1 - 1));
    const int z = Q.object_index(key.substr(b2 + 1));
    auto& t = Q.table(x, y, z);
    const std::size_t ny = Q.at(y, z).size();
    t.assign(Q.at(x, y).size() * ny, npos32);
    for (const auto& row : field(entry, "table")) {
      if (!row.is_array() || row.size() != 3)
        throw MalformedInputError("composition rows must be [f, g, gf] triples");
      const std::uint32_t a = Q.at(x, y).index_of(str(row[0], "f"));
      const std::uint32_t b = Q.at(y, z).index_of(str(row[1], "g"));
      const std::uint32_t c = Q.at(x, z).index_of(str(row[2], "gf"));
      t[static_cast<std::size_t>(a) * ny + b] = c;
    }
  }
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z) {
        const auto& t = Q.comp[(static_cast<std::size_t>(x) * n + y) * n + z];
        const std::size_t want = Q.at(x, y).size() * Q.at(y, z).size();
        if (t.size() != want)
          throw MalformedInputError("missing composition table for '" + Q.objects[x] + "|" +
                                    Q.objects[y] + "|" + Q.objects[z] + "'");
        for (auto v : t)
          if (v == npos32)
            throw MalformedInputError("incomplete composition table for '" + Q.objects[x] + "|" +
                                      Q.objects[y] + "|" + Q.objects[z] + "'");
      }

  if (j.contains("involution")) {
    Involution inv;
    inv.op.resize(static_cast<std::size_t>(n) * n);
    for (const auto& [key, table] : j["involution"].items()) {
      auto bar = key.find('|');
      if (bar == std::string::npos)
        throw MalformedInputError("involution keys must look like 'X|Y'");
      const int x = Q.object_index(key.substr(0, bar));
      const int y = Q.object_index(key.substr(bar + 1));
      auto& t = inv.op[static_cast<std::size_t>(x) * n + y];
      t.assign(Q.at(x, y).size(), npos32);
      for (const auto& row : table) {
        if (!row.is_array() || row.size() != 2)
          throw MalformedInputError("involution rows must be [q, q_op] pairs");
        t[Q.at(x, y).index_of(str(row[0], "q"))] = Q.at(y, x).index_of(str(row[1], "q_op"));
      }
    }
    for (std::size_t i = 0; i < inv.op.size(); ++i) {
      if (inv.op[i].size() != Q.hom[i].size())
        throw MalformedInputError("involution must cover every hom completely");
      for (auto v : inv.op[i])
        if (v == npos32) throw MalformedInputError("involution table is incomplete");
    }
    out.involution = std::move(inv);
  }
  return out;
}

CheckReport finalize_hom_lattices(QuantaloidData& data) {
  CheckReport rep;
  rep.subject = "quantaloid";
  FinQuantaloid& Q = data.quantaloid;
  const int n = static_cast<int>(Q.n_obj());
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      if (Q.at(x, y).finalized()) continue;
      if (auto bad = Q.at(x, y).finalize()) {
        bad->witness["hom"] = Q.objects[x] + "|" + Q.objects[y];
        rep.checks.push_back(*bad);
        return rep;
      }
    }
  rep.add("lattice-axioms", true);
  return rep;
}

CheckReport prepare_quantaloid(QuantaloidData& data) {
  CheckReport rep = finalize_hom_lattices(data);
  if (!rep.overall()) return rep;
  rep.append(validate_quantaloid(data.quantaloid));
  if (!rep.overall()) return rep;
  if (data.involution) rep.append(validate_involution(data.quantaloid, *data.involution));
  return rep;
}

nlohmann::json category_to_json(const FinCategory& C) {
  nlohmann::json objects = nlohmann::json::array();
  for (const auto& o : C.objects) objects.push_back(o);
  nlohmann::json mors = nlohmann::json::array();
  for (const auto& m : C.mor)
    mors.push_back({{"id", m.id}, {"dom", C.objects[m.dom]}, {"cod", C.objects[m.cod]}});
  nlohmann::json identities = nlohmann::json::object();
  for (std::size_t x = 0; x < C.n_obj(); ++x) identities[C.objects[x]] = C.mor[C.identity[x]].id;
  nlohmann::json comp = nlohmann::json::array();
  for (int g = 0; g < static_cast<int>(C.n_mor()); ++g)
    for (int f = 0; f < static_cast<int>(C.n_mor()); ++f) {
      if (!C.composable(g, f)) continue;
      if (g == C.identity[C.mor[f].cod] || f == C.identity[C.mor[g].dom]) continue;
      comp.push_back({C.mor[g].id, C.mor[f].id, C.mor[C.compose(g, f)].id});
    }
  return {{"objects", objects},
          {"morphisms", mors},
          {"identities", identities},
          {"composition", comp}};
}

nlohmann::json topology_to_json(const FinCategory& C, const GrothendieckTopology& J) {
  nlohmann::json covers = nlohmann::json::object();
  for (std::size_t x = 0; x < C.n_obj(); ++x) {
    nlohmann::json sieves = nlohmann::json::array();
    for (const auto& s : J.covers[x]) {
      nlohmann::json members = nlohmann::json::array();
      for (std::size_t f = s.members.first(); f != npos; f = s.members.next(f))
        members.push_back(C.mor[f].id);
      sieves.push_back(std::move(members));
    }
    covers[C.objects[x]] = std::move(sieves);
  }
  return covers;
}

nlohmann::json site_to_json(const FinCategory& C, const GrothendieckTopology& J) {
  return {{"category", category_to_json(C)}, {"covers", topology_to_json(C, J)}};
}

nlohmann::json quantaloid_to_json(const FinQuantaloid& Q, const Involution* inv) {
  const int n = static_cast<int>(Q.n_obj());
  nlohmann::json objects = nlohmann::json::array();
  for (const auto& o : Q.objects) objects.push_back(o);
  nlohmann::json homs = nlohmann::json::object();
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      const auto& H = Q.at(x, y);
      nlohmann::json elements = nlohmann::json::array();
      for (const auto& id : H.ids()) elements.push_back(id);
      nlohmann::json leq = nlohmann::json::array();
      for (std::uint32_t a = 0; a < H.size(); ++a)
        for (std::uint32_t b = 0; b < H.size(); ++b)
          if (H.leq(a, b)) leq.push_back({H.id(a), H.id(b)});
      homs[Q.objects[x] + "|" + Q.objects[y]] = {{"elements", elements}, {"leq", leq}};
    }
  nlohmann::json identities = nlohmann::json::object();
  for (int x = 0; x < n; ++x) identities[Q.objects[x]] = Q.at(x, x).id(Q.identity[x]);
  nlohmann::json comp = nlohmann::json::array();
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z) {
        nlohmann::json table = nlohmann::json::array();
        for (std::uint32_t a = 0; a < Q.at(x, y).size(); ++a)
          for (std::uint32_t b = 0; b < Q.at(y, z).size(); ++b)
            table.push_back(
                {Q.at(x, y).id(a), Q.at(y, z).id(b), Q.at(x, z).id(Q.then(x, y, z, a, b))});
        comp.push_back({{"hom_pair", Q.objects[x] + "|" + Q.objects[y] + "|" + Q.objects[z]},
                        {"table", table}});
      }
  nlohmann::json out{{"objects", objects},
                     {"homs", homs},
                     {"identities", identities},
                     {"composition", comp}};
  if (inv) {
    nlohmann::json invj = nlohmann::json::object();
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y) {
        nlohmann::json table = nlohmann::json::array();
        for (std::uint32_t a = 0; a < Q.at(x, y).size(); ++a)
          table.push_back({Q.at(x, y).id(a), Q.at(y, x).id(inv->of(Q, x, y, a))});
        invj[Q.objects[x] + "|" + Q.objects[y]] = std::move(table);
      }
    out["involution"] = std::move(invj);
  }
  return out;
}

nlohmann::json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw MalformedInputError("cannot open '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw MalformedInputError("invalid JSON in '" + path + "': " + e.what());
  }
  return j;
}

void write_json_file(const std::string& path, const nlohmann::json& j) {
  std::ofstream out(path);
  if (!out) throw MalformedInputError("cannot write '" + path + "'");
  out << j.dump(2) << '\n';
}

}  // namespace qcrib
