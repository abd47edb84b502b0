// Command-line front end: validation, construction and law checking for
// finite sites, cribles and quantaloids. Exit codes: 0 all checks passed,
// 1 a check failed (report emitted), 2 malformed input, resource bound or
// usage error.

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "qcrib/characterisation.hpp"
#include "qcrib/errors.hpp"
#include "qcrib/fixtures.hpp"
#include "qcrib/io.hpp"
#include "qcrib/matr.hpp"
#include "qcrib/nucleus.hpp"
#include "qcrib/parallel.hpp"

using namespace qcrib;

namespace {

struct Options {
  std::string format = "text";
  std::size_t bound = 1u << 14;
  std::uint64_t seed = 0;
  std::string parallel = "off";
};

void emit(const Options& opt, const CheckReport& rep) {
  if (opt.format == "json")
    std::cout << rep.to_json().dump(2) << '\n';
  else
    std::cout << "subject: " << rep.subject << '\n' << rep.to_text();
}

int finish(const Options& opt, const CheckReport& rep) {
  emit(opt, rep);
  return rep.overall() ? 0 : 1;
}

std::string dir_of(const std::string& path) {
  auto slash = path.find_last_of('/');
  return slash == std::string::npos ? std::string(".") : path.substr(0, slash);
}

QuantaloidData load_quantaloid(const std::string& path) {
  nlohmann::json j = load_json_file(path);
  if (detect_kind(j) != FileKind::quantaloid)
    throw MalformedInputError("'" + path + "' is not a quantaloid file");
  return parse_quantaloid(j);
}

SiteData load_site(const std::string& path) {
  nlohmann::json j = load_json_file(path);
  if (detect_kind(j) != FileKind::site)
    throw MalformedInputError("'" + path + "' is not a site file");
  return parse_site(j, dir_of(path));
}

CheckReport validate_site(const SiteData& site) {
  CheckReport rep = validate_category(site.category);
  if (rep.overall()) rep.append(validate_topology(site.category, site.topology));
  return rep;
}

int cmd_validate(const Options& opt, const std::string& path) {
  nlohmann::json j = load_json_file(path);
  CheckReport rep;
  switch (detect_kind(j)) {
    case FileKind::category:
      rep = validate_category(parse_category(j));
      break;
    case FileKind::site:
      rep = validate_site(parse_site(j, dir_of(path)));
      break;
    case FileKind::quantaloid: {
      QuantaloidData data = parse_quantaloid(j);
      rep = prepare_quantaloid(data);
      break;
    }
  }
  rep.subject = path;
  return finish(opt, rep);
}

int cmd_axioms(const Options& opt, const std::string& path) {
  QuantaloidData data = load_quantaloid(path);
  CheckReport rep = finalize_hom_lattices(data);
  rep.subject = path;
  if (!rep.overall()) return finish(opt, rep);
  for (Property p : {Property::locally_localic, Property::map_discrete, Property::weakly_tabular,
                     Property::weakly_modular})
    rep.checks.push_back(timed_check([&] { return check_property(data.quantaloid, p).to_check(); }));
  return finish(opt, rep);
}

nlohmann::json hom_sizes(const FinQuantaloid& Q) {
  nlohmann::json sizes = nlohmann::json::object();
  for (std::size_t x = 0; x < Q.n_obj(); ++x)
    for (std::size_t y = 0; y < Q.n_obj(); ++y)
      sizes[Q.objects[x] + "|" + Q.objects[y]] =
          Q.at(static_cast<int>(x), static_cast<int>(y)).size();
  return sizes;
}

int cmd_build_rc(const Options& opt, const std::string& path) {
  nlohmann::json j = load_json_file(path);
  if (detect_kind(j) != FileKind::category)
    throw MalformedInputError("'" + path + "' is not a category file");
  FinCategory C = parse_category(j);
  CheckReport rep = validate_category(C);
  rep.subject = path;
  if (!rep.overall()) return finish(opt, rep);
  CribleModel M = build_rc(C, opt.bound);
  rep.append(validate_quantaloid(M.Q));
  rep.append(validate_involution(M.Q, M.reversal));
  if (rep.overall()) rep.checks.back().info = {{"hom_sizes", hom_sizes(M.Q)}};
  return finish(opt, rep);
}

int cmd_build_rcj(const Options& opt, const std::string& path) {
  SiteData site = load_site(path);
  CheckReport rep = validate_site(site);
  rep.subject = path;
  if (!rep.overall()) return finish(opt, rep);
  Rcj r = build_rcj(site.category, site.topology, opt.bound);
  rep.append(validate_quantaloid(r.quo.Q));
  rep.append(validate_involution(r.quo.Q, r.involution));
  if (rep.overall()) rep.checks.back().info = {{"hom_sizes", hom_sizes(r.quo.Q)}};
  return finish(opt, rep);
}

int cmd_map(const Options& opt, const std::string& path) {
  QuantaloidData data = load_quantaloid(path);
  CheckReport rep = prepare_quantaloid(data);
  rep.subject = path;
  if (!rep.overall()) return finish(opt, rep);
  MapsResult maps = maps_category(data.quantaloid);
  Check& c = rep.add("maps-category", validate_category(maps.cat).overall());
  nlohmann::json adjoints = nlohmann::json::object();
  for (const MapMor& m : maps.maps)
    adjoints[m.id] = {{"left", data.quantaloid.at(m.src, m.dst).id(m.elt)},
                      {"right", data.quantaloid.at(m.dst, m.src).id(m.star)}};
  c.info = {{"category", category_to_json(maps.cat)}, {"adjoints", adjoints}};
  return finish(opt, rep);
}

int cmd_derive_topology(const Options& opt, const std::string& path) {
  QuantaloidData data = load_quantaloid(path);
  CheckReport rep = prepare_quantaloid(data);
  rep.subject = path;
  if (!rep.overall()) return finish(opt, rep);
  const FinQuantaloid& Q = data.quantaloid;
  bool axioms = true;
  for (Property p : {Property::locally_localic, Property::map_discrete, Property::weakly_tabular,
                     Property::weakly_modular}) {
    PropertyVerdict v = check_property(Q, p);
    rep.checks.push_back(v.to_check());
    axioms = axioms && v.verdict;
  }
  // The covers are computed either way; without the axioms they may fail
  // the topology laws, which the next check reports.
  MapsResult maps = maps_category(Q);
  GrothendieckTopology J = derive_topology(Q, maps);
  rep.append(validate_topology(maps.cat, J));
  rep.checks.back().info = {{"covers", topology_to_json(maps.cat, J)}, {"axioms_hold", axioms}};
  return finish(opt, rep);
}

int cmd_roundtrip(const Options& opt, const std::string& path) {
  QuantaloidData data = load_quantaloid(path);
  CheckReport rep = prepare_quantaloid(data);
  rep.subject = path;
  if (!rep.overall()) return finish(opt, rep);
  RoundtripResult r = roundtrip(data.quantaloid, opt.bound);
  rep.append(r.report);
  if (r.iso) {
    Check& c = rep.add("iso", true);
    c.info = {{"status", "certified"},
              {"topology", topology_to_json(r.ctx->maps.cat, *r.topology)},
              {"witness", r.iso->to_json(data.quantaloid, *r.rcj)}};
  }
  if (opt.format != "json")
    std::cout << (r.iso ? "iso: certified\n" : "iso: not attempted (an axiom failed)\n");
  return finish(opt, rep);
}

int cmd_subcanonical(const Options& opt, const std::string& path) {
  SiteData site = load_site(path);
  CheckReport rep = validate_site(site);
  rep.subject = path;
  if (!rep.overall()) return finish(opt, rep);
  rep.append(check_subcanonical(site.category, site.topology, opt.bound));
  return finish(opt, rep);
}

int cmd_canonical(const Options& opt, const std::string& path) {
  SiteData site = load_site(path);
  CheckReport rep = validate_site(site);
  rep.subject = path;
  if (!rep.overall()) return finish(opt, rep);
  rep.append(check_canonical(site.category, site.topology, opt.bound));
  return finish(opt, rep);
}

int cmd_split_check(const Options& opt, const std::string& path) {
  QuantaloidData data = load_quantaloid(path);
  CheckReport rep = prepare_quantaloid(data);
  rep.subject = path;
  if (!rep.overall()) return finish(opt, rep);
  rep.append(check_coreflexives_split(data.quantaloid));
  return finish(opt, rep);
}

int cmd_matr_check(const Options& opt, const std::string& path, std::size_t size_bound) {
  QuantaloidData data = load_quantaloid(path);
  CheckReport rep = finalize_hom_lattices(data);
  rep.subject = path;
  if (!rep.overall()) return finish(opt, rep);
  Involution inv;
  if (data.involution) {
    inv = *data.involution;
    rep.add("involution-source", true).info = "file";
  } else {
    inv = derived_involution(data.quantaloid);
    rep.add("involution-source", true).info = "derived";
  }
  MatrOptions mo;
  mo.size_bound = size_bound;
  mo.seed = opt.seed;
  rep.append(check_matr_modular(data.quantaloid, inv, mo));
  return finish(opt, rep);
}

int cmd_fixtures(const std::string& dir) {
  const std::string d = dir.empty() ? "." : dir;
  std::filesystem::create_directories(d);
  write_json_file(d + "/terminal.category.json", category_to_json(fixtures::terminal_category()));
  write_json_file(d + "/c_cospan.category.json", category_to_json(fixtures::cospan_category()));
  write_json_file(d + "/g2.category.json", category_to_json(fixtures::g2_category()));
  {
    FinQuantaloid Q = fixtures::l3_quantale();
    Involution inv = Involution::identity_on_elements(Q);
    write_json_file(d + "/l3.quantaloid.json", quantaloid_to_json(Q, &inv));
  }
  write_json_file(d + "/l3_si.quantaloid.json", quantaloid_to_json(fixtures::l3_si()));
  {
    FinQuantaloid Q = fixtures::m3_meet_quantale();
    Involution inv = Involution::identity_on_elements(Q);
    write_json_file(d + "/m3_meet.quantaloid.json", quantaloid_to_json(Q, &inv));
  }
  for (const char* name : {"terminal.category.json", "c_cospan.category.json", "g2.category.json",
                           "l3.quantaloid.json", "l3_si.quantaloid.json", "m3_meet.quantaloid.json"})
    std::cout << d << "/" << name << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"finite sites, cribles and quantaloids: constructions and law checks"};
  app.require_subcommand(1);

  Options opt;
  if (const char* env = std::getenv("QCRIB_BOUND")) opt.bound = std::strtoull(env, nullptr, 10);
  app.add_option("--format", opt.format, "report format")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();
  app.add_option("--bound", opt.bound, "global enumeration bound")->capture_default_str();
  app.add_option("--seed", opt.seed, "seed for randomized matrix sampling")->capture_default_str();
  app.add_option("--parallel", opt.parallel, "fan independent checks out over threads")
      ->check(CLI::IsMember({"on", "off"}))
      ->capture_default_str();

  std::string file;
  std::size_t size_bound = 2;
  std::string fixtures_dir = ".";

  auto* validate = app.add_subcommand("validate", "validate a category, site or quantaloid file");
  validate->add_option("file", file)->required();
  auto* axioms = app.add_subcommand("axioms", "check the four closed-crible axioms");
  axioms->add_option("file", file)->required();
  auto* build_rc_cmd = app.add_subcommand("build-rc", "build and validate the crible quantaloid");
  build_rc_cmd->add_option("file", file)->required();
  auto* build_rcj_cmd = app.add_subcommand("build-rcj", "build R(C,J) from a site");
  build_rcj_cmd->add_option("file", file)->required();
  auto* map_cmd = app.add_subcommand("map", "the category of left adjoints with its adjoint table");
  map_cmd->add_option("file", file)->required();
  auto* derive = app.add_subcommand("derive-topology", "the covers induced on the left adjoints");
  derive->add_option("file", file)->required();
  auto* rt = app.add_subcommand("roundtrip", "axioms, derived site and isomorphism certificate");
  rt->add_option("file", file)->required();
  auto* subc = app.add_subcommand("subcanonical", "sheaf condition for representables on a site");
  subc->add_option("file", file)->required();
  auto* canon = app.add_subcommand("canonical", "largest-subcanonical check against enumeration");
  canon->add_option("file", file)->required();
  auto* split = app.add_subcommand("split-check", "do all coreflexive arrows split");
  split->add_option("file", file)->required();
  auto* matr = app.add_subcommand("matr-check", "modular law over typed matrices");
  matr->add_option("file", file)->required();
  matr->add_option("--size-bound", size_bound, "largest typed-set size")->capture_default_str();
  auto* fix = app.add_subcommand("fixtures", "write the built-in instances to files");
  fix->add_option("--dir", fixtures_dir, "output directory")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    app.exit(e);
    return 2;
  }

  set_parallel(opt.parallel == "on");

  try {
    if (*validate) return cmd_validate(opt, file);
    if (*axioms) return cmd_axioms(opt, file);
    if (*build_rc_cmd) return cmd_build_rc(opt, file);
    if (*build_rcj_cmd) return cmd_build_rcj(opt, file);
    if (*map_cmd) return cmd_map(opt, file);
    if (*derive) return cmd_derive_topology(opt, file);
    if (*rt) return cmd_roundtrip(opt, file);
    if (*subc) return cmd_subcanonical(opt, file);
    if (*canon) return cmd_canonical(opt, file);
    if (*split) return cmd_split_check(opt, file);
    if (*matr) return cmd_matr_check(opt, file, size_bound);
    if (*fix) return cmd_fixtures(fixtures_dir);
  } catch (const ResourceBoundError& e) {
    std::cerr << "resource bound: " << e.what() << '\n';
    return 2;
  } catch (const MalformedInputError& e) {
    std::cerr << "malformed input: " << e.what() << '\n';
    return 2;
  } catch (const ArgumentError& e) {
    std::cerr << "argument error: " << e.what() << '\n';
    return 2;
  } catch (const InternalConsistencyError& e) {
    std::cerr << "internal consistency error (please report): " << e.what() << '\n';
    return 2;
  }
  return 2;
}
