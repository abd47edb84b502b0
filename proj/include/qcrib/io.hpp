#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "qcrib/category.hpp"
#include "qcrib/quantaloid.hpp"

namespace qcrib {

enum class FileKind { category, site, quantaloid };

struct SiteData {
  FinCategory category;
  GrothendieckTopology topology;
};

struct QuantaloidData {
  FinQuantaloid quantaloid;
  std::optional<Involution> involution;
};

/// Schema detection by structure: "covers" => site, "homs" => quantaloid,
/// "morphisms" => category. Throws MalformedInputError otherwise.
FileKind detect_kind(const nlohmann::json& j);

/// Strict parsers. Structural problems (duplicate ids, dangling
/// references, non-closed sieves, partial tables) throw
/// MalformedInputError; semantic law violations are left to the
/// validators. `base_dir` resolves a site's "category" path reference.
/// Quantaloid hom lattices must satisfy the lattice axioms (the tables
/// are needed to represent composition at all); violations throw with
/// the offending axiom in the message.
FinCategory parse_category(const nlohmann::json& j);
SiteData parse_site(const nlohmann::json& j, const std::string& base_dir = ".");

/// Hom lattices come back unfinalized; run `prepare_quantaloid` before
/// using lattice operations on them.
QuantaloidData parse_quantaloid(const nlohmann::json& j);

/// Validates and finalizes every hom lattice. Property checkers and the
/// Matr scan only need this much; they evaluate on the tables as given.
CheckReport finalize_hom_lattices(QuantaloidData& data);

/// finalize_hom_lattices, then the Sup-enrichment laws and the involution
/// when present. One line per stage; stops at the first failed stage.
CheckReport prepare_quantaloid(QuantaloidData& data);

nlohmann::json category_to_json(const FinCategory& C);
nlohmann::json site_to_json(const FinCategory& C, const GrothendieckTopology& J);
nlohmann::json quantaloid_to_json(const FinQuantaloid& Q, const Involution* inv = nullptr);
nlohmann::json topology_to_json(const FinCategory& C, const GrothendieckTopology& J);

nlohmann::json load_json_file(const std::string& path);
void write_json_file(const std::string& path, const nlohmann::json& j);

}  // namespace qcrib
