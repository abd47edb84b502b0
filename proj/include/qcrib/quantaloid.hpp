#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qcrib/category.hpp"
#include "qcrib/lattice.hpp"
#include "qcrib/report.hpp"

namespace qcrib {

/// A finite quantaloid: complete-lattice homs with join-preserving
/// composition. hom(x,y) holds the arrows x -> y and lives at index
/// x * n_obj + y; composition tables are total.
class FinQuantaloid {
 public:
  std::vector<std::string> objects;   // sorted
  std::vector<FinLattice> hom;        // n*n, finalized
  std::vector<std::uint32_t> identity;  // per object, element of hom(x,x)
  // comp[(x*n + y)*n + z][a * |hom(y,z)| + b] = b∘a for a: x->y, b: y->z.
  std::vector<std::vector<std::uint32_t>> comp;

  std::size_t n_obj() const { return objects.size(); }
  int object_index(std::string_view id) const;

  const FinLattice& at(int x, int y) const { return hom[static_cast<std::size_t>(x) * n_obj() + y]; }
  FinLattice& at(int x, int y) { return hom[static_cast<std::size_t>(x) * n_obj() + y]; }

  /// b∘a for a in hom(x,y), b in hom(y,z).
  std::uint32_t then(int x, int y, int z, std::uint32_t a, std::uint32_t b) const {
    const auto& t = comp[(static_cast<std::size_t>(x) * n_obj() + y) * n_obj() + z];
    return t[static_cast<std::size_t>(a) * at(y, z).size() + b];
  }

  void init_tables() { comp.assign(n_obj() * n_obj() * n_obj(), {}); }
  std::vector<std::uint32_t>& table(int x, int y, int z) {
    return comp[(static_cast<std::size_t>(x) * n_obj() + y) * n_obj() + z];
  }
};

/// Identity-on-objects contravariant involution, one bijection per hom.
struct Involution {
  // op[x*n + y][a] in hom(y,x)
  std::vector<std::vector<std::uint32_t>> op;

  std::uint32_t of(const FinQuantaloid& Q, int x, int y, std::uint32_t a) const {
    return op[static_cast<std::size_t>(x) * Q.n_obj() + y][a];
  }

  static Involution identity_on_elements(const FinQuantaloid& Q);

  friend bool operator==(const Involution& a, const Involution& b) { return a.op == b.op; }
};

/// A left adjoint of Q together with its (unique) right adjoint.
struct MapMor {
  int src = -1, dst = -1;
  std::uint32_t elt = 0, star = 0;
  std::string id;
};

/// The category Map(Q) plus the adjoint table.
struct MapsResult {
  FinCategory cat;
  std::vector<MapMor> maps;        // aligned with cat.mor
  // by_hom[x*n + y] lists indices into `maps` of the left adjoints x -> y.
  std::vector<std::vector<std::size_t>> by_hom;
};

enum class Property {
  locally_localic,
  map_discrete,
  weakly_tabular,
  map_tabular,
  weakly_modular,
  modular,
  tabular,
};

const char* property_name(Property p);
std::optional<Property> property_from_name(std::string_view name);

struct PropertyVerdict {
  Property property;
  bool verdict = false;
  nlohmann::json witness;  // null iff verdict true

  Check to_check() const { return {property_name(property), verdict, witness, nullptr, 0.0}; }
};

/// Sup-enrichment of the whole structure: hom lattices, unit laws,
/// associativity, join preservation in each variable (binary + empty).
CheckReport validate_quantaloid(const FinQuantaloid& Q);

/// The unique g with 1 <= g∘f and f∘g <= 1, if any. Two candidates would
/// contradict antisymmetry and raise InternalConsistencyError.
std::optional<std::uint32_t> right_adjoint(const FinQuantaloid& Q, int x, int y, std::uint32_t f);

/// Objects of Q with the left adjoints as morphisms.
MapsResult maps_category(const FinQuantaloid& Q);

/// Decides one Definition-style property by exhaustive quantification.
/// `inv` is required for modular/tabular and ignored otherwise.
PropertyVerdict check_property(const FinQuantaloid& Q, Property p, const Involution* inv = nullptr);

CheckReport validate_involution(const FinQuantaloid& Q, const Involution& inv);

/// Karoubi envelope: objects are the idempotent endo-arrows of Q.
/// Completion object ids are "<object>@<idempotent>".
FinQuantaloid split_idempotent_completion(const FinQuantaloid& Q);

/// hom(x,y) = powerset of C(x,y); composition elementwise. The involution
/// (elementwise inverse) is available iff C is a groupoid.
FinQuantaloid free_quantaloid(const FinCategory& C);
Involution free_quantaloid_involution(const FinCategory& C, const FinQuantaloid& Q);

}  // namespace qcrib
