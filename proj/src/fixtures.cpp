#include "qcrib/fixtures.hpp"

#include "qcrib/errors.hpp"

namespace qcrib {
namespace fixtures {

namespace {

/// One-object quantaloid with composition = meet and identity = top.
FinQuantaloid meet_quantale(std::vector<std::string> ids,
                            const std::vector<std::pair<std::string, std::string>>& leq) {
  FinQuantaloid Q;
  Q.objects = {"*"};
  FinLattice L = FinLattice::from_leq(std::move(ids), leq);
  if (auto bad = L.finalize())
    throw InternalConsistencyError("fixture lattice invalid: " + bad->witness.dump());
  const std::uint32_t k = static_cast<std::uint32_t>(L.size());
  Q.identity = {L.top()};
  Q.init_tables();
  auto& t = Q.table(0, 0, 0);
  t.resize(static_cast<std::size_t>(k) * k);
  for (std::uint32_t a = 0; a < k; ++a)
    for (std::uint32_t b = 0; b < k; ++b) t[static_cast<std::size_t>(a) * k + b] = L.meet2(a, b);
  Q.hom.push_back(std::move(L));
  return Q;
}

}  // namespace

FinCategory terminal_category() {
  return FinCategory::make({"*"}, {{"id", "*", "*"}}, {{"*", "id"}}, {});
}

FinCategory cospan_category() {
  return FinCategory::make(
      {"X", "Y", "Z"},
      {{"f", "X", "Z"}, {"g", "Y", "Z"}, {"idX", "X", "X"}, {"idY", "Y", "Y"}, {"idZ", "Z", "Z"}},
      {{"X", "idX"}, {"Y", "idY"}, {"Z", "idZ"}}, {});
}

FinCategory g2_category() {
  return FinCategory::make({"*"}, {{"e", "*", "*"}, {"s", "*", "*"}}, {{"*", "e"}},
                           {{{"s", "s", "e"}}});
}

FinQuantaloid l3_quantale() {
  return meet_quantale({"0", "m", "1"},
                       {{"0", "0"}, {"0", "m"}, {"0", "1"}, {"m", "m"}, {"m", "1"}, {"1", "1"}});
}

FinQuantaloid two_chain_quantale() {
  return meet_quantale({"0", "1"}, {{"0", "0"}, {"0", "1"}, {"1", "1"}});
}

FinQuantaloid m3_meet_quantale() {
  return meet_quantale({"0", "a", "b", "c", "1"},
                       {{"0", "0"},
                        {"a", "a"},
                        {"b", "b"},
                        {"c", "c"},
                        {"1", "1"},
                        {"0", "a"},
                        {"0", "b"},
                        {"0", "c"},
                        {"0", "1"},
                        {"a", "1"},
                        {"b", "1"},
                        {"c", "1"}});
}

FinQuantaloid l3_si() { return split_idempotent_completion(l3_quantale()); }

FinLattice m3_lattice() {
  FinLattice L = FinLattice::from_leq({"0", "a", "b", "c", "1"},
                                      {{"0", "0"},
                                       {"a", "a"},
                                       {"b", "b"},
                                       {"c", "c"},
                                       {"1", "1"},
                                       {"0", "a"},
                                       {"0", "b"},
                                       {"0", "c"},
                                       {"0", "1"},
                                       {"a", "1"},
                                       {"b", "1"},
                                       {"c", "1"}});
  if (auto bad = L.finalize())
    throw InternalConsistencyError("fixture lattice invalid: " + bad->witness.dump());
  return L;
}

}  // namespace fixtures
}  // namespace qcrib
