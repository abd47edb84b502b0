#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qcrib/errors.hpp"
#include "qcrib/fixtures.hpp"
#include "qcrib/lattice.hpp"

using namespace qcrib;

namespace {

FinLattice chain2() {
  FinLattice L = FinLattice::from_leq({"0", "1"}, {{"0", "0"}, {"0", "1"}, {"1", "1"}});
  REQUIRE_FALSE(L.finalize());
  return L;
}

FinLattice powerset2() {
  // Subsets of a 2-set: {} < {a},{b} < {a,b}.
  FinLattice L = FinLattice::from_leq(
      {"00", "01", "10", "11"},
      {{"00", "00"}, {"01", "01"}, {"10", "10"}, {"11", "11"},
       {"00", "01"}, {"00", "10"}, {"00", "11"}, {"01", "11"}, {"10", "11"}});
  REQUIRE_FALSE(L.finalize());
  return L;
}

}  // namespace

TEST_CASE("two-chain validates and has the expected bounds") {
  FinLattice L = chain2();
  CHECK(validate_lattice(L).overall());
  CHECK(L.id(L.bottom()) == "0");
  CHECK(L.id(L.top()) == "1");
  CHECK(L.join_all(std::span<const std::uint32_t>{}) == L.bottom());
  CHECK(L.meet_all(std::span<const std::uint32_t>{}) == L.top());
}

TEST_CASE("missing reflexivity is reported with the offending element") {
  FinLattice L = FinLattice::from_leq({"x", "y"}, {{"x", "x"}, {"x", "y"}, {"y", "y"}});
  CHECK(validate_lattice(L).overall());
  FinLattice broken = FinLattice::from_leq({"x", "y"}, {{"x", "x"}, {"x", "y"}});
  CheckReport rep = validate_lattice(broken);
  CHECK_FALSE(rep.overall());
  CHECK(rep.checks[0].witness["axiom"] == "reflexivity");
  CHECK(rep.checks[0].witness["element"] == "y");
}

TEST_CASE("duplicate element ids are malformed input") {
  CHECK_THROWS_AS(FinLattice::from_leq({"a", "a"}, {}), MalformedInputError);
}

TEST_CASE("M3 is a valid lattice") {
  FinLattice L = fixtures::m3_lattice();
  CHECK(validate_lattice(L).overall());

  SUBCASE("join of two atoms is the top, by upper-bound scan") {
    // Oracle: scan all upper bounds of {a,b} and pick the least.
    std::uint32_t a = L.index_of("a"), b = L.index_of("b");
    std::vector<std::uint32_t> ubs;
    for (std::uint32_t c = 0; c < L.size(); ++c)
      if (L.leq(a, c) && L.leq(b, c)) ubs.push_back(c);
    std::uint32_t least = ubs[0];
    for (auto u : ubs)
      if (L.leq(u, least)) least = u;
    CHECK(least == L.index_of("1"));
    CHECK(L.join2(a, b) == least);
  }
}

TEST_CASE("a poset missing a join is rejected") {
  // Two incomparable tops: {a, b} above 0, no common upper bound.
  FinLattice L = FinLattice::from_leq({"0", "a", "b"},
                                      {{"0", "0"}, {"a", "a"}, {"b", "b"}, {"0", "a"}, {"0", "b"}});
  CheckReport rep = validate_lattice(L);
  CHECK_FALSE(rep.overall());
  CHECK(rep.checks[0].witness["axiom"] == "join-exists");
}

TEST_CASE("distributivity: chains and boolean algebras pass, M3 fails") {
  CHECK(distributivity_check(chain2()).verdict);
  FinLattice L3 = FinLattice::from_leq(
      {"0", "1", "m"},
      {{"0", "0"}, {"m", "m"}, {"1", "1"}, {"0", "m"}, {"0", "1"}, {"m", "1"}});
  REQUIRE_FALSE(L3.finalize());
  CHECK(distributivity_check(L3).verdict);
  CHECK(distributivity_check(powerset2()).verdict);

  FinLattice M3 = fixtures::m3_lattice();
  Check c = distributivity_check(M3);
  CHECK_FALSE(c.verdict);
  // Witness must be three distinct atoms.
  auto w = c.witness["elements"];
  CHECK(w.size() == 3);
  for (const auto& e : w) {
    CHECK(e != "0");
    CHECK(e != "1");
  }
  CHECK(w[0] != w[1]);
  CHECK(w[1] != w[2]);
  CHECK(w[0] != w[2]);
}

TEST_CASE("join and meet are idempotent, commutative, associative") {
  for (const FinLattice& L : {chain2(), powerset2(), fixtures::m3_lattice()}) {
    const std::uint32_t n = static_cast<std::uint32_t>(L.size());
    for (std::uint32_t a = 0; a < n; ++a) {
      CHECK(L.join2(a, a) == a);
      CHECK(L.meet2(a, a) == a);
      for (std::uint32_t b = 0; b < n; ++b) {
        CHECK(L.join2(a, b) == L.join2(b, a));
        CHECK(L.meet2(a, b) == L.meet2(b, a));
        for (std::uint32_t c = 0; c < n; ++c) {
          CHECK(L.join2(a, L.join2(b, c)) == L.join2(L.join2(a, b), c));
          CHECK(L.meet2(a, L.meet2(b, c)) == L.meet2(L.meet2(a, b), c));
        }
      }
    }
  }
}

TEST_CASE("binary distributivity agrees with the infinite law on small lattices") {
  // For every subset S and element a: a /\ \/S = \/{a /\ s}.
  auto infinite_law = [](const FinLattice& L) {
    const std::uint32_t n = static_cast<std::uint32_t>(L.size());
    for (std::uint32_t a = 0; a < n; ++a)
      for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
        std::vector<std::uint32_t> subset, met;
        for (std::uint32_t s = 0; s < n; ++s)
          if (mask & (std::uint64_t{1} << s)) {
            subset.push_back(s);
            met.push_back(L.meet2(a, s));
          }
        if (L.meet2(a, L.join_all(subset)) != L.join_all(met)) return false;
      }
    return true;
  };
  for (const FinLattice& L : {chain2(), powerset2(), fixtures::m3_lattice()}) {
    CHECK(infinite_law(L) == distributivity_check(L).verdict);
  }
}

TEST_CASE("unknown elements raise") {
  CHECK_THROWS_AS(chain2().index_of("missing"), UnknownElementError);
}
