#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qcrib/errors.hpp"
#include "qcrib/fixtures.hpp"
#include "qcrib/nucleus.hpp"

using namespace qcrib;

TEST_CASE("built-in nuclei validate") {
  CribleModel M = build_rc(fixtures::g2_category());
  CHECK(validate_nucleus(M.Q, Nucleus::identity(M.Q), true).overall());
  CHECK(validate_nucleus(M.Q, Nucleus::all_to_top(M.Q), false).overall());
  CHECK(validate_nucleus(M.Q, Nucleus::all_to_top(M.Q), true).overall());

  SUBCASE("a non-monotone action is invalid") {
    // Send top to itself but everything else to top as well, except bottom
    // stays put: breaks monotonicity only if bottom <= x with j(x)=top... so
    // instead break extensivity: send top to bottom.
    Nucleus j = Nucleus::identity(M.Q);
    j.act[0][M.Q.at(0, 0).top()] = M.Q.at(0, 0).bottom();
    CheckReport rep = validate_nucleus(M.Q, j, false);
    CHECK_FALSE(rep.overall());
  }
}

TEST_CASE("the smallest topology induces the identity nucleus") {
  for (const FinCategory& C :
       {fixtures::terminal_category(), fixtures::g2_category(), fixtures::cospan_category()}) {
    CribleModel M = build_rc(C);
    Nucleus j = topology_to_nucleus(M, smallest_topology(C));
    CHECK(j == Nucleus::identity(M.Q));
  }
}

TEST_CASE("on G2, the empty-sieve topology closes everything to the top") {
  FinCategory G = fixtures::g2_category();
  CribleModel M = build_rc(G);
  auto all = enumerate_topologies(G);
  REQUIRE(all.size() == 2);
  // all[1] is the topology where the empty sieve also covers.
  REQUIRE(all[1].covers[0].size() == 2);
  Nucleus j = topology_to_nucleus(M, all[1]);
  CHECK(j == Nucleus::all_to_top(M.Q));
}

TEST_CASE("on C_cospan with {f,g} covering Z, the closure adds the diagonal") {
  FinCategory C = fixtures::cospan_category();
  CribleModel M = build_rc(C);
  const int z = C.object_index("Z");
  GrothendieckTopology J = smallest_topology(C);
  Sieve fg{z, Bitset(C.n_mor())};
  fg.members.set(C.morphism_index("f"));
  fg.members.set(C.morphism_index("g"));
  J.covers[z].push_back(fg);
  std::sort(J.covers[z].begin(), J.covers[z].end(),
            [](const Sieve& a, const Sieve& b) { return a.members < b.members; });
  REQUIRE(validate_topology(C, J).overall());

  Nucleus j = topology_to_nucleus(M, J);
  const auto& U = M.hom(z, z).universe;
  const int f = C.morphism_index("f"), g = C.morphism_index("g");
  const int idz = C.morphism_index("idZ");

  SUBCASE("the empty crible stays empty: no span has a vacuous cover") {
    Crible empty{z, z, Bitset(U.spans.size())};
    CHECK(j.of(M.Q, z, z, M.element_of(empty)) == M.element_of(empty));
  }
  SUBCASE("the closure of {(f,f),(g,g)} contains the identity span") {
    Crible diag{z, z, Bitset(U.spans.size())};
    diag.members.set(U.index_of({f, f}));
    diag.members.set(U.index_of({g, g}));
    Crible closed = M.crible_of(z, z, j.of(M.Q, z, z, M.element_of(diag)));
    CHECK(closed.members.test(U.index_of({idz, idz})));
  }
}

TEST_CASE("identity nucleus maps back to the smallest topology") {
  for (const FinCategory& C :
       {fixtures::terminal_category(), fixtures::g2_category(), fixtures::cospan_category()}) {
    CribleModel M = build_rc(C);
    CHECK(nucleus_to_topology(M, Nucleus::identity(M.Q)) == smallest_topology(C));
  }
}

TEST_CASE("topology -> nucleus -> topology is the identity on all enumerated topologies") {
  for (const FinCategory& C :
       {fixtures::terminal_category(), fixtures::g2_category(), fixtures::cospan_category()}) {
    CribleModel M = build_rc(C);
    for (const GrothendieckTopology& J : enumerate_topologies(C)) {
      Nucleus j = topology_to_nucleus(M, J);
      CHECK(validate_nucleus(M.Q, j, true).overall());
      CHECK(nucleus_to_topology(M, j) == J);
    }
  }
}

TEST_CASE("topology nuclei preserve the reversal involution") {
  for (const FinCategory& C :
       {fixtures::terminal_category(), fixtures::g2_category(), fixtures::cospan_category()}) {
    CribleModel M = build_rc(C);
    const int n = static_cast<int>(C.n_obj());
    for (const GrothendieckTopology& J : enumerate_topologies(C)) {
      Nucleus j = topology_to_nucleus(M, J);
      for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
          for (std::uint32_t a = 0; a < M.Q.at(x, y).size(); ++a) {
            const std::uint32_t rev_then_close =
                j.of(M.Q, y, x, M.reversal.of(M.Q, x, y, a));
            const std::uint32_t close_then_rev =
                M.reversal.of(M.Q, x, y, j.of(M.Q, x, y, a));
            CHECK(rev_then_close == close_then_rev);
          }
    }
  }
}

TEST_CASE("nucleus_to_topology rejects actions that fail the llex validation") {
  CribleModel M = build_rc(fixtures::g2_category());
  Nucleus bad = Nucleus::identity(M.Q);
  bad.act[0][M.Q.at(0, 0).top()] = M.Q.at(0, 0).bottom();
  CHECK_FALSE(validate_nucleus(M.Q, bad, true).overall());
  CHECK_THROWS_AS(nucleus_to_topology(M, bad), ArgumentError);
}

TEST_CASE("on meet-quantales every lax closure preserves meets") {
  // j(r)∧j(s) <= j(r∧s) is the lax-composition law itself when the
  // composition is the meet, so llex holds for free; spot-check the
  // equivalence on the two-chain's four monotone closures.
  FinQuantaloid Q = fixtures::two_chain_quantale();
  for (std::uint32_t img0 : {0u, 1u}) {
    Nucleus j;
    j.act = {{img0, 1}};
    const bool valid = validate_nucleus(Q, j, false).overall();
    CHECK(valid == validate_nucleus(Q, j, true).overall());
  }
}

TEST_CASE("quotients") {
  SUBCASE("by the identity nucleus: the same quantaloid") {
    CribleModel M = build_rc(fixtures::g2_category());
    QuotientResult quo = quotient(M.Q, Nucleus::identity(M.Q));
    CHECK(quo.Q.at(0, 0).size() == M.Q.at(0, 0).size());
    CHECK(quo.Q.identity[0] == M.Q.identity[0]);
    for (std::uint32_t a = 0; a < M.Q.at(0, 0).size(); ++a)
      for (std::uint32_t b = 0; b < M.Q.at(0, 0).size(); ++b)
        CHECK(quo.Q.then(0, 0, 0, a, b) == M.Q.then(0, 0, 0, a, b));
  }
  SUBCASE("by the all-to-top nucleus: singleton homs") {
    CribleModel M = build_rc(fixtures::g2_category());
    QuotientResult quo = quotient(M.Q, Nucleus::all_to_top(M.Q));
    CHECK(quo.Q.at(0, 0).size() == 1);
    CHECK(validate_quantaloid(quo.Q).overall());
  }
}

TEST_CASE("build_rcj") {
  SUBCASE("with the smallest topology R(C,J) = R(C), involution included") {
    for (const FinCategory& C :
         {fixtures::terminal_category(), fixtures::g2_category(), fixtures::cospan_category()}) {
      Rcj r = build_rcj(C, smallest_topology(C));
      const int n = static_cast<int>(C.n_obj());
      for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
          CHECK(r.quo.Q.at(x, y).size() == r.rc.Q.at(x, y).size());
          for (std::uint32_t a = 0; a < r.quo.Q.at(x, y).size(); ++a)
            CHECK(r.involution.of(r.quo.Q, x, y, a) == r.rc.reversal.of(r.rc.Q, x, y, a));
        }
      CHECK(validate_involution(r.quo.Q, r.involution).overall());
    }
  }
  SUBCASE("every enumerated (C,J) yields a valid involutive quantaloid") {
    for (const FinCategory& C :
         {fixtures::terminal_category(), fixtures::g2_category(), fixtures::cospan_category()}) {
      CribleModel M = build_rc(C);
      for (const GrothendieckTopology& J : enumerate_topologies(C)) {
        Rcj r = build_rcj(M, J);
        CHECK(validate_involution(r.quo.Q, r.involution).overall());
      }
    }
  }
}
