#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qcrib/crible.hpp"
#include "qcrib/errors.hpp"
#include "qcrib/fixtures.hpp"
#include "qcrib/quantaloid.hpp"

using namespace qcrib;

TEST_CASE("fixture quantaloids validate") {
  CHECK(validate_quantaloid(build_rc(fixtures::terminal_category()).Q).overall());
  CHECK(validate_quantaloid(fixtures::l3_quantale()).overall());
  CHECK(validate_quantaloid(fixtures::two_chain_quantale()).overall());
  CHECK(validate_quantaloid(fixtures::l3_si()).overall());
  CHECK(validate_quantaloid(build_rc(fixtures::g2_category()).Q).overall());
  CHECK(validate_quantaloid(build_rc(fixtures::cospan_category()).Q).overall());
}

TEST_CASE("M3-meet is expressible but not Sup-valid: meet does not preserve joins") {
  // The Matr counterexample fixture: modular, yet composition = meet on a
  // non-distributive lattice breaks join preservation.
  CheckReport rep = validate_quantaloid(fixtures::m3_meet_quantale());
  CHECK_FALSE(rep.overall());
  CHECK(rep.checks[0].witness["law"] == "composition-preserves-joins");
}

TEST_CASE("a non-join-preserving table is rejected with a witness") {
  // Two-chain with composition = meet but identity = 0: unit law breaks.
  FinQuantaloid Q = fixtures::two_chain_quantale();
  Q.identity[0] = Q.at(0, 0).index_of("0");
  CheckReport rep = validate_quantaloid(Q);
  CHECK_FALSE(rep.overall());
  CHECK(rep.checks[0].witness["law"] == "right-unit");
}

TEST_CASE("right adjoints") {
  SUBCASE("identities are self-adjoint") {
    FinQuantaloid Q = fixtures::l3_quantale();
    auto r = right_adjoint(Q, 0, 0, Q.identity[0]);
    REQUIRE(r.has_value());
    CHECK(*r == Q.identity[0]);
  }
  SUBCASE("m in L3 has no right adjoint") {
    FinQuantaloid Q = fixtures::l3_quantale();
    CHECK_FALSE(right_adjoint(Q, 0, 0, Q.at(0, 0).index_of("m")).has_value());
    CHECK_FALSE(right_adjoint(Q, 0, 0, Q.at(0, 0).index_of("0")).has_value());
  }
  SUBCASE("in R(G2) the crible A is its own right adjoint") {
    CribleModel M = build_rc(fixtures::g2_category());
    Crible A{0, 0, Bitset(M.hom(0, 0).universe.spans.size())};
    const int e = M.cat.morphism_index("e"), s = M.cat.morphism_index("s");
    A.members.set(M.hom(0, 0).universe.index_of({e, s}));
    A.members.set(M.hom(0, 0).universe.index_of({s, e}));
    const std::uint32_t a = M.element_of(A);
    auto r = right_adjoint(M.Q, 0, 0, a);
    REQUIRE(r.has_value());
    CHECK(*r == a);
  }
}

TEST_CASE("maps categories") {
  SUBCASE("one-object L3 has only the identity map") {
    MapsResult M = maps_category(fixtures::l3_quantale());
    CHECK(M.cat.n_mor() == 1);
    CHECK(validate_category(M.cat).overall());
  }
  SUBCASE("R(G2) has two maps: D and A") {
    MapsResult M = maps_category(build_rc(fixtures::g2_category()).Q);
    CHECK(M.cat.n_mor() == 2);
    CHECK(validate_category(M.cat).overall());
    // The non-identity map squares to the identity.
    int other = M.cat.identity[0] == 0 ? 1 : 0;
    CHECK(M.cat.compose(other, other) == M.cat.identity[0]);
  }
  SUBCASE("Map(L3_si) is the poset L3 viewed as a category") {
    MapsResult M = maps_category(fixtures::l3_si());
    CHECK(M.cat.n_obj() == 3);
    CHECK(M.cat.n_mor() == 6);  // e -> f exactly when e <= f
    CHECK(validate_category(M.cat).overall());
    const FinQuantaloid& Q = fixtures::l3_si();
    // Thin: at most one map per hom.
    for (std::size_t i = 0; i < 9; ++i) CHECK(M.by_hom[i].size() <= 1);
    (void)Q;
  }
  SUBCASE("adjoint table is consistent") {
    MapsResult M = maps_category(build_rc(fixtures::cospan_category()).Q);
    const FinQuantaloid Q = build_rc(fixtures::cospan_category()).Q;
    for (const MapMor& m : M.maps) {
      auto r = right_adjoint(Q, m.src, m.dst, m.elt);
      REQUIRE(r.has_value());
      CHECK(*r == m.star);
    }
  }
}

TEST_CASE("property checks on the locale L3 as a one-object quantaloid") {
  FinQuantaloid Q = fixtures::l3_quantale();
  Involution id_inv = Involution::identity_on_elements(Q);

  CHECK(check_property(Q, Property::locally_localic).verdict);
  CHECK(check_property(Q, Property::map_discrete).verdict);
  CHECK(check_property(Q, Property::modular, &id_inv).verdict);
  CHECK(check_property(Q, Property::weakly_modular).verdict);

  SUBCASE("weak tabularity fails with witness q = m") {
    PropertyVerdict v = check_property(Q, Property::weakly_tabular);
    CHECK_FALSE(v.verdict);
    CHECK(v.witness["q"]["element"] == "m");
  }
  SUBCASE("tabularity fails too") {
    CHECK_FALSE(check_property(Q, Property::tabular, &id_inv).verdict);
    CHECK_FALSE(check_property(Q, Property::map_tabular).verdict);
  }
  SUBCASE("modular and tabular need an involution") {
    CHECK_THROWS_AS(check_property(Q, Property::modular), ArgumentError);
    CHECK_THROWS_AS(check_property(Q, Property::tabular), ArgumentError);
  }
}

TEST_CASE("property checks on R(G2) with the reversal involution") {
  CribleModel M = build_rc(fixtures::g2_category());
  CHECK(check_property(M.Q, Property::locally_localic).verdict);
  CHECK(check_property(M.Q, Property::map_discrete).verdict);
  CHECK(check_property(M.Q, Property::weakly_tabular).verdict);
  CHECK(check_property(M.Q, Property::weakly_modular).verdict);
  CHECK(check_property(M.Q, Property::modular, &M.reversal).verdict);
}

TEST_CASE("M3-meet is modular but not locally localic") {
  FinQuantaloid Q = fixtures::m3_meet_quantale();
  Involution id_inv = Involution::identity_on_elements(Q);
  CHECK(check_property(Q, Property::modular, &id_inv).verdict);
  PropertyVerdict v = check_property(Q, Property::locally_localic);
  CHECK_FALSE(v.verdict);
  REQUIRE(!v.witness.is_null());

  SUBCASE("re-evaluating the law on the witness reproduces the failure") {
    const auto& H = Q.at(0, 0);
    std::uint32_t a = H.index_of(v.witness["elements"][0].get<std::string>());
    std::uint32_t b = H.index_of(v.witness["elements"][1].get<std::string>());
    std::uint32_t c = H.index_of(v.witness["elements"][2].get<std::string>());
    CHECK(H.meet2(a, H.join2(b, c)) != H.join2(H.meet2(a, b), H.meet2(a, c)));
  }
}

TEST_CASE("L3_si is a tabular, modular, locally localic quantaloid") {
  FinQuantaloid Q = fixtures::l3_si();
  Involution id_inv = Involution::identity_on_elements(Q);
  CHECK(check_property(Q, Property::locally_localic).verdict);
  CHECK(check_property(Q, Property::map_discrete).verdict);
  CHECK(check_property(Q, Property::weakly_tabular).verdict);
  CHECK(check_property(Q, Property::weakly_modular).verdict);
  CHECK(check_property(Q, Property::modular, &id_inv).verdict);
  CHECK(check_property(Q, Property::tabular, &id_inv).verdict);
  CHECK(check_property(Q, Property::map_tabular).verdict);
}

TEST_CASE("involutions") {
  SUBCASE("reversal on R(C) is valid for every fixture") {
    for (const FinCategory& C :
         {fixtures::terminal_category(), fixtures::g2_category(), fixtures::cospan_category()}) {
      CribleModel M = build_rc(C);
      CHECK(validate_involution(M.Q, M.reversal).overall());
    }
  }
  SUBCASE("identity involution on commutative quantales is valid") {
    FinQuantaloid Q = fixtures::l3_quantale();
    CHECK(validate_involution(Q, Involution::identity_on_elements(Q)).overall());
  }
  SUBCASE("a non-involutive table is rejected") {
    FinQuantaloid Q = fixtures::l3_quantale();
    Involution inv = Involution::identity_on_elements(Q);
    // Swap 0 and m in one direction only: f^oo != f.
    inv.op[0][Q.at(0, 0).index_of("0")] = Q.at(0, 0).index_of("m");
    CheckReport rep = validate_involution(Q, inv);
    CHECK_FALSE(rep.overall());
    CHECK(rep.checks[0].witness["law"] == "self-inverse");
  }
}

TEST_CASE("split idempotent completion of L3") {
  FinQuantaloid Q = fixtures::l3_si();
  CHECK(Q.n_obj() == 3);

  SUBCASE("hom(e,f) is the down-set of e/\\f") {
    const int e0 = Q.object_index("*@0");
    const int em = Q.object_index("*@m");
    const int e1 = Q.object_index("*@1");
    CHECK(Q.at(e0, e0).size() == 1);
    CHECK(Q.at(em, e1).size() == 2);   // {0, m}
    CHECK(Q.at(e1, e1).size() == 3);   // {0, m, 1}
    CHECK(Q.at(e0, e1).size() == 1);
    CHECK(Q.at(em, em).size() == 2);
  }
  SUBCASE("identity of (X,e) is e") {
    const int em = Q.object_index("*@m");
    CHECK(Q.at(em, em).id(Q.identity[em]) == "m");
  }
  SUBCASE("coreflexives that are idempotents split (here: all of them)") {
    // e.g. 0 <= identity at *@m splits through *@0.
    const int em = Q.object_index("*@m");
    const int e0 = Q.object_index("*@0");
    std::uint32_t zero_m = Q.at(em, em).index_of("0");
    std::uint32_t f = Q.at(em, e0).index_of("0");
    std::uint32_t g = Q.at(e0, em).index_of("0");
    CHECK(Q.then(e0, em, e0, g, f) == Q.identity[e0]);
    CHECK(Q.then(em, e0, em, f, g) == zero_m);
  }
  SUBCASE("the full subquantaloid on identity-idempotents is the original") {
    FinQuantaloid base = fixtures::two_chain_quantale();
    FinQuantaloid si = split_idempotent_completion(base);
    CHECK(si.n_obj() == 2);  // idempotents 0 and 1
    const int e1 = si.object_index("*@1");
    CHECK(si.at(e1, e1).size() == base.at(0, 0).size());
    CHECK(si.at(e1, e1).id(si.identity[e1]) == base.at(0, 0).id(base.identity[0]));
  }
}

TEST_CASE("free quantaloid") {
  SUBCASE("on the terminal category: one-object two-chain") {
    FinQuantaloid Q = free_quantaloid(fixtures::terminal_category());
    CHECK(Q.n_obj() == 1);
    CHECK(Q.at(0, 0).size() == 2);
    CHECK(validate_quantaloid(Q).overall());
  }
  SUBCASE("on G2: powerset of the group, {s}∘{s} = {e}") {
    FinQuantaloid Q = free_quantaloid(fixtures::g2_category());
    CHECK(Q.at(0, 0).size() == 4);
    CHECK(validate_quantaloid(Q).overall());
    std::uint32_t s = Q.at(0, 0).index_of("{s}");
    std::uint32_t e = Q.at(0, 0).index_of("{e}");
    CHECK(Q.then(0, 0, 0, s, s) == e);
    CHECK(Q.identity[0] == e);

    Involution inv = free_quantaloid_involution(fixtures::g2_category(), Q);
    CHECK(validate_involution(Q, inv).overall());
    CHECK(inv.of(Q, 0, 0, s) == s);
    CHECK(check_property(Q, Property::modular, &inv).verdict);
  }
  SUBCASE("involution on a non-groupoid raises") {
    FinCategory C = fixtures::cospan_category();
    FinQuantaloid Q = free_quantaloid(C);
    CHECK(validate_quantaloid(Q).overall());
    CHECK_THROWS_AS(free_quantaloid_involution(C, Q), ArgumentError);
  }
}

TEST_CASE("adjunction uniqueness: no arrow ever has two right adjoints") {
  for (const FinQuantaloid& Q : {fixtures::l3_quantale(), fixtures::l3_si(),
                                 build_rc(fixtures::g2_category()).Q,
                                 build_rc(fixtures::cospan_category()).Q}) {
    const int n = static_cast<int>(Q.n_obj());
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y)
        for (std::uint32_t f = 0; f < Q.at(x, y).size(); ++f)
          CHECK_NOTHROW(right_adjoint(Q, x, y, f));
  }
}
