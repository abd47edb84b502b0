#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "qcrib/crible.hpp"
#include "qcrib/errors.hpp"
#include "qcrib/fixtures.hpp"

using namespace qcrib;

namespace {

Crible crible_from_pairs(const CribleModel& M, int x, int y,
                         const std::vector<std::pair<std::string, std::string>>& pairs) {
  const auto& U = M.hom(x, y).universe;
  Crible c{x, y, Bitset(U.spans.size())};
  for (const auto& [f, g] : pairs)
    c.members.set(U.index_of({M.cat.morphism_index(f), M.cat.morphism_index(g)}));
  return c;
}

bool is_closed(const CribleModel& M, const Crible& c) {
  const auto& U = M.hom(c.src, c.dst).universe;
  for (std::size_t s = c.members.first(); s != npos; s = c.members.next(s))
    if (!U.generated[s].is_subset_of(c.members)) return false;
  return true;
}

}  // namespace

TEST_CASE("R(1): the single hom is a two-chain") {
  CribleModel M = build_rc(fixtures::terminal_category());
  CHECK(M.Q.at(0, 0).size() == 2);
  Crible id = crible_identity(M, 0);
  CHECK(id.members.count() == 1);
  CHECK(M.element_of(id) == M.Q.identity[0]);
}

TEST_CASE("R(G2): cribles and composition") {
  CribleModel M = build_rc(fixtures::g2_category());
  CHECK(M.Q.at(0, 0).size() == 4);

  Crible D = crible_from_pairs(M, 0, 0, {{"e", "e"}, {"s", "s"}});
  Crible A = crible_from_pairs(M, 0, 0, {{"e", "s"}, {"s", "e"}});
  CHECK(is_closed(M, D));
  CHECK(is_closed(M, A));

  SUBCASE("the identity crible is D") {
    CHECK(crible_identity(M, 0).members == D.members);
  }
  SUBCASE("A∘A = D, by the existential-witness formula") {
    CHECK(crible_compose(M, A, A).members == D.members);
    CHECK(crible_compose(M, A, D).members == A.members);
  }
  SUBCASE("the generated crible of (e,s) is A") {
    CHECK(generated_crible(M, M.cat.morphism_index("e"), M.cat.morphism_index("s")).members ==
          A.members);
  }
  SUBCASE("A is reversal-symmetric") {
    CHECK(crible_involution(M, A).members == A.members);
  }
  SUBCASE("composing with the empty crible gives the empty crible") {
    Crible empty{0, 0, Bitset(M.hom(0, 0).universe.spans.size())};
    CHECK(crible_compose(M, D, empty).members.none());
    CHECK(crible_compose(M, empty, A).members.none());
  }
}

TEST_CASE("R(C_cospan): hom sizes and identities") {
  CribleModel M = build_rc(fixtures::cospan_category());
  const int x = M.cat.object_index("X");
  const int z = M.cat.object_index("Z");

  SUBCASE("hom(X,Z) is the two-chain on the unique span") {
    CHECK(M.Q.at(x, z).size() == 2);
    CHECK(M.hom(x, z).universe.spans.size() == 1);
  }
  SUBCASE("identity crible at Z") {
    Crible id = crible_identity(M, z);
    CHECK(id.members == crible_from_pairs(M, z, z, {{"idZ", "idZ"}, {"f", "f"}, {"g", "g"}}).members);
  }
  SUBCASE("generated crible of (f, idX) is the singleton") {
    Crible c = generated_crible(M, M.cat.morphism_index("f"), M.cat.morphism_index("idX"));
    CHECK(c.members.count() == 1);
    CHECK(c.src == x);
    CHECK(c.dst == z);
  }
  SUBCASE("generated crible of the identity span equals the identity crible") {
    Crible c = generated_crible(M, M.cat.morphism_index("idZ"), M.cat.morphism_index("idZ"));
    CHECK(c.members == crible_identity(M, z).members);
  }
  SUBCASE("apex mismatch raises") {
    CHECK_THROWS_AS(
        generated_crible(M, M.cat.morphism_index("f"), M.cat.morphism_index("g")),
        ArgumentError);
  }
}

TEST_CASE("identity laws via the span formula") {
  for (const FinCategory& C :
       {fixtures::terminal_category(), fixtures::g2_category(), fixtures::cospan_category()}) {
    CribleModel M = build_rc(C);
    const int n = static_cast<int>(C.n_obj());
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y)
        for (const Bitset& members : M.hom(x, y).cribles) {
          Crible R{x, y, members};
          CHECK(crible_compose(M, crible_identity(M, y), R).members == members);
          CHECK(crible_compose(M, R, crible_identity(M, x)).members == members);
          CHECK(crible_involution(M, crible_involution(M, R)).members == members);
        }
  }
}

TEST_CASE("compiled composition tables agree with the span formula") {
  for (const FinCategory& C :
       {fixtures::g2_category(), fixtures::cospan_category()}) {
    CribleModel M = build_rc(C);
    const int n = static_cast<int>(C.n_obj());
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y)
        for (int z = 0; z < n; ++z)
          for (std::uint32_t a = 0; a < M.Q.at(x, y).size(); ++a)
            for (std::uint32_t b = 0; b < M.Q.at(y, z).size(); ++b) {
              Crible R = M.crible_of(x, y, a);
              Crible S = M.crible_of(y, z, b);
              CHECK(M.element_of(crible_compose(M, S, R)) == M.Q.then(x, y, z, a, b));
            }
  }
}

TEST_CASE("weak-tabularity witness form: R is the union of <f,1>∘<1,g>") {
  for (const FinCategory& C :
       {fixtures::terminal_category(), fixtures::g2_category(), fixtures::cospan_category()}) {
    CribleModel M = build_rc(C);
    const int n = static_cast<int>(C.n_obj());
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y) {
        const auto& U = M.hom(x, y).universe;
        for (const Bitset& members : M.hom(x, y).cribles) {
          Bitset acc(U.spans.size());
          for (std::size_t s = members.first(); s != npos; s = members.next(s)) {
            const Span sp = U.spans[s];
            const int apex_id = M.cat.identity[M.cat.mor[sp.f].dom];
            Crible left = generated_crible(M, sp.f, apex_id);   // <f,1>
            Crible right = generated_crible(M, apex_id, sp.g);  // <1,g>
            acc |= crible_compose(M, left, right).members;
          }
          CHECK(acc == members);
        }
      }
  }
}

TEST_CASE("crible composition is associative and join-preserving on G2") {
  CribleModel M = build_rc(fixtures::g2_category());
  const auto& cribles = M.hom(0, 0).cribles;
  for (const Bitset& a : cribles)
    for (const Bitset& b : cribles) {
      Crible A{0, 0, a}, B{0, 0, b};
      for (const Bitset& c : cribles) {
        Crible Ccr{0, 0, c};
        CHECK(crible_compose(M, crible_compose(M, Ccr, B), A).members ==
              crible_compose(M, Ccr, crible_compose(M, B, A)).members);
      }
      Crible join{0, 0, a | b};
      for (const Bitset& c : cribles) {
        Crible Ccr{0, 0, c};
        CHECK(crible_compose(M, Ccr, join).members ==
              (crible_compose(M, Ccr, A).members | crible_compose(M, Ccr, B).members));
        CHECK(crible_compose(M, join, Ccr).members ==
              (crible_compose(M, A, Ccr).members | crible_compose(M, B, Ccr).members));
      }
    }
}

TEST_CASE("composition of cribles is closed") {
  CribleModel M = build_rc(fixtures::cospan_category());
  const int n = static_cast<int>(M.cat.n_obj());
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z)
        for (const Bitset& a : M.hom(x, y).cribles)
          for (const Bitset& b : M.hom(y, z).cribles) {
            Crible out = crible_compose(M, {y, z, b}, {x, y, a});
            CHECK(is_closed(M, out));
          }
}

TEST_CASE("object mismatch in composition raises") {
  CribleModel M = build_rc(fixtures::cospan_category());
  const int x = M.cat.object_index("X");
  const int z = M.cat.object_index("Z");
  Crible a = crible_identity(M, x);
  Crible b = crible_identity(M, z);
  CHECK_THROWS_AS(crible_compose(M, a, b), ArgumentError);
  CHECK_THROWS_AS(crible_compose(M, b, a), ArgumentError);
}

TEST_CASE("span bound is enforced") {
  CHECK_THROWS_AS(build_rc(fixtures::g2_category(), 2), ResourceBoundError);
}
