#include <doctest.h>

#include <algorithm>
#include <random>

#include "rfsep/core/error.hpp"
#include "rfsep/ring/irreducible.hpp"
#include "rfsep/ring/parse.hpp"
#include "rfsep/specialize/specialize.hpp"
#include "test_util.hpp"

using namespace rfsep;

namespace {

UniPoly U(const char* text, std::uint64_t p = 0) { return parse_unipoly(text, p); }

const char* kSquareChar2 = R"(
ring char=2 vars=1
dim 2
gen A = [[1, T1^2],[0,1]]  inv Ainv = [[1, T1^2],[0,1]]
)";

std::uint64_t box_bound(std::uint64_t d, std::size_t s) {
  std::uint64_t r = 1;
  for (std::size_t i = 0; i < 2 * s; ++i) r *= d;
  return r;
}

}  // namespace

TEST_SUITE("reduce_to_one_variable") {
  TEST_CASE("examples") {
    const auto r1 = reduce_to_one_variable(parse_polynomial("T1-T2", 2, 0));
    CHECK(!r1.g.is_zero());
    CHECK(r1.g == substitute_powers(parse_polynomial("T1-T2", 2, 0), r1.n_vec));

    const auto r2 = reduce_to_one_variable(parse_polynomial("5", 3, 0));
    CHECK(r2.n_vec == std::vector<std::uint64_t>{0, 0, 0});
    CHECK(r2.g == U("5"));

    const MultiPoly f2 = parse_polynomial("T1+T2", 2, 2);
    const auto r3 = reduce_to_one_variable(f2);
    CHECK(!r3.g.is_zero());
    CHECK(r3.n_vec != std::vector<std::uint64_t>{1, 1});

    CHECK_THROWS_AS(reduce_to_one_variable(MultiPoly(2, 0)), PreconditionError);
  }

  TEST_CASE("random polynomials survive inside the box") {
    std::mt19937_64 rng(31);
    std::uniform_int_distribution<std::size_t> vars(1, 3);
    for (std::uint64_t p : {0ULL, 2ULL, 3ULL, 5ULL}) {
      for (int tested = 0; tested < 500;) {
        const std::size_t s = vars(rng);
        const MultiPoly f = test::random_poly(rng, s, p, 4, 6);
        if (f.is_zero()) continue;
        const auto r = reduce_to_one_variable(f);
        const std::uint64_t d = std::max<std::uint64_t>(static_cast<std::uint64_t>(f.degree()), 2);
        CAPTURE(to_string(f));
        CHECK(!r.g.is_zero());
        CHECK(r.g == substitute_powers(f, r.n_vec));
        CHECK(r.D == d);
        for (auto n : r.n_vec) CHECK(n <= box_bound(d, s));
        ++tested;
      }
    }
  }
}

TEST_SUITE("choose_prime") {
  TEST_CASE("examples") {
    const auto a = choose_prime(U("tau^2-tau"));
    CHECK(a.m == 2);
    CHECK(a.h_at_m == 2);
    CHECK(a.p == 3);
    const auto b = choose_prime(U("tau"));
    CHECK(b.m == 1);
    CHECK(b.p == 2);
    const auto c = choose_prime(U("6"));
    CHECK(c.m == 0);
    CHECK(c.p == 5);
    CHECK_THROWS_AS(choose_prime(UniPoly(0)), PreconditionError);
    CHECK_THROWS_AS(choose_prime(U("tau", 3)), PreconditionError);
  }

  TEST_CASE("must_survive skips bad candidates") {
    // h(0) = 6 is coprime to 5 but the extra polynomial 10 is not.
    const auto c = choose_prime(U("6"), {U("10")});
    CHECK(c.p == 7);
  }

  TEST_CASE("random polynomials: valid and minimal") {
    std::mt19937_64 rng(8);
    std::uniform_int_distribution<int> coeff(-30, 30);
    std::uniform_int_distribution<int> deg(0, 6);
    for (int i = 0; i < 300; ++i) {
      UniPoly h;
      const int d = deg(rng);
      for (int e = 0; e <= d; ++e) h.add_term(static_cast<std::uint64_t>(e), coeff(rng));
      if (h.is_zero()) continue;
      const auto c = choose_prime(h);
      CAPTURE(to_string(h));
      CHECK(unipoly_eval_mod(h, c.m, c.p) != 0);
      CHECK(c.m <= Integer(static_cast<long>(h.degree() + 1)));
      CHECK(c.h_at_m == h.evaluate(c.m));
      for (Integer m = (h.coefficient(0) != 0 ? 0 : 1); m < c.m; ++m) CHECK(h.evaluate(m) == 0);
      for (std::uint64_t q = 2; q < c.p; q = next_prime(q)) {
        CHECK(unipoly_eval_mod(h, c.m, q) == 0);
      }
    }
  }
}

TEST_SUITE("choose_irreducible") {
  TEST_CASE("examples") {
    CHECK(choose_irreducible(U("tau", 2)).w == U("tau+1", 2));
    const UniPoly all_low = U("tau*(tau+1)*(tau^2+tau+1)", 2);
    const auto c = choose_irreducible(all_low);
    CHECK(c.w == U("tau^3+tau+1", 2));
    CHECK(c.field_size == 8);
    CHECK(choose_irreducible(U("1", 3)).w == U("tau", 3));
    CHECK_THROWS_AS(choose_irreducible(UniPoly(2)), PreconditionError);
  }

  TEST_CASE("random polynomials: irreducible, coprime, minimal") {
    std::mt19937_64 rng(12);
    for (std::uint64_t p : {2ULL, 3ULL, 5ULL}) {
      const auto table = enumerate_irreducibles(p, 4);
      std::uniform_int_distribution<std::uint64_t> coeff(0, p - 1);
      std::uniform_int_distribution<int> deg(0, 8);
      for (int i = 0; i < 100; ++i) {
        UniPoly h(p);
        const int d = deg(rng);
        for (int e = 0; e <= d; ++e) h.add_term(static_cast<std::uint64_t>(e), coeff(rng));
        // Products of low-degree irreducibles force deeper searches.
        if (i % 4 == 0) h = h * table[i % 3] * table[(i / 4) % table.size()];
        if (h.is_zero()) continue;
        const auto c = choose_irreducible(h);
        CAPTURE(to_string(h));
        CHECK(is_irreducible_fp(c.w));
        CHECK(!remainder_fp(h, c.w).is_zero());
        const auto pos = std::find(table.begin(), table.end(), c.w);
        REQUIRE(pos != table.end());
        for (auto it = table.begin(); it != pos; ++it) CHECK(remainder_fp(h, *it).is_zero());
      }
    }
  }
}

TEST_SUITE("specialization maps") {
  TEST_CASE("characteristic 0 examples") {
    const GroupSpec sanov = test::load("sanov.grp");
    const auto m = specialize_group_char0(sanov, {}, 0, 3);
    const FqMatrix a = m.word_image(sanov.parse("A"));
    CHECK(a(0, 0) == 1);
    CHECK(a(0, 1) == 2);
    CHECK(a(1, 0) == 0);
    CHECK(a(1, 1) == 1);

    const GroupSpec poly = test::load("poly.grp");
    const auto pm = specialize_group_char0(poly, {1}, 2, 5);
    CHECK(pm.word_image(poly.parse("A"))(0, 1) == 4);
    CHECK_THROWS_AS(specialize_group_char0(poly, {1}, 0, 5), DenominatorCollapse);
    CHECK_THROWS_AS(specialize_group_char0(poly, {1}, 2, 4), PreconditionError);
    CHECK_THROWS_AS(specialize_group_char0(poly, {1, 1}, 2, 5), StructuralError);
  }

  TEST_CASE("characteristic p examples") {
    const GroupSpec c2 = test::load("char2.grp");
    const IrreducibleChoice lin{U("tau+1", 2), 2, 2};
    const auto m = specialize_group_charp(c2, {1}, lin);
    CHECK(m.word_image(c2.parse("A"))(0, 0) == 1);

    const GroupSpec sq = parse_group_file(kSquareChar2);
    const IrreducibleChoice quad{U("tau^2+tau+1", 2), 2, 4};
    const auto q = specialize_group_charp(sq, {1}, quad);
    CHECK(q.word_image(sq.parse("A"))(0, 1) == q.field().from_unipoly(U("tau+1", 2)));

    // n = 0 sends T1 to 1, so B's entry T1 + 1 vanishes.
    const auto e = specialize_group_charp(c2, {0}, quad);
    const FqMatrix b = e.word_image(c2.parse("B"));
    CHECK(b(0, 1) == 0);
    CHECK(b(0, 0) == 1);
    CHECK_THROWS_AS(specialize_group_charp(test::load("sanov.grp"), {}, quad), PreconditionError);
  }

  TEST_CASE("homomorphism and inverses on random words") {
    struct Case {
      const char* file;
      std::vector<std::uint64_t> n;
      bool char0;
    };
    const std::vector<Case> cases{{"sanov.grp", {}, true},
                                  {"poly.grp", {2}, true},
                                  {"localized.grp", {1}, true},
                                  {"bivariate.grp", {3, 1}, true},
                                  {"char2.grp", {1}, false}};
    std::mt19937_64 rng(40);
    std::uniform_int_distribution<std::size_t> len(1, 8);
    for (const auto& c : cases) {
      const GroupSpec spec = test::load(c.file);
      const SpecializationMap m =
          c.char0 ? specialize_group_char0(spec, c.n, 2, 7)
                  : specialize_group_charp(spec, c.n, IrreducibleChoice{U("tau^3+tau+1", 2), 2, 8});
      const FiniteField& f = m.field();
      for (int i = 0; i < 50; ++i) {
        const GroupWord u = random_reduced_word(spec.basis_count(), len(rng), rng);
        const GroupWord v = random_reduced_word(spec.basis_count(), len(rng), rng);
        CHECK(m.word_image(u * v) == fq_mul(f, m.word_image(u), m.word_image(v)));
        CHECK(m.word_image(u.inverse()) == fq_inverse(f, m.word_image(u)));
        CHECK(m.map(evaluate_word(spec, u)) == m.word_image(u));
      }
    }
  }
}
