#include <doctest.h>

#include <array>
#include <random>

#include "rfsep/core/error.hpp"
#include "rfsep/rfgrowth/constructions.hpp"
#include "rfsep/separate/separate.hpp"
#include "rfsep/witness/witness.hpp"
#include "test_util.hpp"

using namespace rfsep;

namespace {

using M2 = std::array<long long, 4>;

M2 mul(const M2& a, const M2& b) {
  return {a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3],
          a[2] * b[0] + a[3] * b[2], a[2] * b[1] + a[3] * b[3]};
}

// Sanov matrices in plain machine integers, as an independent evaluator.
M2 sanov_eval(const GroupWord& w) {
  const std::array<M2, 4> gens{M2{1, 2, 0, 1}, M2{1, -2, 0, 1}, M2{1, 0, 2, 1}, M2{1, 0, -2, 1}};
  M2 acc{1, 0, 0, 1};
  for (const auto& l : w.letters()) acc = mul(acc, gens[2 * l.gen + (l.sign > 0 ? 0 : 1)]);
  return acc;
}

std::uint64_t mod(long long x, std::uint64_t p) {
  const long long r = x % static_cast<long long>(p);
  return static_cast<std::uint64_t>(r < 0 ? r + static_cast<long long>(p) : r);
}

const char* kIdentity = R"(
ring char=0 vars=0
dim 2
gen I = [[1,0],[0,1]]  inv J = [[1,0],[0,1]]
)";

}  // namespace

TEST_SUITE("separate_element") {
  TEST_CASE("sanov generator") {
    const GroupSpec sanov = test::load("sanov.grp");
    const auto cert = separate_element(sanov, sanov.parse("A"));
    CHECK(cert.mode == SeparationMode::direct);
    CHECK(cert.entry_row == 0);
    CHECK(cert.entry_col == 1);
    REQUIRE(cert.entry_poly);
    CHECK(*cert.entry_poly == "2");
    CHECK(cert.prime == 3);
    CHECK(cert.field_size == 3);
    CHECK(cert.order_bound == 81);
    CHECK(cert.image == "[[1,2],[0,1]]");
    CHECK(verify_certificate(sanov, cert));
  }

  TEST_CASE("sanov commutator against integer arithmetic") {
    const GroupSpec sanov = test::load("sanov.grp");
    const GroupWord ab = sanov.parse("[A,B]");
    const auto cert = separate_element(sanov, ab);
    CHECK(verify_certificate(sanov, cert));
    const M2 exact = sanov_eval(ab);
    CHECK(exact == M2{21, -8, 8, -3});
    const FqMatrix img = certificate_map(sanov, cert).word_image(ab);
    for (std::size_t i = 0; i < 4; ++i) CHECK(img.data()[i] == mod(exact[i], cert.prime));
    CHECK(!fq_is_identity(img));
  }

  TEST_CASE("trivial input is rejected") {
    const GroupSpec sanov = test::load("sanov.grp");
    CHECK_THROWS_AS(separate_element(sanov, GroupWord{}), PreconditionError);
    CHECK_THROWS_AS(separate_element(sanov, sanov.parse("A B B^-1 A^-1")), PreconditionError);
  }

  TEST_CASE("characteristic p and localized specs") {
    const GroupSpec c2 = test::load("char2.grp");
    const auto cert = separate_element(c2, c2.parse("A B"));
    CHECK(cert.irreducible);
    CHECK(cert.characteristic == 2);
    CHECK(verify_certificate(c2, cert));

    const GroupSpec loc = test::load("localized.grp");
    const auto lc = separate_element(loc, loc.parse("A B^-1 A"));
    CHECK(verify_certificate(loc, lc));
    // The chosen modulus keeps every denominator invertible.
    CHECK_NOTHROW(certificate_map(loc, lc));
  }

  TEST_CASE("random words over every bundled spec") {
    std::mt19937_64 rng(99);
    std::uniform_int_distribution<std::size_t> len(1, 6);
    int certified = 0;
    for (const char* file : {"sanov.grp", "poly.grp", "localized.grp", "bivariate.grp", "char2.grp"}) {
      const GroupSpec spec = test::load(file);
      for (int i = 0; i < 60; ++i) {
        const GroupWord a = random_reduced_word(spec.basis_count(), len(rng), rng);
        if (is_identity(evaluate_word(spec, a))) continue;
        const auto cert = separate_element(spec, a);
        CAPTURE(file);
        CAPTURE(spec.format(a));
        const auto v = verify_certificate(spec, cert);
        CAPTURE(v.reason);
        CHECK(v.ok);
        CHECK(!fq_is_identity(certificate_map(spec, cert).word_image(a)));
        const Integer bound = ipow(cert.field_size, spec.dim() * spec.dim());
        CHECK(cert.order_bound == bound);
        ++certified;
      }
    }
    CHECK(certified >= 200);
  }
}

TEST_SUITE("semisimple mode") {
  TEST_CASE("witness lands deep in the normal closure") {
    const GroupSpec sanov = test::load("sanov.grp");
    SeparationOptions opt;
    opt.mode = SeparationMode::semisimple;
    for (const char* word : {"A", "B", "A B"}) {
      const GroupWord a = sanov.parse(word);
      const auto cert = separate_element(sanov, a, opt);
      CAPTURE(word);
      CHECK(cert.level == solvable_depth(2));
      CHECK(cert.conjugators.size() == cert.level);
      CHECK(verify_certificate(sanov, cert));

      const auto q = finite_image(sanov, cert, 100000);
      // Replay the nested commutators inside Q.
      FiniteGroup::Elem h = word_element(*q, a);
      for (const auto& k_text : cert.conjugators) {
        const auto k = word_element(*q, sanov.parse(k_text));
        h = q->commutator(h, q->conjugate(k, h));
      }
      CHECK(h != q->identity());
      const Subgroup deep = normal_closure_derived_depth(*q, word_element(*q, a), cert.level);
      CHECK(deep.contains(h));
      CHECK(!deep.is_trivial());
    }
  }

  TEST_CASE("capacity guard") {
    const GroupSpec poly = test::load("poly.grp");
    SeparationOptions opt;
    opt.mode = SeparationMode::semisimple;
    opt.degree_cap = 10;
    CHECK_THROWS_AS(separate_element(poly, poly.parse("A"), opt), CapacityError);
  }
}

TEST_SUITE("verify_certificate") {
  TEST_CASE("tampering is detected") {
    const GroupSpec sanov = test::load("sanov.grp");
    const auto cert = separate_element(sanov, sanov.parse("A"));

    auto bad_prime = cert;
    bad_prime.prime = 2;  // divides h(m) = 2
    const auto v1 = verify_certificate(sanov, bad_prime);
    CHECK(!v1.ok);
    CHECK(v1.reason == "modulus condition");

    auto trivial = cert;
    trivial.input_word = "A A^-1";
    trivial.witness_word = "A A^-1";
    CHECK(!verify_certificate(sanov, trivial).ok);

    auto bound = cert;
    bound.order_bound = 80;
    CHECK(verify_certificate(sanov, bound).reason == "order bound");

    auto entry = cert;
    entry.entry_col = 0;
    CHECK(verify_certificate(sanov, entry).reason == "entry selection");

    auto image = cert;
    image.image = "[[1,1],[0,1]]";
    CHECK(verify_certificate(sanov, image).reason == "image mismatch");

    CHECK(!verify_certificate(test::load("poly.grp"), cert).ok);
  }

  TEST_CASE("record round trip") {
    for (const char* file : {"sanov.grp", "bivariate.grp", "char2.grp", "localized.grp"}) {
      const GroupSpec spec = test::load(file);
      const auto cert = separate_element(spec, spec.parse(spec.format(GroupWord::generator(0)) + " " +
                                                          spec.format(GroupWord::generator(1, -1))));
      const std::string text = serialize(cert);
      const auto back = parse_certificate(text);
      CHECK(serialize(back) == text);
      CHECK(verify_certificate(spec, back));
    }
    CHECK_THROWS_AS(parse_certificate("rfsep-certificate: 9\n"), ParseError);
  }
}

TEST_SUITE("finite images") {
  TEST_CASE("examples") {
    const GroupSpec sanov = test::load("sanov.grp");
    const auto cert = separate_element(sanov, sanov.parse("A"));
    const auto q = finite_image(sanov, cert, 1000);
    CHECK(q->order() == 24);
    CHECK(48 % q->order() == 0);
    CHECK_THROWS_AS(finite_image(sanov, cert, 1), CapacityError);

    const GroupSpec id = parse_group_file(kIdentity);
    CHECK(finite_image(id, cert, 10)->order() == 1);
  }

  TEST_CASE("normal_closure_derived_depth") {
    const auto s3 = symmetric_group(3);
    FiniteGroup::Elem cycle = 0;
    for (FiniteGroup::Elem x = 0; x < s3->order(); ++x) {
      if (s3->element_order(x) == 3) cycle = x;
    }
    CHECK(normal_closure_derived_depth(*s3, cycle, 0).order() == 3);
    CHECK(normal_closure_derived_depth(*s3, cycle, 1).is_trivial());

    const auto s5 = symmetric_group(5);
    const long long t = s5->find(parse_cycles("(1,2)", 5));
    REQUIRE(t >= 0);
    CHECK(normal_closure_derived_depth(*s5, static_cast<FiniteGroup::Elem>(t), 0).order() == 120);
    CHECK(normal_closure_derived_depth(*s5, static_cast<FiniteGroup::Elem>(t), 1).order() == 60);
    CHECK(normal_closure_derived_depth(*s5, s5->identity(), 3).is_trivial());
  }
}
