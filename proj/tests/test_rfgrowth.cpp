#include <doctest.h>

#include <cmath>
#include <map>
#include <random>

#include "rfsep/core/error.hpp"
#include "rfsep/rfgrowth/catalog.hpp"
#include "rfsep/rfgrowth/constructions.hpp"
#include "rfsep/rfgrowth/curve.hpp"
#include "rfsep/rfgrowth/homs.hpp"
#include "test_util.hpp"

using namespace rfsep;

namespace {

const Alphabet kF2 = Alphabet::free(2);

GroupWord W(const char* text) { return parse_word(text, kF2); }

FiniteGroup::Elem element_of_order(const FiniteGroup& g, std::uint64_t order) {
  for (FiniteGroup::Elem x = 0; x < g.order(); ++x) {
    if (g.element_order(x) == order) return x;
  }
  FAIL("no element of the requested order");
  return 0;
}

// All reduced words in F_2 of length <= radius.
std::vector<GroupWord> ball(std::size_t radius) {
  std::vector<GroupWord> out{GroupWord{}};
  std::vector<GroupWord> layer{GroupWord{}};
  for (std::size_t r = 0; r < radius; ++r) {
    std::vector<GroupWord> next;
    for (const auto& w : layer) {
      for (std::uint32_t g = 0; g < 2; ++g) {
        for (int s : {1, -1}) {
          const GroupWord ext = w * GroupWord::generator(g, s);
          if (ext.is_reduced() && ext.length() == r + 1) next.push_back(ext);
        }
      }
    }
    out.insert(out.end(), next.begin(), next.end());
    layer = std::move(next);
  }
  return out;
}

// ker(phi) inside the ball is carried into ker(phi) by every rule and inverse.
bool invariant_on_ball(const Hom& phi, const std::vector<AutRule>& rules,
                       const std::vector<GroupWord>& words) {
  for (const auto& w : words) {
    if (phi.evaluate(w) != phi.target->identity()) continue;
    for (const auto& rule : rules) {
      for (const auto* images : {&rule.images, &rule.inverse_images}) {
        if (phi.evaluate(apply_rule(*images, w)) != phi.target->identity()) return false;
      }
    }
  }
  return true;
}

}  // namespace

TEST_SUITE("homomorphisms") {
  TEST_CASE("enumeration counts") {
    CHECK(enumerate_homs(1, cyclic_group(2), 100).size() == 2);
    const auto s3 = enumerate_homs(2, symmetric_group(3), 100);
    CHECK(s3.size() == 36);
    // Lexicographic order of the image tuples.
    CHECK(s3.front().images == std::vector<FiniteGroup::Elem>{0, 0});
    CHECK(s3[1].images == std::vector<FiniteGroup::Elem>{0, 1});
    CHECK(s3.back().images == std::vector<FiniteGroup::Elem>{5, 5});
    CHECK_THROWS_AS(enumerate_homs(2, symmetric_group(6), 1000), CapacityError);
  }

  TEST_CASE("surjections onto S3") {
    // 18 generating pairs of S3: 36 pairs minus the 18 inside a proper subgroup.
    std::size_t onto = 0;
    for (const auto& h : enumerate_homs(2, symmetric_group(3), 100)) onto += h.surjective();
    CHECK(onto == 18);
  }
}

TEST_SUITE("aut rules") {
  TEST_CASE("nielsen generators are automorphisms") {
    const auto rules = nielsen_generators(2);
    CHECK(rules.size() == 3);
    for (const auto& r : rules) {
      for (const auto& w : ball(3)) {
        CHECK(apply_rule(r.inverse_images, apply_rule(r.images, w)).reduced() == w.reduced());
      }
    }
    CHECK(nielsen_generators(3).size() == 4);
  }

  TEST_CASE("parsing and validation") {
    const auto rules = parse_aut_rules("# comment\nswap: x -> y, y -> x\nmul: x -> x y\n", kF2);
    REQUIRE(rules.size() == 2);
    CHECK(rules[0].images[0] == W("y"));
    CHECK(rules[1].images[1] == W("y"));
    CHECK(rules[1].inverse_images[0] == W("x y^-1"));
    CHECK_NOTHROW(parse_aut_rules("c: x -> x y, y -> y | x -> x y^-1, y -> y", kF2));
    CHECK_THROWS_AS(parse_aut_rules("bad: x -> x^2", kF2), ValidationError);
    CHECK_THROWS_AS(parse_aut_rules("bad: x -> x y | x -> x y", kF2), ValidationError);
    CHECK_THROWS_AS(parse_aut_rules("no colon here", kF2), ParseError);
  }
}

TEST_SUITE("depth") {
  TEST_CASE("examples") {
    const auto& cat = default_catalog();
    const auto dx = depth(2, W("x"), cat);
    CHECK(dx.order == 2);
    CHECK(dx.exhaustive);
    CHECK(dx.witness.evaluate(W("x")) != dx.witness.target->identity());

    const auto dc = depth(2, W("[x,y]"), cat);
    CHECK(dc.order == 6);
    CHECK(dc.exhaustive);
    CHECK(!are_isomorphic(*dc.witness.target, *cyclic_group(6)));

    DepthOptions lie;
    lie.filter = parse_class_filter("lie");
    const auto dl = depth(2, W("[x,y]"), cat, lie);
    CHECK(dl.order == 60);
    CHECK(dl.witness.surjective());
    CHECK(dl.class_filter == lie.filter.describe());

    CHECK_THROWS_AS(depth(2, W("x x^-1"), cat), PreconditionError);
    CHECK_THROWS_AS(depth(1, W("y"), cat), PreconditionError);
  }

  TEST_CASE("squares need order three") {
    // Every group of order 2 kills squares, and C3 does not.
    const auto d = depth(2, W("x^2"), default_catalog());
    CHECK(d.order == 3);
    CHECK(d.exhaustive);
  }

  TEST_CASE("small catalog fails to separate") {
    QuotientCatalog tiny;
    tiny.add("C2", cyclic_group(2));
    CHECK_THROWS_AS(depth(2, W("x^2"), tiny), NotSeparated);
    CHECK_THROWS_AS(depth(2, W("[x,y]"), tiny), NotSeparated);
  }

  TEST_CASE("budget and completeness") {
    DepthOptions opt;
    opt.budget = 20;  // only groups with |Q|^2 <= 20
    CHECK_THROWS_AS(depth(2, W("[x,y]"), small_groups_catalog(), opt), NotSeparated);

    // A catalog with gaps still answers, but not exhaustively.
    QuotientCatalog gappy;
    gappy.add("C2", cyclic_group(2));
    gappy.add("S3", symmetric_group(3));
    const auto d = depth(2, W("[x,y]"), gappy);
    CHECK(d.order == 6);
    CHECK(!d.exhaustive);
    gappy.complete_up_to = 6;
    CHECK(depth(2, W("[x,y]"), gappy).exhaustive);
  }

  TEST_CASE("invariance restricts the targets") {
    DepthOptions opt;
    opt.aut = nielsen_generators(2);
    const auto d = depth(2, W("x"), default_catalog(), opt);
    CHECK(d.order == 4);
    CHECK(d.invariance == "invariant");
    CHECK(kernel_invariant(d.witness, opt.aut));
  }

  TEST_CASE("depth agrees with brute force over small groups") {
    // Independent scan: smallest order of a group of order <= 24 admitting
    // a map that keeps the word alive.
    const auto cat = small_groups_catalog();
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<std::size_t> len(1, 4);
    for (int i = 0; i < 30; ++i) {
      const GroupWord w = random_reduced_word(2, len(rng), rng);
      std::size_t best = 0;
      for (const auto& e : cat.entries()) {
        if (best != 0 && e.order() >= best) continue;
        for (const auto& h : enumerate_homs(2, e.group, 1'000'000)) {
          if (h.evaluate(w) != e.group->identity()) {
            best = e.order();
            break;
          }
        }
      }
      CAPTURE(format_word(w, kF2));
      REQUIRE(best != 0);
      CHECK(depth(2, w, default_catalog()).order == best);
    }
  }
}

TEST_SUITE("kernel invariance") {
  TEST_CASE("examples") {
    const auto nielsen = nielsen_generators(2);
    const auto v4 = direct_product({cyclic_group(2), cyclic_group(2)});
    const Hom ab2{v4, {static_cast<FiniteGroup::Elem>(v4->find({1, 0})),
                       static_cast<FiniteGroup::Elem>(v4->find({0, 1}))}};
    CHECK(ab2.surjective());
    CHECK(kernel_invariant(ab2, nielsen));

    const auto c2 = cyclic_group(2);
    const Hom both{c2, {1, 1}};
    const auto mul = parse_aut_rules("mul: x -> x y", kF2);
    CHECK(!kernel_invariant(both, mul));
    CHECK(!kernel_invariant(both, nielsen));

    CHECK(kernel_invariant(Hom{trivial_group(), {0, 0}}, nielsen));
  }

  TEST_CASE("same_kernel") {
    const auto c2 = cyclic_group(2);
    const auto c4 = cyclic_group(4);
    const auto two = element_of_order(*c4, 2);
    CHECK(same_kernel(Hom{c2, {1, 0}}, Hom{c4, {two, 0}}));
    CHECK(!same_kernel(Hom{c2, {1, 0}}, Hom{c2, {0, 1}}));
  }

  TEST_CASE("agrees with a direct check on the ball of radius 6") {
    const auto words = ball(6);
    CHECK(words.size() == 1457);
    const auto nielsen = nielsen_generators(2);
    std::size_t invariant = 0;
    std::size_t tested = 0;
    for (const auto& target : {cyclic_group(2), cyclic_group(3), cyclic_group(4), symmetric_group(3)}) {
      for (const auto& h : enumerate_homs(2, target, 1000)) {
        const bool fast = kernel_invariant(h, nielsen);
        CAPTURE(h.images[0]);
        CAPTURE(h.images[1]);
        CHECK(fast == invariant_on_ball(h, nielsen, words));
        invariant += fast;
        ++tested;
      }
    }
    // Both outcomes occur.
    CHECK(invariant > 0);
    CHECK(invariant < tested);
  }
}

TEST_SUITE("invariant core") {
  TEST_CASE("characteristic kernel has orbit one") {
    const auto v4 = direct_product({cyclic_group(2), cyclic_group(2)});
    const Hom ab2{v4, {static_cast<FiniteGroup::Elem>(v4->find({1, 0})),
                       static_cast<FiniteGroup::Elem>(v4->find({0, 1}))}};
    const auto core = invariant_core(ab2, nielsen_generators(2), 8);
    CHECK(core.orbit.size() == 1);
    CHECK(same_kernel(core.diagonal, ab2));
  }

  TEST_CASE("swap orbit gives the mod 2 abelianization") {
    const Hom phi{cyclic_group(2), {1, 0}};
    const auto swap = parse_aut_rules("swap: x -> y, y -> x", kF2);
    const auto core = invariant_core(phi, swap, 8);
    CHECK(core.orbit.size() == 2);
    CHECK(core.diagonal.image_order() == 4);
    CHECK(kernel_invariant(core.diagonal, swap));
    const auto v4 = direct_product({cyclic_group(2), cyclic_group(2)});
    const Hom ab2{v4, {static_cast<FiniteGroup::Elem>(v4->find({1, 0})),
                       static_cast<FiniteGroup::Elem>(v4->find({0, 1}))}};
    CHECK(same_kernel(core.diagonal, ab2));

    // Under all Nielsen generators the three index-2 kernels form the orbit.
    const auto full = invariant_core(phi, nielsen_generators(2), 8);
    CHECK(full.orbit.size() == 3);
    CHECK(same_kernel(full.diagonal, ab2));
  }

  TEST_CASE("orbit blow-up") {
    // GL_2(F_11) permutes the 12 index-11 kernels of maps onto C11 transitively.
    const auto c11 = cyclic_group(11);
    const Hom phi{c11, {element_of_order(*c11, 11), 0}};
    CHECK_THROWS_AS(invariant_core(phi, nielsen_generators(2), 8), OrbitUnbounded);
    const auto core = invariant_core(phi, nielsen_generators(2), 64);
    CHECK(core.orbit.size() == 12);
    CHECK(core.diagonal.image_order() == 121);
  }

  TEST_CASE("every orbit member is a rule image of phi") {
    const auto nielsen = nielsen_generators(2);
    const auto s3 = symmetric_group(3);
    for (const auto& h : enumerate_homs(2, s3, 100)) {
      if (!h.surjective()) continue;
      const auto core = invariant_core(h, nielsen, 64);
      CHECK(kernel_invariant(core.diagonal, nielsen));
      // ker(core) lies inside ker(h).
      for (const auto& w : ball(4)) {
        if (core.diagonal.evaluate(w) == core.diagonal.target->identity()) {
          CHECK(h.evaluate(w) == s3->identity());
        }
      }
    }
  }
}

TEST_SUITE("project_to_factor") {
  TEST_CASE("A5 x A5 examples") {
    const auto a5 = alternating_group(5);
    const auto prod = direct_product({a5, a5});
    const auto five = element_of_order(*a5, 5);
    const auto three = element_of_order(*a5, 3);
    auto pair = [&](FiniteGroup::Elem a, FiniteGroup::Elem b) {
      return static_cast<FiniteGroup::Elem>(prod->find({a, b}));
    };
    // x survives only in the second factor.
    const Hom phi{prod, {pair(0, five), pair(three, 0)}};
    const auto second = project_to_factor(phi, W("x"));
    CHECK(second.factor == 1);
    CHECK(second.hom.images == std::vector<FiniteGroup::Elem>{five, 0});

    const Hom both{prod, {pair(three, five), pair(0, 0)}};
    CHECK(project_to_factor(both, W("x")).factor == 0);

    CHECK_THROWS_AS(project_to_factor(phi, W("x^5")), PreconditionError);
    CHECK_THROWS_AS(project_to_factor(Hom{a5, {five, 0}}, W("x")), PreconditionError);
  }

  TEST_CASE("single factor is the identity operation") {
    const auto a5 = alternating_group(5);
    const auto prod = direct_product({a5});
    const auto five = element_of_order(*a5, 5);
    const auto three = element_of_order(*a5, 3);
    const auto p5 = static_cast<FiniteGroup::Elem>(prod->find({five}));
    const auto p3 = static_cast<FiniteGroup::Elem>(prod->find({three}));
    const Hom phi{prod, {p5, p3}};
    const auto proj = project_to_factor(phi, W("[x,y]"));
    CHECK(proj.factor == 0);
    CHECK(proj.hom.images == std::vector<FiniteGroup::Elem>{five, three});
    CHECK(same_kernel(proj.hom, phi));
  }

  TEST_CASE("fixed factors keep invariant kernels") {
    // phi = (exponent sum mod 2, exponent sum mod 3); the rules preserve the
    // exponent sum, so both factor kernels are fixed.
    const auto prod = direct_product({cyclic_group(2), cyclic_group(3)});
    const auto g = static_cast<FiniteGroup::Elem>(prod->find({1, 1}));
    const Hom phi{prod, {g, g}};
    const auto rules = parse_aut_rules("swap: x -> y, y -> x\nneg: x -> x^-1, y -> y^-1", kF2);
    REQUIRE(kernel_invariant(phi, rules));
    for (std::size_t j = 0; j < 2; ++j) CHECK(kernel_invariant(project(phi, j), rules));
  }

  TEST_CASE("factors permuted by the rules") {
    // phi and phi o swap side by side in A5 x A5; swap exchanges the factor
    // kernels, so only the stabilizer of a factor keeps its kernel.
    const auto a5 = alternating_group(5);
    const auto prod = direct_product({a5, a5});
    const auto five = element_of_order(*a5, 5);
    const auto three = element_of_order(*a5, 3);
    const Hom phi{prod, {static_cast<FiniteGroup::Elem>(prod->find({five, three})),
                         static_cast<FiniteGroup::Elem>(prod->find({three, five}))}};
    const auto swap = parse_aut_rules("swap: x -> y, y -> x", kF2);
    CHECK(kernel_invariant(phi, swap));
    const Hom p0 = project(phi, 0);
    const Hom p1 = project(phi, 1);
    CHECK(!kernel_invariant(p0, swap));
    // The swap carries one factor kernel onto the other.
    const Hom p0_swapped{p0.target, {p0.images[1], p0.images[0]}};
    CHECK(same_kernel(p0_swapped, p1));
    // Rules fixing both factors keep both projections invariant.
    CHECK(kernel_invariant(p0, {}));
    CHECK(kernel_invariant(p1, {}));
  }
}

TEST_SUITE("catalog") {
  TEST_CASE("small groups match the known counts per order") {
    // Number of groups of order n for n = 1..24.
    const std::vector<std::size_t> known{1, 1, 1, 2, 1, 2, 1, 5, 2, 2, 1, 5,
                                         1, 2, 1, 14, 1, 5, 1, 5, 2, 2, 1, 15};
    const auto cat = small_groups_catalog();
    CHECK(cat.size() == 74);
    std::map<std::size_t, std::size_t> per_order;
    for (const auto& e : cat.entries()) ++per_order[e.order()];
    for (std::size_t n = 1; n <= 24; ++n) {
      CAPTURE(n);
      CHECK(per_order[n] == known[n - 1]);
    }
    CHECK(cat.complete_up_to == 24);
  }

  TEST_CASE("default catalog is sorted and tagged") {
    const auto& cat = default_catalog();
    for (std::size_t i = 1; i < cat.size(); ++i) CHECK(cat[i - 1].order() <= cat[i].order());
    for (const auto& e : cat.entries()) {
      for (const auto& form : e.lie_forms) {
        Integer product = 1;
        for (const auto& id : form) product *= lie_order(id);
        CAPTURE(e.name);
        CHECK(product == Integer(static_cast<unsigned long>(e.order())));
      }
    }
    REQUIRE(cat.find("A5") != nullptr);
    CHECK(cat.find("A5")->is_simple_lie());
    CHECK(cat.find("PSL(2,4)") == cat.find("A5"));
    CHECK(cat.find("S3") != nullptr);
    CHECK(!cat.find("S3")->is_lie_product());
  }

  TEST_CASE("isomorphic additions merge") {
    QuotientCatalog cat;
    const auto first = cat.add("S3", symmetric_group(3));
    const auto second = cat.add("D3", dihedral_group(3));
    CHECK(first == second);
    CHECK(cat.size() == 1);
    CHECK(cat.find("D3") == cat.find("S3"));
    cat.add("C6", cyclic_group(6));
    cat.add("C2", cyclic_group(2));
    CHECK(cat.size() == 3);
    CHECK(cat[0].order() == 2);
  }

  TEST_CASE("text format") {
    QuotientCatalog cat;
    load_catalog_text(cat, "# two groups\n"
                           "group V4 degree 4 : (1,2)(3,4) ; (1,3)(2,4)\n"
                           "group A5p degree 5 lie A1(4) : (1,2,3,4,5) ; (1,2,3)\n");
    REQUIRE(cat.size() == 2);
    CHECK(cat[0].order() == 4);
    CHECK(cat[1].order() == 60);
    CHECK(cat[1].is_simple_lie());
    CHECK_THROWS_AS(load_catalog_text(cat, "grp X degree 3 : (1,2)\n"), ParseError);
    CHECK_THROWS_AS(load_catalog_text(cat, "group X degree 3 (1,2)\n"), ParseError);
    CHECK_THROWS_AS(load_catalog_text(cat, "group X degree 3 lie Z9(2) : (1,2)\n"), ParseError);
    // A 7-cycle and (2,3,5)(4,7,6) generate a group of order 21, not PSL(2,7).
    CHECK_THROWS_AS(
        load_catalog_text(cat, "group F21 degree 7 lie A1(7) : (1,2,3,4,5,6,7) ; (2,3,5)(4,7,6)\n"),
        ParseError);
    load_catalog_text(cat, "group L27 degree 7 lie A1(7) : (1,2,3,4,5,6,7) ; (2,3)(4,7)\n");
    REQUIRE(cat.find("L27") != nullptr);
    CHECK(cat.find("L27")->order() == 168);
  }

  TEST_CASE("class filters") {
    CHECK(parse_class_filter("any").kind == ClassKind::any);
    const auto lie = parse_class_filter("lie:e=2");
    CHECK(lie.kind == ClassKind::simple_lie);
    CHECK(*lie.max_extension == 2);
    CHECK(parse_class_filter("lie-product").kind == ClassKind::lie_product);
    CHECK_THROWS_AS(parse_class_filter("any:e=2"), ParseError);
    CHECK_THROWS_AS(parse_class_filter("simple"), ParseError);

    const auto& cat = default_catalog();
    // PSL2(8) needs F_8, an extension of degree 3.
    const CatalogEntry* psl8 = cat.find("PSL(2,8)");
    REQUIRE(psl8 != nullptr);
    CHECK(!parse_class_filter("lie:e=2").accepts(*psl8));
    CHECK(parse_class_filter("lie:e=3").accepts(*psl8));
  }
}

TEST_SUITE("curves") {
  TEST_CASE("oracle on F2") {
    DepthOptions opt;
    const auto curve = rf_curve_oracle(2, default_catalog(), opt, 3);
    REQUIRE(curve.size() == 3);
    CHECK(curve[0].value == 2);
    CHECK(curve[0].words == 4);
    CHECK(curve[1].value == 3);  // x^2
    CHECK(curve[1].words == 12);
    for (std::size_t i = 1; i < curve.size(); ++i) CHECK(curve[i - 1].value <= curve[i].value);
    for (const auto& p : curve) CHECK(p.exhaustive);
  }

  TEST_CASE("pipeline on the Sanov group") {
    const GroupSpec sanov = test::load("sanov.grp");
    const auto curve = rf_curve_pipeline(sanov, {}, 4);
    REQUIRE(curve.size() == 4);
    for (std::size_t i = 1; i < curve.size(); ++i) CHECK(curve[i - 1].value <= curve[i].value);
    CHECK(curve[0].value == 81);
  }

  TEST_CASE("oracle is bounded by the pipeline") {
    const GroupSpec sanov = test::load("sanov.grp");
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<std::size_t> len(1, 4);
    for (int i = 0; i < 25; ++i) {
      // The Sanov generators are free, so words transfer to F_2 letter by letter.
      const GroupWord w = random_reduced_word(2, len(rng), rng);
      const auto cert = separate_element(sanov, w);
      CHECK(Integer(static_cast<unsigned long>(depth(2, w, default_catalog()).order)) <=
            cert.order_bound);
    }
  }

  TEST_CASE("power fits") {
    std::vector<std::pair<double, double>> sq, flat, cube;
    for (int n = 1; n <= 8; ++n) {
      sq.emplace_back(n, double(n) * n);
      flat.emplace_back(n, 7.0);
      cube.emplace_back(n, 3.0 * n * n * n);
    }
    const auto a = fit_polynomial(sq);
    CHECK(std::abs(a.exponent - 2.0) < 1e-9);
    CHECK(a.max_residual < 1e-9);
    CHECK(std::abs(fit_polynomial(flat).exponent) < 1e-9);
    const auto c = fit_polynomial(cube);
    CHECK(std::abs(c.coefficient - 3.0) < 1e-6);
    CHECK(std::abs(c.exponent - 3.0) < 1e-9);

    CHECK_THROWS(fit_polynomial(std::vector<std::pair<double, double>>{{1, 1}, {2, 4}}));
    CHECK_THROWS(fit_polynomial(std::vector<std::pair<double, double>>{{2, 1}, {2, 4}, {2, 5}}));
    CHECK_THROWS(fit_polynomial(std::vector<std::pair<double, double>>{{1, 1}, {2, 0}, {3, 5}}));
  }
}
