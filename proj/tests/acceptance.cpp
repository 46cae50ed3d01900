// Acceptance run: one PASS/FAIL line per criterion.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "rfsep/core/error.hpp"
#include "rfsep/lietype/lietype.hpp"
#include "rfsep/ring/irreducible.hpp"
#include "rfsep/rfgrowth/catalog.hpp"
#include "rfsep/rfgrowth/constructions.hpp"
#include "rfsep/rfgrowth/curve.hpp"
#include "rfsep/rfgrowth/homs.hpp"
#include "rfsep/separate/separate.hpp"
#include "rfsep/specialize/specialize.hpp"
#include "rfsep/witness/witness.hpp"
#include "test_util.hpp"

using namespace rfsep;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt_seconds(double s) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2fs", s);
  return buf;
}

// All nontrivial reduced words of length <= max_len over `rank` generators.
std::vector<GroupWord> all_words(std::size_t rank, std::size_t max_len) {
  std::vector<GroupWord> out;
  std::vector<GroupWord> layer{GroupWord{}};
  for (std::size_t r = 0; r < max_len; ++r) {
    std::vector<GroupWord> next;
    for (const auto& w : layer) {
      for (std::uint32_t g = 0; g < rank; ++g) {
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

FiniteGroup::Elem eval(const FiniteGroup& g, const std::vector<FiniteGroup::Elem>& images,
                       const GroupWord& w) {
  FiniteGroup::Elem acc = g.identity();
  for (const auto& l : w.letters()) {
    const auto x = images[l.gen];
    acc = g.mul(acc, l.sign > 0 ? x : g.inv(x));
  }
  return acc;
}

std::vector<FiniteGroup::Elem> random_images(const FiniteGroup& g, std::mt19937_64& rng) {
  std::uniform_int_distribution<FiniteGroup::Elem> pick(0, static_cast<FiniteGroup::Elem>(g.order() - 1));
  return {pick(rng), pick(rng)};
}

GroupWord random_word(std::mt19937_64& rng, std::size_t rank, std::size_t max_len) {
  std::uniform_int_distribution<std::size_t> len(1, max_len);
  return random_reduced_word(rank, len(rng), rng);
}

Outcome variable_reduction() {
  const auto start = Clock::now();
  std::mt19937_64 rng(1);
  std::uniform_int_distribution<std::size_t> vars(1, 3);
  const std::uint64_t chars[] = {0, 2, 3, 5};
  std::size_t tested = 0, nonzero = 0, in_box = 0;
  while (tested < 500) {
    const std::uint64_t p = chars[tested % 4];
    const std::size_t s = vars(rng);
    const MultiPoly f = test::random_poly(rng, s, p, 4, 6);
    if (f.is_zero()) continue;
    const auto r = reduce_to_one_variable(f);
    const bool ok_g = !r.g.is_zero() && r.g == substitute_powers(f, r.n_vec);
    std::uint64_t d = std::max<std::uint64_t>(static_cast<std::uint64_t>(f.degree()), 2);
    std::uint64_t box = 1;
    for (std::size_t i = 0; i < 2 * s; ++i) box *= d;
    bool ok_box = true;
    for (auto n : r.n_vec) ok_box = ok_box && n <= box;
    nonzero += ok_g;
    in_box += ok_box;
    ++tested;
  }
  const double t = seconds_since(start);
  return {nonzero == 500 && in_box == 500 && t < 10.0,
          "nonzero " + std::to_string(nonzero) + "/500, exponents in box " + std::to_string(in_box) +
              "/500, " + fmt_seconds(t) + " (limit 10s)"};
}

Outcome gauss_counts() {
  const auto start = Clock::now();
  std::size_t matched = 0, total = 0;
  for (std::uint64_t p : {2, 3, 5}) {
    for (std::uint64_t m = 1; m <= 6; ++m) {
      ++total;
      const std::size_t listed = irreducibles_of_degree(p, m).size();
      if (Integer(static_cast<unsigned long>(listed)) == gauss_irreducible_count(p, m)) ++matched;
    }
  }
  const bool examples = irreducibles_of_degree(2, 2).size() == 1 && irreducibles_of_degree(2, 3).size() == 2;
  const double t = seconds_since(start);
  return {matched == total && examples && t < 5.0,
          std::to_string(matched) + "/" + std::to_string(total) + " (p, m) pairs match, " + fmt_seconds(t) +
              " (limit 5s)"};
}

Outcome sanov_soundness() {
  const auto start = Clock::now();
  const GroupSpec sanov = test::load("sanov.grp");
  std::map<std::uint64_t, std::size_t> image_orders;  // keyed by prime
  std::size_t words = 0, passed = 0;
  std::string first_failure;
  for (const auto& w : all_words(2, 6)) {
    if (is_identity(evaluate_word(sanov, w))) continue;
    ++words;
    bool ok = false;
    try {
      const auto cert = separate_element(sanov, w);
      const Integer p4 = ipow(cert.field_size, 4);
      auto it = image_orders.find(cert.prime);
      if (it == image_orders.end()) {
        it = image_orders.emplace(cert.prime, finite_image(sanov, cert, 1'000'000)->order()).first;
      }
      ok = verify_certificate(sanov, cert).ok &&
           !fq_is_identity(certificate_map(sanov, cert).word_image(w)) &&
           cert.order_bound <= p4 && Integer(static_cast<unsigned long>(it->second)) <= p4;
    } catch (const Error& e) {
      if (first_failure.empty()) first_failure = e.what();
    }
    passed += ok;
    if (!ok && first_failure.empty()) first_failure = sanov.format(w);
  }
  const double t = seconds_since(start);
  std::string detail = std::to_string(passed) + "/" + std::to_string(words) + " words, " + fmt_seconds(t) +
                       " (limit 60s)";
  if (!first_failure.empty()) detail += ", first failure: " + first_failure;
  return {passed == words && words > 0 && t < 60.0, detail};
}

Outcome known_depths() {
  const Alphabet f2 = Alphabet::free(2);
  const auto dx = depth(2, parse_word("x", f2), default_catalog());
  const auto dc = depth(2, parse_word("[x,y]", f2), default_catalog());
  return {dx.order == 2 && dc.order == 6 && dx.exhaustive && dc.exhaustive,
          "depth(x) = " + std::to_string(dx.order) + (dx.exhaustive ? " exhaustive" : " not exhaustive") +
              ", depth([x,y]) = " + std::to_string(dc.order) +
              (dc.exhaustive ? " exhaustive" : " not exhaustive")};
}

Outcome oracle_vs_pipeline() {
  const GroupSpec sanov = test::load("sanov.grp");
  std::mt19937_64 rng(5);
  std::size_t tested = 0, ok = 0;
  while (tested < 100) {
    // The Sanov generators are free, so a word in A, B is a word in x, y.
    const GroupWord w = random_word(rng, 2, 5);
    ++tested;
    const auto cert = separate_element(sanov, w);
    const auto d = depth(2, w, default_catalog());
    if (Integer(static_cast<unsigned long>(d.order)) <= cert.order_bound) ++ok;
  }
  return {ok == 100, std::to_string(ok) + "/100 words with catalog depth <= certificate order bound"};
}

Outcome witness_properties() {
  const auto f2 = MalabelianContext::free_group(2);
  const auto s5 = symmetric_group(5);
  std::mt19937_64 rng(6);
  std::uniform_int_distribution<std::size_t> level(1, 3);
  std::size_t violations = 0, checks = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const GroupWord a = random_word(rng, 2, 5);
    const std::size_t n = level(rng);
    const auto rec = derived_witness(f2, a, n);
    const GroupWord& w = *rec.word;
    const std::size_t base = std::max(a.length(), f2.kappa());
    if (f2.is_trivial(w)) ++violations;
    if (Integer(static_cast<unsigned long>(w.length())) > ipow(8, n) * Integer(static_cast<unsigned long>(base))) {
      ++violations;
    }
    for (int h = 0; h < 50; ++h) {
      const auto images = random_images(*s5, rng);
      const auto pa = eval(*s5, images, a);
      const auto pw = eval(*s5, images, w);
      if (pa == s5->identity() && pw != s5->identity()) ++violations;
      const Subgroup closure = normal_closure(*s5, generate_subgroup(*s5, images), {pa});
      if (!derived_series_term(*s5, closure, n).contains(pw)) ++violations;
      ++checks;
    }
  }
  return {violations == 0, std::to_string(violations) + " violations over 200 words and " +
                               std::to_string(checks) + " quotient checks"};
}

Outcome lcm_properties() {
  const auto f2 = MalabelianContext::free_group(2);
  const auto s5 = symmetric_group(5);
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<std::size_t> size(1, 4);
  std::size_t violations = 0;
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<GroupWord> t;
    const std::size_t k = size(rng);
    std::size_t longest = 0;
    for (std::size_t i = 0; i < k; ++i) {
      t.push_back(random_word(rng, 2, 4));
      longest = std::max(longest, t.back().length());
    }
    const auto tree = lcm_witness(f2, t);
    const std::size_t bound = 4 * k * k * (longest + 3 * f2.kappa());
    if (f2.is_trivial(tree.result) || tree.result.length() > bound) ++violations;
    for (int h = 0; h < 50; ++h) {
      const auto images = random_images(*s5, rng);
      if (eval(*s5, images, tree.result) == s5->identity()) continue;
      for (const auto& x : t) {
        if (eval(*s5, images, x) == s5->identity()) ++violations;
      }
    }
  }
  return {violations == 0, std::to_string(violations) + " violations over 100 sets and 50 quotients each"};
}

Outcome lie_catalog() {
  const std::vector<std::pair<LieFamily, std::uint64_t>> families{
      {LieFamily::A, 1}, {LieFamily::B, 2}, {LieFamily::C, 3}, {LieFamily::D, 4}, {LieFamily::TwistedA, 2}};
  std::size_t checked = 0, divisible = 0;
  for (std::uint64_t q = 2; q <= 32; ++q) {
    std::uint64_t p = 2;
    while (q % p != 0) ++p;
    std::uint64_t r = q;
    while (r % p == 0) r /= p;
    if (r != 1) continue;
    for (const auto& [family, min_rank] : families) {
      for (std::uint64_t n = min_rank; n <= 4; ++n) {
        ++checked;
        if (lie_order(make_lie_id_q(family, n, q)) % Integer(static_cast<unsigned long>(q)) == 0) ++divisible;
      }
    }
  }
  const std::vector<std::string> expected{"SL_2(2)", "SL_2(3)",  "SU_3(2)",  "Sp_4(2)",
                                          "G_2(2)",  "^2B_2(2)", "^2G_2(3)", "^2F_4(2)"};
  const bool tits = tits_exception_names() == expected;
  return {checked > 0 && divisible == checked && tits,
          "q | order for " + std::to_string(divisible) + "/" + std::to_string(checked) +
              " classical ids, Tits list " + (tits ? "matches (8 entries)" : "differs")};
}

Outcome frobenius_semidirect() {
  const auto start = Clock::now();
  const FiniteRep sl = lie_natural_rep(make_lie_id_q(LieFamily::A, 1, 4), false);
  const FiniteField& big = sl.field;
  const auto g = materialize(sl, 1000);
  const auto* real = dynamic_cast<const MatrixRealization*>(&g->realization());
  const FiniteField f2 = FiniteField::prime_field(2);
  std::vector<std::pair<FqMatrix, std::uint64_t>> abstract;
  std::vector<FqMatrix> images;
  for (FiniteGroup::Elem x = 0; x < g->order(); ++x) {
    const FqMatrix m = real->decode(g->symbols(x).data());
    for (std::uint64_t t = 0; t < 2; ++t) {
      abstract.emplace_back(m, t);
      images.push_back(frobenius_semidirect_image(big, m, t));
    }
  }
  std::set<std::vector<std::uint64_t>> distinct;
  for (const auto& m : images) distinct.insert(m.data());
  std::size_t failures = 0;
  for (std::size_t i = 0; i < abstract.size(); ++i) {
    for (std::size_t j = 0; j < abstract.size(); ++j) {
      const auto& [g1, t1] = abstract[i];
      const auto& [g2, t2] = abstract[j];
      FqMatrix twisted = g2;
      if (t1 == 1) twisted = fq_frobenius(big, g2);
      const FqMatrix expect = frobenius_semidirect_image(big, fq_mul(big, g1, twisted), (t1 + t2) % 2);
      if (fq_mul(f2, images[i], images[j]) != expect) ++failures;
    }
  }
  const double t = seconds_since(start);
  const std::size_t dim = images.empty() ? 0 : images.front().rows();
  return {failures == 0 && distinct.size() == 120 && abstract.size() == 120 && dim == 4 && t < 30.0,
          std::to_string(abstract.size() * abstract.size() - failures) + "/" +
              std::to_string(abstract.size() * abstract.size()) + " pairs multiplicative, " +
              std::to_string(distinct.size()) + " distinct " + std::to_string(dim) + "x" +
              std::to_string(dim) + " images over F_2, " + fmt_seconds(t) + " (limit 30s)"};
}

Outcome degree_coeff_bounds() {
  const GroupSpec poly = test::load("poly.grp");
  std::mt19937_64 rng(10);
  std::size_t deg_ok = 0, coeff_ok = 0;
  for (int i = 0; i < 500; ++i) {
    const GroupWord w = random_word(rng, poly.basis_count(), 12);
    deg_ok += check_degree_bound(poly, w).holds;
    coeff_ok += check_coeff_bound(poly, w).holds;
  }
  return {deg_ok == 500 && coeff_ok == 500,
          "degree " + std::to_string(deg_ok) + "/500, coefficient " + std::to_string(coeff_ok) + "/500"};
}

Outcome growth_curve() {
  const GroupSpec sanov = test::load("sanov.grp");
  const auto curve = rf_curve_pipeline(sanov, {}, 6);
  bool monotone = curve.size() == 6;
  for (std::size_t i = 1; i < curve.size(); ++i) monotone = monotone && curve[i - 1].value <= curve[i].value;
  const PowerFit fit = fit_polynomial(curve);
  std::ostringstream values;
  for (const auto& p : curve) values << (p.n == 1 ? "" : ",") << p.value.get_str();
  std::ostringstream detail;
  detail << "values " << values.str() << ", d = " << fit.exponent << ", max residual "
         << fit.max_residual << " (limit 1.0)";
  return {monotone && std::isfinite(fit.exponent) && fit.max_residual < 1.0, detail.str()};
}

Outcome invariance_machinery() {
  const auto nielsen = nielsen_generators(2);
  const auto v4 = direct_product({cyclic_group(2), cyclic_group(2)});
  const Hom ab2{v4, {static_cast<FiniteGroup::Elem>(v4->find({1, 0})),
                     static_cast<FiniteGroup::Elem>(v4->find({0, 1}))}};
  const bool ab2_invariant = kernel_invariant(ab2, nielsen);
  const Hom single{cyclic_group(2), {1, 0}};
  const bool single_invariant = kernel_invariant(single, nielsen);
  const auto core = invariant_core(single, nielsen, 64);
  const bool reproduces = core.diagonal.image_order() == 4 && same_kernel(core.diagonal, ab2) &&
                          kernel_invariant(core.diagonal, nielsen);
  return {ab2_invariant && !single_invariant && reproduces,
          std::string("mod-2 abelianization ") + (ab2_invariant ? "invariant" : "not invariant") +
              ", single C2 " + (single_invariant ? "invariant" : "not invariant") + ", core orbit " +
              std::to_string(core.orbit.size()) + " with image order " +
              std::to_string(core.diagonal.image_order())};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"variable reduction", variable_reduction},
      {"Gauss counts", gauss_counts},
      {"pipeline soundness on the Sanov group", sanov_soundness},
      {"known depth values", known_depths},
      {"oracle vs pipeline", oracle_vs_pipeline},
      {"witness properties", witness_properties},
      {"lcm properties", lcm_properties},
      {"Lie type catalog", lie_catalog},
      {"Frobenius semidirect representation", frobenius_semidirect},
      {"degree and coefficient bounds", degree_coeff_bounds},
      {"growth curve sanity", growth_curve},
      {"invariance machinery", invariance_machinery},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += !o.pass;
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << (i + 1) << " (" << criteria[i].first
              << "): " << o.detail << std::endl;
  }
  return failed == 0 ? 0 : 1;
}
