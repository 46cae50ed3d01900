#include "rfsep/separate/separate.hpp"

#include <algorithm>

#include "rfsep/core/error.hpp"
#include "rfsep/ring/irreducible.hpp"
#include "rfsep/ring/parse.hpp"
#include "rfsep/witness/witness.hpp"

namespace rfsep {
namespace {

std::optional<std::string> inline_text(std::string text) {
  if (text.size() > kMaxInlineText) return std::nullopt;
  return text;
}

struct Witness {
  LMatrix matrix;
  Integer length;
  std::vector<GroupWord> conjugators;
  std::optional<GroupWord> word;
};

// f = Phi^L (h - I) at the first nonzero entry in row-major order.
struct EntryChoice {
  std::size_t row = 0;
  std::size_t col = 0;
  MultiPoly f;
};

EntryChoice choose_entry(const GroupSpec& spec, const LMatrix& h,
                         const Integer& length) {
  if (!length.fits_ulong_p() || length > 100'000'000) {
    throw CapacityError("witness too long to clear denominators");
  }
  const std::uint64_t L = length.get_ui();
  const DenExponent phi = phi_exponent(spec);
  for (auto e : phi) {
    if (e != 0 && L > 0xFFFFFFFFull / e) {
      throw CapacityError("Phi power exponent overflow");
    }
  }
  const auto cleared = clear_denominators(spec, h, L);
  const MultiPoly phi_power = phi_product(spec).pow(L);
  for (std::size_t i = 0; i < h.rows(); ++i) {
    for (std::size_t j = 0; j < h.cols(); ++j) {
      MultiPoly f = cleared(i, j);
      if (i == j) f -= phi_power;
      if (!f.is_zero()) return {i, j, std::move(f)};
    }
  }
  throw PreconditionError("element evaluates to the identity");
}

std::vector<UniPoly> denominator_traces(const GroupSpec& spec,
                                        const std::vector<std::uint64_t>& n) {
  std::vector<UniPoly> out;
  for (const auto& s : spec.ring()->denominators.elements()) {
    out.push_back(substitute_powers(s, n));
  }
  return out;
}

// Image of the nested commutator witness computed in the finite field by
// the same straight-line recursion as over the localization.
FqMatrix witness_image(const SpecializationMap& map, const GroupWord& a,
                       const std::vector<GroupWord>& conjugators) {
  const auto& field = map.field();
  FqMatrix v = map.word_image(a);
  FqMatrix vinv = map.word_image(a.inverse());
  for (const auto& k : conjugators) {
    const FqMatrix kv = map.word_image(k);
    const FqMatrix kinv = map.word_image(k.inverse());
    const FqMatrix c = fq_mul(field, fq_mul(field, kv, v), kinv);
    const FqMatrix cinv = fq_mul(field, fq_mul(field, kv, vinv), kinv);
    FqMatrix next = fq_mul(field, fq_mul(field, fq_mul(field, v, c), vinv), cinv);
    FqMatrix next_inv = fq_mul(field, fq_mul(field, fq_mul(field, c, v), cinv), vinv);
    v = std::move(next);
    vinv = std::move(next_inv);
  }
  return v;
}

std::uint64_t predicted_length(std::uint64_t a_len, std::size_t level,
                               std::size_t kappa_max) {
  std::uint64_t L = a_len;
  for (std::size_t j = 0; j < level; ++j) {
    if (L > (std::uint64_t{1} << 58)) return std::uint64_t{1} << 60;
    L = 4 * L + 4 * kappa_max;
  }
  return L;
}

}  // namespace

SeparationCertificate separate_element(const GroupSpec& spec, const GroupWord& a,
                                       const SeparationOptions& options) {
  const LMatrix a_matrix = evaluate_word(spec, a);
  if (is_identity(a_matrix)) {
    throw PreconditionError("separate_element: the word evaluates to the identity");
  }

  SeparationCertificate cert;
  cert.mode = options.mode;
  cert.dimension = spec.dim();
  cert.characteristic = spec.characteristic();
  cert.num_vars = spec.num_vars();
  cert.input_word = spec.format(a);
  cert.solvable_constant = options.solvable_constant;
  cert.kappa = options.kappa;
  cert.kappa_max = options.kappa_max;

  Witness h;
  if (options.mode == SeparationMode::direct) {
    h.matrix = a_matrix;
    h.length = Integer(static_cast<unsigned long>(a.length()));
    h.word = a;
  } else {
    const std::size_t level = solvable_depth(spec.dim(), options.solvable_constant);
    const auto constants = generator_constants(spec);
    const std::uint64_t L = predicted_length(a.length(), level, options.kappa_max);
    if (constants.K > 0 && (L >= (std::uint64_t{1} << 60) ||
                            constants.K * L > options.degree_cap)) {
      throw CapacityError("semisimple witness would reach degree about " +
                          std::to_string(constants.K) + " * " + std::to_string(L) +
                          ", above the cap " + std::to_string(options.degree_cap));
    }
    auto ctx = MalabelianContext::matrix_group(std::make_shared<GroupSpec>(spec),
                                               options.kappa, options.kappa_max);
    WitnessRecord rec = derived_witness(ctx, a, level);
    cert.level = level;
    cert.kappa = rec.kappa_eff;
    h.matrix = std::move(*rec.matrix);
    h.length = rec.length;
    h.conjugators = rec.conjugators;
    h.word = rec.word;
  }
  for (const auto& k : h.conjugators) cert.conjugators.push_back(spec.format(k));
  cert.witness_length = h.length;
  if (h.word) cert.witness_word = inline_text(spec.format(*h.word));

  EntryChoice entry = choose_entry(spec, h.matrix, h.length);
  cert.entry_row = entry.row;
  cert.entry_col = entry.col;
  cert.entry_poly = inline_text(to_string(entry.f));
  cert.entry_degree = entry.f.degree();
  cert.entry_terms = entry.f.term_count();

  ReductionResult red = reduce_to_one_variable(entry.f);
  cert.exponents = red.n_vec;
  cert.reduction_box_base = red.D;
  cert.reduction_fallback = red.fallback;
  cert.trace_poly = inline_text(to_string(red.g));
  cert.trace_degree = red.g.degree();

  const auto survive = denominator_traces(spec, red.n_vec);
  std::optional<SpecializationMap> map;
  if (spec.characteristic() == 0) {
    PrimeChoice pc = choose_prime(red.g, survive, spec.num_vars(),
                                  static_cast<std::uint64_t>(entry.f.degree()));
    cert.eval_point = pc.m;
    cert.prime = pc.p;
    cert.trace_residue = pc.residue;
    cert.field_size = Integer(static_cast<unsigned long>(pc.p));
    cert.diag_log_max_coeff = pc.log_max_coeff;
    cert.diag_bound_term = pc.bound_term;
    cert.diag_trace_value_bits = mpz_sizeinbase(pc.h_at_m.get_mpz_t(), 2);
    map.emplace(specialize_group_char0(spec, red.n_vec, pc.m, pc.p));
  } else {
    IrreducibleChoice ic = choose_irreducible(red.g, survive);
    cert.prime = ic.p;
    cert.irreducible = to_string(ic.w);
    cert.field_size = ic.field_size;
    cert.diag_log_max_coeff = log_abs(red.g.max_abs_coefficient());
    cert.diag_bound_term = 0;
    map.emplace(specialize_group_charp(spec, red.n_vec, ic));
  }
  cert.order_bound = ipow(cert.field_size, spec.dim() * spec.dim());

  const FqMatrix image = witness_image(*map, a, h.conjugators);
  if (!(image == map->map(h.matrix))) {
    throw InvariantViolation("specialization is not multiplicative on the witness");
  }
  if (fq_is_identity(image)) {
    throw InvariantViolation("specialized witness is the identity");
  }
  cert.image = fq_format(map->field(), image);
  return cert;
}

SpecializationMap certificate_map(const GroupSpec& spec,
                                  const SeparationCertificate& cert) {
  if (spec.characteristic() == 0) {
    if (!cert.eval_point) throw ValidationError("certificate lacks an evaluation point");
    return specialize_group_char0(spec, cert.exponents, *cert.eval_point, cert.prime);
  }
  if (!cert.irreducible) throw ValidationError("certificate lacks an irreducible");
  IrreducibleChoice ic;
  ic.w = parse_unipoly(*cert.irreducible, spec.characteristic());
  ic.p = spec.characteristic();
  return specialize_group_charp(spec, cert.exponents, ic);
}

namespace {

VerificationResult fail(std::string reason) { return {false, std::move(reason)}; }

VerificationResult verify_impl(const GroupSpec& spec, const SeparationCertificate& cert) {
  if (cert.dimension != spec.dim() || cert.characteristic != spec.characteristic() ||
      cert.num_vars != spec.num_vars()) {
    return fail("context mismatch");
  }
  GroupWord a;
  try {
    a = spec.parse(cert.input_word);
  } catch (const Error& e) {
    return fail(std::string("input word: ") + e.what());
  }
  if (is_identity(evaluate_word(spec, a))) return fail("input word is trivial");

  // Replay the witness.
  std::vector<GroupWord> ks;
  for (const auto& text : cert.conjugators) {
    try {
      ks.push_back(spec.parse(text));
    } catch (const Error& e) {
      return fail(std::string("conjugator: ") + e.what());
    }
    if (ks.back().length() > cert.kappa_max) return fail("conjugator longer than kappa_max");
  }
  if (cert.mode == SeparationMode::direct && (!ks.empty() || cert.level != 0)) {
    return fail("direct mode certificate carries a witness level");
  }
  if (ks.size() != cert.level) return fail("conjugator count differs from level");
  LMatrix h = evaluate_word(spec, a);
  LMatrix hinv = evaluate_word(spec, a.inverse());
  Integer length(static_cast<unsigned long>(a.length()));
  for (const auto& k : ks) {
    const LMatrix kv = evaluate_word(spec, k);
    const LMatrix kinv = evaluate_word(spec, k.inverse());
    const LMatrix c = kv * h * kinv;
    const LMatrix cinv = kv * hinv * kinv;
    LMatrix next = h * c * hinv * cinv;
    LMatrix next_inv = c * h * cinv * hinv;
    h = std::move(next);
    hinv = std::move(next_inv);
    if (is_identity(h)) return fail("witness becomes trivial");
    length = 4 * length + 4 * Integer(static_cast<unsigned long>(k.length()));
  }
  if (length != cert.witness_length) return fail("witness length");

  EntryChoice entry;
  try {
    entry = choose_entry(spec, h, length);
  } catch (const Error& e) {
    return fail(std::string("entry: ") + e.what());
  }
  if (entry.row != cert.entry_row || entry.col != cert.entry_col) {
    return fail("entry selection");
  }
  if (cert.entry_poly && *cert.entry_poly != to_string(entry.f)) {
    return fail("entry polynomial");
  }
  if (cert.entry_degree != entry.f.degree() || cert.entry_terms != entry.f.term_count()) {
    return fail("entry polynomial");
  }

  if (cert.exponents.size() != spec.num_vars()) return fail("exponent vector length");
  const std::uint64_t D = std::max<long>(entry.f.degree(), 2);
  const Integer box = ipow(Integer(static_cast<unsigned long>(D)), 2 * spec.num_vars());
  for (auto n : cert.exponents) {
    if (Integer(static_cast<unsigned long>(n)) > box) return fail("exponent out of range");
  }
  const UniPoly g = substitute_powers(entry.f, cert.exponents);
  if (g.is_zero()) return fail("trace polynomial vanishes");
  if (cert.trace_poly && *cert.trace_poly != to_string(g)) return fail("trace polynomial");
  if (cert.trace_degree != g.degree()) return fail("trace polynomial");

  if (spec.characteristic() == 0) {
    if (!cert.eval_point || cert.prime < 2 || !is_prime(cert.prime)) {
      return fail("modulus condition");
    }
    if (unipoly_eval_mod(g, *cert.eval_point, cert.prime) == 0) {
      return fail("modulus condition");
    }
    if (cert.field_size != Integer(static_cast<unsigned long>(cert.prime))) {
      return fail("field size");
    }
  } else {
    if (!cert.irreducible || cert.prime != spec.characteristic()) {
      return fail("modulus condition");
    }
    UniPoly w;
    try {
      w = parse_unipoly(*cert.irreducible, spec.characteristic());
    } catch (const Error&) {
      return fail("modulus condition");
    }
    if (w.degree() < 1 || !w.is_monic() || !is_irreducible_fp(w) || divides_fp(w, g)) {
      return fail("modulus condition");
    }
    if (cert.field_size !=
        ipow(Integer(static_cast<unsigned long>(cert.prime)), w.degree())) {
      return fail("field size");
    }
  }

  std::optional<SpecializationMap> map;
  try {
    map.emplace(certificate_map(spec, cert));
  } catch (const DenominatorCollapse&) {
    return fail("denominator collapse");
  }
  const FqMatrix image = witness_image(*map, a, ks);
  if (fq_is_identity(image)) return fail("image is the identity");
  if (fq_format(map->field(), image) != cert.image) return fail("image mismatch");
  if (cert.order_bound != ipow(cert.field_size, spec.dim() * spec.dim())) {
    return fail("order bound");
  }
  return {true, "ok"};
}

}  // namespace

VerificationResult verify_certificate(const GroupSpec& spec,
                                      const SeparationCertificate& cert) {
  try {
    return verify_impl(spec, cert);
  } catch (const std::exception& e) {
    return fail(std::string("error during verification: ") + e.what());
  }
}

std::shared_ptr<FiniteGroup> finite_image(const GroupSpec& spec,
                                          const SeparationCertificate& cert,
                                          std::size_t cap) {
  const SpecializationMap map = certificate_map(spec, cert);
  return matrix_group(map.field(), spec.dim(), map.generator_images(), false, cap);
}

FiniteGroup::Elem word_element(const FiniteGroup& q, const GroupWord& w) {
  FiniteGroup::Elem acc = q.identity();
  for (const auto& l : w.letters()) {
    if (l.gen >= q.generators().size()) throw PreconditionError("letter out of range");
    const auto g = q.generators()[l.gen];
    acc = q.mul(acc, l.sign > 0 ? g : q.inv(g));
  }
  return acc;
}

Subgroup normal_closure_derived_depth(const FiniteGroup& q, FiniteGroup::Elem x,
                                      std::size_t n) {
  if (q.order() > 100'000) throw CapacityError("group too large for subgroup analysis");
  const Subgroup closure = normal_closure(q, whole_group(q), {x});
  return derived_series_term(q, closure, n);
}

}  // namespace rfsep
