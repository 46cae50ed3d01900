#include "rfsep/specialize/specialize.hpp"

#include <algorithm>
#include <limits>

#include "rfsep/core/error.hpp"
#include "rfsep/ring/irreducible.hpp"

namespace rfsep {
namespace {

std::uint64_t checked_pow(std::uint64_t base, std::uint64_t exp) {
  std::uint64_t r = 1;
  for (std::uint64_t i = 0; i < exp; ++i) {
    if (r > std::numeric_limits<std::uint64_t>::max() / base) {
      throw CapacityError("reduction: D^{2s} does not fit in 64 bits");
    }
    r *= base;
  }
  return r;
}

// f / T_var^k where k is the minimal exponent of T_var.
MultiPoly strip_variable(const MultiPoly& f, std::size_t var, std::uint32_t k) {
  if (k == 0) return f;
  MultiPoly out(f.num_vars(), f.characteristic());
  for (const auto& [e, c] : f.terms()) {
    Exponent shifted = e;
    shifted[var] -= k;
    out.add_term(shifted, c);
  }
  return out;
}

MultiPoly constant_in(const MultiPoly& f, std::size_t var) {
  MultiPoly out(f.num_vars(), f.characteristic());
  for (const auto& [e, c] : f.terms()) {
    if (e[var] == 0) out.add_term(e, c);
  }
  return out;
}

void recurse(const MultiPoly& f, std::size_t var, std::uint64_t D,
             std::vector<std::uint64_t>& n, std::vector<std::string>& audit) {
  const std::size_t s = f.num_vars();
  if (var >= s || f.is_constant()) return;
  const std::string name = "T" + std::to_string(var + 1);
  if (var + 1 == s) {
    n[var] = 1;
    audit.push_back(name + ": last variable, n=1");
    return;
  }
  const std::uint32_t k = f.min_degree_in(var);
  const MultiPoly g = strip_variable(f, var, k);
  const MultiPoly h0 = constant_in(g, var);
  if (h0 == g) {
    n[var] = 0;
    audit.push_back(name + ": absent, n=0");
    recurse(g, var + 1, D, n, audit);
    return;
  }
  recurse(h0, var + 1, D, n, audit);
  n[var] = checked_pow(D, 2 * (s - var));
  audit.push_back(name + ": peeled T^" + std::to_string(k) + ", n=D^" +
                  std::to_string(2 * (s - var)) + "=" + std::to_string(n[var]));
}

}  // namespace

ReductionResult reduce_to_one_variable(const MultiPoly& f) {
  if (f.is_zero()) throw PreconditionError("reduce_to_one_variable: f = 0");
  const std::size_t s = f.num_vars();
  ReductionResult r;
  r.D = std::max<std::uint64_t>(static_cast<std::uint64_t>(f.degree()), 2);
  r.n_vec.assign(s, 0);
  if (f.is_constant()) {
    r.audit.push_back("constant: all n=0");
  } else {
    recurse(f, 0, r.D, r.n_vec, r.audit);
  }
  r.g = substitute_powers(f, r.n_vec);
  if (!r.g.is_zero()) return r;

  // Unreachable for D >= 2 by the degree argument; kept as a safety net.
  r.fallback = true;
  r.audit.push_back("recursive candidate vanished; exhaustive search");
  const std::uint64_t box = checked_pow(r.D, 2 * s);
  std::vector<std::uint64_t> n(s, 0);
  for (;;) {
    UniPoly g = substitute_powers(f, n);
    if (!g.is_zero()) {
      r.n_vec = n;
      r.g = std::move(g);
      return r;
    }
    std::size_t i = s;
    while (i > 0) {
      --i;
      if (n[i] < box) {
        ++n[i];
        std::fill(n.begin() + static_cast<std::ptrdiff_t>(i) + 1, n.end(), 0);
        break;
      }
      if (i == 0) throw InternalError("reduce_to_one_variable: exhaustive search failed");
    }
    if (s == 0) throw InternalError("reduce_to_one_variable: zero constant");
  }
}

PrimeChoice choose_prime(const UniPoly& h, const std::vector<UniPoly>& must_survive,
                         std::uint64_t s, std::uint64_t d) {
  if (h.characteristic() != 0) throw PreconditionError("choose_prime: h must be over Z");
  if (h.is_zero()) throw PreconditionError("choose_prime: h = 0");
  PrimeChoice out;
  out.log_max_coeff = log_abs(h.max_abs_coefficient());
  out.bound_term = Integer(static_cast<unsigned long>(2 * s + 2)) *
                   ipow(Integer(static_cast<unsigned long>(d)), 2 * s + 2);

  Integer m = h.coefficient(0) != 0 ? 0 : 1;
  for (;; ++m) {
    const Integer hm = h.evaluate(m);
    if (hm == 0) continue;
    std::vector<Integer> us;
    bool collapse = false;
    for (const auto& u : must_survive) {
      us.push_back(u.evaluate(m));
      collapse = collapse || us.back() == 0;
    }
    if (collapse) continue;
    for (std::uint64_t p = 2;; p = next_prime(p)) {
      const std::uint64_t res = residue(hm, p);
      if (res == 0) continue;
      bool ok = true;
      for (const auto& u : us) ok = ok && residue(u, p) != 0;
      if (!ok) continue;
      out.m = m;
      out.p = p;
      out.h_at_m = hm;
      out.residue = res;
      return out;
    }
  }
}

IrreducibleChoice choose_irreducible(const UniPoly& h,
                                     const std::vector<UniPoly>& must_survive) {
  const std::uint64_t p = h.characteristic();
  if (p == 0) throw PreconditionError("choose_irreducible: h must be over F_p");
  if (h.is_zero()) throw PreconditionError("choose_irreducible: h = 0");
  for (std::uint64_t deg = 1; deg <= 64; ++deg) {
    // Candidates in the order of enumerate_irreducibles: the base-p code of
    // (a_{deg-1}, ..., a_0) ascending.
    std::vector<std::uint64_t> digits(deg, 0);
    for (;;) {
      std::vector<Integer> coeffs;
      for (auto x : digits) coeffs.emplace_back(static_cast<unsigned long>(x));
      coeffs.emplace_back(1);
      const UniPoly w = UniPoly::from_coefficients(p, coeffs);
      if ((deg == 1 || is_irreducible_fp(w)) && !divides_fp(w, h) &&
          std::none_of(must_survive.begin(), must_survive.end(),
                       [&](const UniPoly& u) { return divides_fp(w, u); })) {
        IrreducibleChoice c;
        c.w = w;
        c.p = p;
        c.field_size = ipow(Integer(static_cast<unsigned long>(p)), deg);
        return c;
      }
      std::size_t i = 0;
      while (i < deg && ++digits[i] == p) digits[i++] = 0;
      if (i == deg) break;
    }
  }
  throw InternalError("choose_irreducible: no irreducible of degree <= 64");
}

SpecializationMap::SpecializationMap(const GroupSpec& spec, FiniteField field,
                                     std::vector<std::uint64_t> n_vec,
                                     std::optional<Integer> m)
    : field_(std::move(field)), n_vec_(std::move(n_vec)), m_(std::move(m)) {
  if (n_vec_.size() != spec.num_vars()) {
    throw StructuralError("specialization: exponent vector has the wrong length");
  }
  init(spec);
}

SpecializationMap SpecializationMap::char0(const GroupSpec& spec,
                                           std::vector<std::uint64_t> n_vec,
                                           const Integer& m, std::uint64_t p) {
  if (spec.characteristic() != 0) {
    throw PreconditionError("specialize_group_char0: spec is not over Z");
  }
  if (!is_prime(p)) throw PreconditionError("specialize_group_char0: p not prime");
  return {spec, FiniteField::prime_field(p), std::move(n_vec), m};
}

SpecializationMap SpecializationMap::charp(const GroupSpec& spec,
                                           std::vector<std::uint64_t> n_vec,
                                           const UniPoly& w) {
  if (spec.characteristic() == 0 || spec.characteristic() != w.characteristic()) {
    throw PreconditionError("specialize_group_charp: characteristic mismatch");
  }
  return {spec, FiniteField(w.characteristic(), w), std::move(n_vec), std::nullopt};
}

FiniteField::Elem SpecializationMap::map(const MultiPoly& f) const {
  const FiniteField::Elem base = m_ ? field_.from_integer(*m_) : field_.tau();
  FiniteField::Elem acc = 0;
  const UniPoly g = substitute_powers(f, n_vec_);
  for (const auto& [e, c] : g.terms()) {
    acc = field_.add(acc, field_.mul(field_.from_integer(c), field_.pow(base, e)));
  }
  return acc;
}

FiniteField::Elem SpecializationMap::map(const LocalizedElem& x) const {
  FiniteField::Elem v = map(x.numerator());
  for (std::size_t i = 0; i < den_inverse_.size(); ++i) {
    if (x.denominator()[i] > 0) {
      v = field_.mul(v, field_.pow(den_inverse_[i], x.denominator()[i]));
    }
  }
  return v;
}

FqMatrix SpecializationMap::map(const LMatrix& m) const {
  FqMatrix out(m.rows(), m.cols(), 0);
  for (std::size_t i = 0; i < m.data().size(); ++i) out.data()[i] = map(m.data()[i]);
  return out;
}

void SpecializationMap::init(const GroupSpec& spec) {
  dim_ = spec.dim();
  const auto& denoms = spec.ring()->denominators;
  for (std::size_t i = 0; i < denoms.size(); ++i) {
    const auto v = map(denoms[i]);
    if (v == 0) {
      throw DenominatorCollapse("denominator " + to_string(denoms[i]) +
                                " specializes to 0");
    }
    den_inverse_.push_back(field_.inv(v));
  }
  for (const auto& g : spec.generators()) {
    images_.push_back(map(g.matrix));
    inverse_images_.push_back(map(g.inverse));
  }
}

const FqMatrix& SpecializationMap::letter_image(const Letter& l) const {
  if (l.gen >= images_.size()) throw PreconditionError("letter out of range");
  return l.sign > 0 ? images_[l.gen] : inverse_images_[l.gen];
}

FqMatrix SpecializationMap::word_image(const GroupWord& w) const {
  FqMatrix acc = fq_identity(field_, dim_);
  for (const auto& l : w.letters()) acc = fq_mul(field_, acc, letter_image(l));
  return acc;
}

std::vector<FqMatrix> SpecializationMap::generator_images() const { return images_; }

SpecializationMap specialize_group_char0(const GroupSpec& spec,
                                         std::vector<std::uint64_t> n_vec,
                                         const Integer& m, std::uint64_t p) {
  return SpecializationMap::char0(spec, std::move(n_vec), m, p);
}

SpecializationMap specialize_group_charp(const GroupSpec& spec,
                                         std::vector<std::uint64_t> n_vec,
                                         const IrreducibleChoice& w) {
  return SpecializationMap::charp(spec, std::move(n_vec), w.w);
}

}  // namespace rfsep
