#include "rfsep/ring/unipoly.hpp"

#include <limits>
#include <sstream>

#include "rfsep/core/error.hpp"

namespace rfsep {

UniPoly::UniPoly(std::uint64_t characteristic)
    : characteristic_(characteristic) {
  if (characteristic != 0 && !is_prime(characteristic)) {
    throw PreconditionError("characteristic must be 0 or prime");
  }
}

UniPoly UniPoly::constant(std::uint64_t characteristic, const Integer& c) {
  return monomial(characteristic, 0, c);
}

UniPoly UniPoly::monomial(std::uint64_t characteristic, std::uint64_t exp,
                          const Integer& c) {
  UniPoly h(characteristic);
  h.add_term(exp, c);
  return h;
}

UniPoly UniPoly::from_coefficients(std::uint64_t characteristic,
                                   const std::vector<Integer>& coeffs) {
  UniPoly h(characteristic);
  for (std::size_t i = 0; i < coeffs.size(); ++i) h.add_term(i, coeffs[i]);
  return h;
}

long long UniPoly::degree() const {
  if (terms_.empty()) return -1;
  return static_cast<long long>(terms_.rbegin()->first);
}

Integer UniPoly::coefficient(std::uint64_t exp) const {
  auto it = terms_.find(exp);
  return it == terms_.end() ? Integer(0) : it->second;
}

Integer UniPoly::leading_coefficient() const {
  return terms_.empty() ? Integer(0) : terms_.rbegin()->second;
}

Integer UniPoly::max_abs_coefficient() const {
  Integer m = 0;
  for (const auto& [e, c] : terms_) {
    Integer a = abs(c);
    if (a > m) m = a;
  }
  return m;
}

bool UniPoly::is_monic() const { return leading_coefficient() == 1; }

Integer UniPoly::normalized(Integer c) const {
  if (characteristic_ != 0) {
    c = Integer(static_cast<unsigned long>(residue(c, characteristic_)));
  }
  return c;
}

void UniPoly::add_term(std::uint64_t exp, const Integer& c) {
  Integer v = normalized(c);
  if (v == 0) return;
  auto [it, inserted] = terms_.try_emplace(exp, v);
  if (!inserted) {
    it->second = normalized(it->second + v);
    if (it->second == 0) terms_.erase(it);
  }
}

UniPoly& UniPoly::operator+=(const UniPoly& rhs) {
  if (characteristic_ != rhs.characteristic_) {
    throw StructuralError("unipoly add: mismatched characteristic");
  }
  for (const auto& [e, c] : rhs.terms_) add_term(e, c);
  return *this;
}

UniPoly& UniPoly::operator-=(const UniPoly& rhs) {
  if (characteristic_ != rhs.characteristic_) {
    throw StructuralError("unipoly sub: mismatched characteristic");
  }
  for (const auto& [e, c] : rhs.terms_) add_term(e, -c);
  return *this;
}

UniPoly UniPoly::operator-() const {
  UniPoly r(characteristic_);
  for (const auto& [e, c] : terms_) r.add_term(e, -c);
  return r;
}

UniPoly operator*(const UniPoly& a, const UniPoly& b) {
  if (a.characteristic_ != b.characteristic_) {
    throw StructuralError("unipoly mul: mismatched characteristic");
  }
  UniPoly r(a.characteristic_);
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      if (ea > std::numeric_limits<std::uint64_t>::max() - eb) {
        throw CapacityError("unipoly mul: exponent overflow");
      }
      r.add_term(ea + eb, ca * cb);
    }
  }
  return r;
}

Integer UniPoly::evaluate(const Integer& m) const {
  // Horner over the sparse exponents, descending.
  Integer acc = 0;
  std::uint64_t prev = 0;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    if (!first) acc *= ipow(m, prev - it->first);
    acc += it->second;
    prev = it->first;
    first = false;
  }
  if (!first) acc *= ipow(m, prev);
  return normalized(acc);
}

std::uint64_t unipoly_eval_mod(const UniPoly& h, const Integer& m,
                               std::uint64_t p) {
  if (!is_prime(p)) {
    throw PreconditionError("unipoly_eval_mod: modulus " + std::to_string(p) +
                            " is not prime");
  }
  const std::uint64_t mm = residue(m, p);
  std::uint64_t acc = 0;
  for (const auto& [e, c] : h.terms()) {
    const std::uint64_t term = mul_mod(residue(c, p), pow_mod(mm, e, p), p);
    acc = (acc + term) % p;
  }
  return acc;
}

UniPoly substitute_powers(const MultiPoly& f,
                          const std::vector<std::uint64_t>& n_vec) {
  if (n_vec.size() != f.num_vars()) {
    throw StructuralError("substitute_powers: exponent vector has length " +
                          std::to_string(n_vec.size()) + ", expected " +
                          std::to_string(f.num_vars()));
  }
  UniPoly g(f.characteristic());
  for (const auto& [e, c] : f.terms()) {
    unsigned __int128 deg = 0;
    for (std::size_t i = 0; i < e.size(); ++i) {
      deg += static_cast<unsigned __int128>(e[i]) * n_vec[i];
    }
    if (deg > std::numeric_limits<std::uint64_t>::max()) {
      throw CapacityError("substitute_powers: degree overflow");
    }
    g.add_term(static_cast<std::uint64_t>(deg), c);
  }
  return g;
}

namespace {

void trim(DenseFp& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

}  // namespace

DenseFp to_dense_fp(const UniPoly& h) {
  if (h.characteristic() == 0) {
    throw StructuralError("to_dense_fp: characteristic 0");
  }
  DenseFp d;
  if (h.is_zero()) return d;
  d.assign(static_cast<std::size_t>(h.degree()) + 1, 0);
  for (const auto& [e, c] : h.terms()) d[e] = c.get_ui();
  return d;
}

UniPoly from_dense_fp(std::uint64_t p, const DenseFp& h) {
  UniPoly r(p);
  for (std::size_t i = 0; i < h.size(); ++i) {
    if (h[i] != 0) r.add_term(i, Integer(static_cast<unsigned long>(h[i])));
  }
  return r;
}

DenseFp dense_rem(const DenseFp& a, const DenseFp& b, std::uint64_t p) {
  if (b.empty()) throw PreconditionError("dense_rem: division by zero");
  DenseFp r = a;
  trim(r);
  const std::size_t db = b.size() - 1;
  const std::uint64_t lead_inv = inv_mod(b.back(), p);
  while (!r.empty() && r.size() - 1 >= db) {
    const std::uint64_t factor = mul_mod(r.back(), lead_inv, p);
    const std::size_t shift = r.size() - 1 - db;
    for (std::size_t i = 0; i <= db; ++i) {
      r[shift + i] = (r[shift + i] + p - mul_mod(factor, b[i], p)) % p;
    }
    trim(r);
  }
  return r;
}

DenseFp dense_mulmod(const DenseFp& a, const DenseFp& b, const DenseFp& m,
                     std::uint64_t p) {
  if (a.empty() || b.empty()) return {};
  DenseFp prod(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      prod[i + j] = (prod[i + j] + mul_mod(a[i], b[j], p)) % p;
    }
  }
  return dense_rem(prod, m, p);
}

UniPoly remainder_fp(const UniPoly& h, const UniPoly& w) {
  const std::uint64_t p = h.characteristic();
  if (p == 0 || w.characteristic() != p) {
    throw StructuralError("remainder_fp: needs matching prime characteristic");
  }
  if (w.is_zero()) throw PreconditionError("remainder_fp: division by zero");
  const DenseFp wd = to_dense_fp(w);
  if (h.is_zero()) return UniPoly(p);
  // Small degree: ordinary long division.
  if (h.degree() < 4096) return from_dense_fp(p, dense_rem(to_dense_fp(h), wd, p));
  // Sparse/huge: reduce tau^e mod w by square-and-multiply per term.
  const DenseFp tau = dense_rem(DenseFp{0, 1}, wd, p);
  DenseFp acc;
  for (const auto& [e, c] : h.terms()) {
    DenseFp power = dense_rem(DenseFp{1}, wd, p);
    DenseFp base = tau;
    std::uint64_t k = e;
    while (k > 0) {
      if (k & 1U) power = dense_mulmod(power, base, wd, p);
      k >>= 1U;
      if (k > 0) base = dense_mulmod(base, base, wd, p);
    }
    const std::uint64_t coeff = c.get_ui();
    if (acc.size() < power.size()) acc.resize(power.size(), 0);
    for (std::size_t i = 0; i < power.size(); ++i) {
      acc[i] = (acc[i] + mul_mod(coeff, power[i], p)) % p;
    }
  }
  trim(acc);
  return from_dense_fp(p, acc);
}

bool divides_fp(const UniPoly& w, const UniPoly& h) {
  return remainder_fp(h, w).is_zero();
}

std::string to_string(const UniPoly& h) {
  if (h.is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (auto it = h.terms().rbegin(); it != h.terms().rend(); ++it) {
    const auto& [e, c] = *it;
    Integer mag = abs(c);
    const bool negative = c < 0;
    if (first) {
      if (negative) out << "-";
    } else {
      out << (negative ? " - " : " + ");
    }
    first = false;
    if (e == 0) {
      out << mag.get_str();
      continue;
    }
    if (mag != 1) out << mag.get_str() << "*";
    out << "tau";
    if (e > 1) out << "^" << e;
  }
  return out.str();
}

}  // namespace rfsep
