#include "rfsep/finite/field.hpp"

#include <sstream>

#include "rfsep/core/error.hpp"
#include "rfsep/ring/irreducible.hpp"

namespace rfsep {

FiniteField::FiniteField(std::uint64_t p, const UniPoly& modulus)
    : p_(p), k_(0), q_(1), modulus_(modulus) {
  if (!is_prime(p)) throw PreconditionError("finite field: p not prime");
  if (modulus.characteristic() != p) {
    throw StructuralError("finite field: modulus over the wrong prime");
  }
  if (modulus.degree() < 1 || !modulus.is_monic()) {
    throw PreconditionError("finite field: modulus must be monic of degree >= 1");
  }
  k_ = static_cast<std::uint64_t>(modulus.degree());
  for (std::uint64_t i = 0; i < k_; ++i) {
    if (q_ > (std::uint64_t{1} << 62) / p) {
      throw CapacityError("finite field larger than 2^62");
    }
    q_ *= p;
  }
  if (k_ > 1 && !is_irreducible_fp(modulus)) {
    throw PreconditionError("finite field: modulus is reducible");
  }
  dense_modulus_ = to_dense_fp(modulus);
  if (k_ == 1) residue_tau_ = (p_ - dense_modulus_[0]) % p_;
  if (q_ <= 65536 && k_ > 1) build_tables();
}

FiniteField FiniteField::prime_field(std::uint64_t p) {
  return {p, UniPoly::monomial(p, 1, 1)};
}

FiniteField FiniteField::of_order(std::uint64_t p, std::uint64_t k) {
  if (k == 1) return prime_field(p);
  return {p, irreducibles_of_degree(p, k).front()};
}

std::vector<std::uint64_t> FiniteField::digits(Elem a) const {
  std::vector<std::uint64_t> d(k_, 0);
  for (std::uint64_t i = 0; i < k_; ++i) {
    d[i] = a % p_;
    a /= p_;
  }
  return d;
}

FiniteField::Elem FiniteField::from_digits(
    const std::vector<std::uint64_t>& d) const {
  Elem a = 0;
  for (std::size_t i = d.size(); i-- > 0;) a = a * p_ + d[i];
  return a;
}

FiniteField::Elem FiniteField::add(Elem a, Elem b) const {
  if (k_ == 1) {
    Elem s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  Elem out = 0, scale = 1;
  for (std::uint64_t i = 0; i < k_; ++i) {
    Elem s = a % p_ + b % p_;
    if (s >= p_) s -= p_;
    out += s * scale;
    a /= p_;
    b /= p_;
    scale *= p_;
  }
  return out;
}

FiniteField::Elem FiniteField::neg(Elem a) const {
  if (k_ == 1) return a == 0 ? 0 : p_ - a;
  Elem out = 0, scale = 1;
  for (std::uint64_t i = 0; i < k_; ++i) {
    Elem d = a % p_;
    out += (d == 0 ? 0 : p_ - d) * scale;
    a /= p_;
    scale *= p_;
  }
  return out;
}

FiniteField::Elem FiniteField::sub(Elem a, Elem b) const {
  return add(a, neg(b));
}

FiniteField::Elem FiniteField::slow_mul(Elem a, Elem b) const {
  auto da = digits(a);
  auto db = digits(b);
  DenseFp prod(2 * k_ - 1, 0);
  for (std::uint64_t i = 0; i < k_; ++i) {
    if (da[i] == 0) continue;
    for (std::uint64_t j = 0; j < k_; ++j) {
      prod[i + j] = (prod[i + j] + mul_mod(da[i], db[j], p_)) % p_;
    }
  }
  for (std::size_t top = prod.size(); top-- > k_;) {
    const std::uint64_t c = prod[top];
    if (c == 0) continue;
    for (std::uint64_t i = 0; i <= k_; ++i) {
      auto& slot = prod[top - k_ + i];
      slot = (slot + p_ - mul_mod(c, dense_modulus_[i], p_)) % p_;
    }
  }
  prod.resize(k_);
  return from_digits(prod);
}

void FiniteField::build_tables() {
  // Find a primitive element by checking its order against q - 1.
  std::vector<std::uint64_t> prime_factors;
  std::uint64_t m = q_ - 1;
  for (std::uint64_t d = 2; d * d <= m; ++d) {
    if (m % d == 0) {
      prime_factors.push_back(d);
      while (m % d == 0) m /= d;
    }
  }
  if (m > 1) prime_factors.push_back(m);
  auto slow_pow = [&](Elem a, std::uint64_t e) {
    Elem r = 1;
    while (e > 0) {
      if (e & 1) r = slow_mul(r, a);
      a = slow_mul(a, a);
      e >>= 1;
    }
    return r;
  };
  Elem g = 0;
  for (Elem cand = 2; cand < q_; ++cand) {
    bool primitive = true;
    for (auto r : prime_factors) {
      if (slow_pow(cand, (q_ - 1) / r) == 1) {
        primitive = false;
        break;
      }
    }
    if (primitive) {
      g = cand;
      break;
    }
  }
  if (g == 0) throw InternalError("finite field: no primitive element");
  exp_.assign(2 * (q_ - 1), 0);
  log_.assign(q_, 0);
  Elem x = 1;
  for (std::uint64_t i = 0; i < q_ - 1; ++i) {
    exp_[i] = static_cast<std::uint32_t>(x);
    exp_[i + q_ - 1] = static_cast<std::uint32_t>(x);
    log_[x] = static_cast<std::uint32_t>(i);
    x = slow_mul(x, g);
  }
}

FiniteField::Elem FiniteField::mul(Elem a, Elem b) const {
  if (a == 0 || b == 0) return 0;
  if (k_ == 1) return mul_mod(a, b, p_);
  if (!exp_.empty()) return exp_[log_[a] + log_[b]];
  return slow_mul(a, b);
}

FiniteField::Elem FiniteField::pow(Elem a, std::uint64_t e) const {
  Elem r = 1;
  while (e > 0) {
    if (e & 1) r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}

FiniteField::Elem FiniteField::inv(Elem a) const {
  if (a == 0) throw PreconditionError("finite field: inverse of zero");
  if (k_ == 1) return inv_mod(a, p_);
  if (!exp_.empty()) return exp_[(q_ - 1 - log_[a]) % (q_ - 1)];
  return pow(a, q_ - 2);
}

FiniteField::Elem FiniteField::from_integer(const Integer& c) const {
  return residue(c, p_);
}

FiniteField::Elem FiniteField::from_unipoly(const UniPoly& h) const {
  if (h.characteristic() != p_ && h.characteristic() != 0) {
    throw StructuralError("finite field: polynomial over the wrong prime");
  }
  UniPoly reduced(p_);
  for (const auto& [e, c] : h.terms()) reduced.add_term(e, c);
  DenseFp r = to_dense_fp(remainder_fp(reduced, modulus_));
  if (k_ == 1) return r.empty() ? 0 : r[0];
  r.resize(k_, 0);
  return from_digits(r);
}

UniPoly FiniteField::to_unipoly(Elem a) const {
  if (k_ == 1) return UniPoly::constant(p_, static_cast<unsigned long>(a));
  return from_dense_fp(p_, digits(a));
}

std::string FiniteField::format(Elem a) const {
  if (k_ == 1) return std::to_string(a);
  return to_string(to_unipoly(a));
}

FqMatrix fq_identity(const FiniteField& f, std::size_t n) {
  return FqMatrix::identity(n, f.zero(), f.one());
}

FqMatrix fq_mul(const FiniteField& f, const FqMatrix& a, const FqMatrix& b) {
  if (a.cols() != b.rows()) throw StructuralError("fq_mul: dimension mismatch");
  FqMatrix out(a.rows(), b.cols(), 0);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const auto aik = a(i, k);
      if (aik == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) {
        if (b(k, j) != 0) out(i, j) = f.add(out(i, j), f.mul(aik, b(k, j)));
      }
    }
  }
  return out;
}

FqMatrix fq_inverse(const FiniteField& f, const FqMatrix& a) {
  if (!a.is_square()) throw StructuralError("fq_inverse: not square");
  const std::size_t n = a.rows();
  FqMatrix m = a;
  FqMatrix inv = fq_identity(f, n);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && m(pivot, col) == 0) ++pivot;
    if (pivot == n) throw PreconditionError("fq_inverse: singular matrix");
    if (pivot != col) {
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(m(pivot, j), m(col, j));
        std::swap(inv(pivot, j), inv(col, j));
      }
    }
    const auto s = f.inv(m(col, col));
    for (std::size_t j = 0; j < n; ++j) {
      m(col, j) = f.mul(m(col, j), s);
      inv(col, j) = f.mul(inv(col, j), s);
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || m(r, col) == 0) continue;
      const auto factor = m(r, col);
      for (std::size_t j = 0; j < n; ++j) {
        m(r, j) = f.sub(m(r, j), f.mul(factor, m(col, j)));
        inv(r, j) = f.sub(inv(r, j), f.mul(factor, inv(col, j)));
      }
    }
  }
  return inv;
}

bool fq_is_identity(const FqMatrix& a) {
  if (!a.is_square()) return false;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (a(i, j) != (i == j ? 1u : 0u)) return false;
    }
  }
  return true;
}

FqMatrix fq_frobenius(const FiniteField& f, const FqMatrix& a) {
  FqMatrix out = a;
  for (auto& x : out.data()) x = f.frobenius(x);
  return out;
}

void fq_projective_normalize(const FiniteField& f, FqMatrix& a) {
  for (auto x : a.data()) {
    if (x == 0) continue;
    if (x != 1) {
      const auto s = f.inv(x);
      for (auto& y : a.data()) y = f.mul(y, s);
    }
    return;
  }
}

std::string fq_format(const FiniteField& f, const FqMatrix& a) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < a.rows(); ++i) {
    os << (i ? ",[" : "[");
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (j) os << ',';
      os << f.format(a(i, j));
    }
    os << ']';
  }
  os << ']';
  return os.str();
}

Integer gl_order(std::uint64_t q, std::uint64_t n) {
  const Integer qq(static_cast<unsigned long>(q));
  const Integer qn = ipow(qq, n);
  Integer order = 1;
  Integer qi = 1;
  for (std::uint64_t i = 0; i < n; ++i) {
    order *= qn - qi;
    qi *= qq;
  }
  return order;
}

}  // namespace rfsep
