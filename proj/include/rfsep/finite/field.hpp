#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rfsep/core/matrix.hpp"
#include "rfsep/ring/integer.hpp"
#include "rfsep/ring/unipoly.hpp"

namespace rfsep {

/// The field F_p[tau]/(w) for a monic irreducible w.
///
/// Elements are base-p codes: sum c_i tau^i is stored as sum c_i p^i, so the
/// prime subfield occupies codes [0, p) and tau^i has code p^i.
class FiniteField {
 public:
  using Elem = std::uint64_t;

  /// w must be monic and irreducible over F_p (checked) with p^deg(w) < 2^62.
  FiniteField(std::uint64_t p, const UniPoly& modulus);
  static FiniteField prime_field(std::uint64_t p);
  /// F_{p^k} with the first irreducible of degree k as modulus.
  static FiniteField of_order(std::uint64_t p, std::uint64_t k);

  std::uint64_t characteristic() const noexcept { return p_; }
  std::uint64_t degree() const noexcept { return k_; }
  std::uint64_t size() const noexcept { return q_; }
  const UniPoly& modulus() const noexcept { return modulus_; }

  Elem zero() const noexcept { return 0; }
  Elem one() const noexcept { return 1; }
  /// The class of tau (a generator of the field over F_p).
  Elem tau() const noexcept { return k_ == 1 ? residue_tau_ : p_; }

  Elem add(Elem a, Elem b) const;
  Elem sub(Elem a, Elem b) const;
  Elem neg(Elem a) const;
  Elem mul(Elem a, Elem b) const;
  Elem inv(Elem a) const;
  Elem pow(Elem a, std::uint64_t e) const;
  Elem frobenius(Elem a) const { return pow(a, p_); }

  Elem from_integer(const Integer& c) const;
  Elem from_unipoly(const UniPoly& h) const;
  UniPoly to_unipoly(Elem a) const;

  std::string format(Elem a) const;

  friend bool operator==(const FiniteField& a, const FiniteField& b) {
    return a.p_ == b.p_ && a.modulus_ == b.modulus_;
  }

 private:
  std::vector<std::uint64_t> digits(Elem a) const;
  Elem from_digits(const std::vector<std::uint64_t>& d) const;
  Elem slow_mul(Elem a, Elem b) const;
  void build_tables();

  std::uint64_t p_;
  std::uint64_t k_;
  std::uint64_t q_;
  UniPoly modulus_;
  Elem residue_tau_ = 0;
  DenseFp dense_modulus_;
  std::vector<std::uint32_t> log_;
  std::vector<std::uint32_t> exp_;
};

using FqMatrix = Matrix<std::uint64_t>;

FqMatrix fq_identity(const FiniteField& f, std::size_t n);
FqMatrix fq_mul(const FiniteField& f, const FqMatrix& a, const FqMatrix& b);
/// Gauss-Jordan inverse; throws PreconditionError for singular input.
FqMatrix fq_inverse(const FiniteField& f, const FqMatrix& a);
bool fq_is_identity(const FqMatrix& a);
/// Applies the Frobenius a -> a^p entrywise.
FqMatrix fq_frobenius(const FiniteField& f, const FqMatrix& a);
/// Scales so that the first nonzero entry (row-major) is 1.
void fq_projective_normalize(const FiniteField& f, FqMatrix& a);
std::string fq_format(const FiniteField& f, const FqMatrix& a);

/// |GL_n(F_q)|.
Integer gl_order(std::uint64_t q, std::uint64_t n);

}  // namespace rfsep
