#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "rfsep/ring/integer.hpp"
#include "rfsep/ring/multipoly.hpp"

namespace rfsep {

/// Univariate polynomial in tau over Z or F_p.
///
/// Stored sparsely (exponent -> nonzero coefficient) because trace
/// polynomials produced by power substitution have huge degree and few
/// terms.
class UniPoly {
 public:
  using TermMap = std::map<std::uint64_t, Integer>;

  explicit UniPoly(std::uint64_t characteristic = 0);

  static UniPoly constant(std::uint64_t characteristic, const Integer& c);
  static UniPoly monomial(std::uint64_t characteristic, std::uint64_t exp,
                          const Integer& c);
  /// From coefficients a_0, a_1, ... (low to high).
  static UniPoly from_coefficients(std::uint64_t characteristic,
                                   const std::vector<Integer>& coeffs);

  std::uint64_t characteristic() const noexcept { return characteristic_; }
  const TermMap& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  /// -1 for the zero polynomial.
  long long degree() const;
  Integer coefficient(std::uint64_t exp) const;
  Integer leading_coefficient() const;
  Integer max_abs_coefficient() const;
  bool is_monic() const;

  void add_term(std::uint64_t exp, const Integer& c);

  UniPoly& operator+=(const UniPoly& rhs);
  UniPoly& operator-=(const UniPoly& rhs);
  UniPoly operator-() const;
  friend UniPoly operator+(UniPoly a, const UniPoly& b) { return a += b; }
  friend UniPoly operator-(UniPoly a, const UniPoly& b) { return a -= b; }
  friend UniPoly operator*(const UniPoly& a, const UniPoly& b);
  friend bool operator==(const UniPoly& a, const UniPoly& b) {
    return a.characteristic_ == b.characteristic_ && a.terms_ == b.terms_;
  }

  /// Exact value at m (coefficients reduced mod p in characteristic p).
  Integer evaluate(const Integer& m) const;

 private:
  Integer normalized(Integer c) const;

  std::uint64_t characteristic_;
  TermMap terms_;
};

/// h(m) mod p with reduction at every step. Requires p prime.
std::uint64_t unipoly_eval_mod(const UniPoly& h, const Integer& m,
                               std::uint64_t p);

/// f(tau^{n_1}, ..., tau^{n_s}); the result may be zero.
UniPoly substitute_powers(const MultiPoly& f,
                          const std::vector<std::uint64_t>& n_vec);

/// Dense polynomial over F_p, coefficients low to high, no trailing zeros.
using DenseFp = std::vector<std::uint64_t>;

DenseFp to_dense_fp(const UniPoly& h);
UniPoly from_dense_fp(std::uint64_t p, const DenseFp& h);

/// h mod w over F_p (w nonzero). Efficient for sparse h of huge degree.
UniPoly remainder_fp(const UniPoly& h, const UniPoly& w);

/// True iff w divides h over F_p.
bool divides_fp(const UniPoly& w, const UniPoly& h);

/// Dense helpers over F_p.
DenseFp dense_rem(const DenseFp& a, const DenseFp& b, std::uint64_t p);
DenseFp dense_mulmod(const DenseFp& a, const DenseFp& b, const DenseFp& m,
                     std::uint64_t p);

/// Text form in the variable tau, leading term first.
std::string to_string(const UniPoly& h);

}  // namespace rfsep
