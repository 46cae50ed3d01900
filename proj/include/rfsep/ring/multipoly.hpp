#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "rfsep/ring/integer.hpp"

namespace rfsep {

using Exponent = std::vector<std::uint32_t>;

/// Graded lexicographic order: total degree first, then lexicographic with
/// T1 most significant.
struct GrlexOrder {
  bool operator()(const Exponent& a, const Exponent& b) const;
};

std::uint64_t total_degree(const Exponent& e);

/// Sparse polynomial in T1..Ts over Z (characteristic 0) or F_p.
///
/// Coefficients are never stored as zero and, in characteristic p, always lie
/// in [0, p). Two polynomials are equal iff their term maps are equal.
class MultiPoly {
 public:
  using TermMap = std::map<Exponent, Integer, GrlexOrder>;

  MultiPoly() = default;
  MultiPoly(std::size_t num_vars, std::uint64_t characteristic);

  static MultiPoly constant(std::size_t num_vars, std::uint64_t characteristic,
                            const Integer& c);
  /// The variable T_{index+1}.
  static MultiPoly variable(std::size_t num_vars, std::uint64_t characteristic,
                            std::size_t index);

  std::size_t num_vars() const noexcept { return num_vars_; }
  std::uint64_t characteristic() const noexcept { return characteristic_; }
  const TermMap& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_constant() const;
  std::size_t term_count() const noexcept { return terms_.size(); }

  /// Total degree; -1 for the zero polynomial.
  long degree() const;
  /// Smallest exponent of variable `var` over all terms (0 for zero poly).
  std::uint32_t min_degree_in(std::size_t var) const;
  Integer constant_term() const;
  Integer max_abs_coefficient() const;

  /// Adds c * T^e, normalizing the coefficient.
  void add_term(const Exponent& e, const Integer& c);

  MultiPoly& operator+=(const MultiPoly& rhs);
  MultiPoly& operator-=(const MultiPoly& rhs);
  MultiPoly& operator*=(const MultiPoly& rhs);
  MultiPoly operator-() const;

  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
  friend bool operator==(const MultiPoly& a, const MultiPoly& b);

  MultiPoly pow(std::uint64_t e) const;

 private:
  void check_compatible(const MultiPoly& rhs, const char* op) const;
  Integer normalized(Integer c) const;

  std::size_t num_vars_ = 0;
  std::uint64_t characteristic_ = 0;
  TermMap terms_;
};

/// Operation selector for poly_arith.
enum class PolyOp { add, sub, mul };

MultiPoly poly_arith(const MultiPoly& a, const MultiPoly& b, PolyOp op);

/// Human-readable form, leading term first: "T1^2 - 2*T1*T2 + 1".
std::string to_string(const MultiPoly& f);

}  // namespace rfsep
