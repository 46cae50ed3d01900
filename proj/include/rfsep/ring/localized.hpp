#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "rfsep/ring/multipoly.hpp"

namespace rfsep {

/// The finite set S of nonzero polynomials inverted by a localization.
class DenominatorSet {
 public:
  DenominatorSet() = default;
  /// Rejects zero members; drops structural duplicates (first one wins).
  explicit DenominatorSet(std::vector<MultiPoly> elements);

  std::size_t size() const noexcept { return elements_.size(); }
  const MultiPoly& operator[](std::size_t i) const { return elements_[i]; }
  const std::vector<MultiPoly>& elements() const noexcept { return elements_; }
  std::optional<std::size_t> index_of(const MultiPoly& f) const;

 private:
  std::vector<MultiPoly> elements_;
};

/// Ring descriptor of L[1/S][T1..Ts].
struct LocalizedRing {
  std::uint64_t characteristic = 0;
  std::size_t num_vars = 0;
  DenominatorSet denominators;
};

using RingPtr = std::shared_ptr<const LocalizedRing>;

RingPtr make_ring(std::uint64_t characteristic, std::size_t num_vars,
                  std::vector<MultiPoly> denominators);

/// Exponents of the members of S, one per member.
using DenExponent = std::vector<std::uint32_t>;

/// Fraction numerator / prod_i S_i^{e_i}.
///
/// Fractions are kept unreduced; equality is decided by cross-multiplication
/// which is exact because the polynomial ring is a domain.
class LocalizedElem {
 public:
  LocalizedElem() = default;
  LocalizedElem(RingPtr ring, MultiPoly numerator);
  LocalizedElem(RingPtr ring, MultiPoly numerator, DenExponent denominator);

  static LocalizedElem zero(const RingPtr& ring);
  static LocalizedElem one(const RingPtr& ring);
  static LocalizedElem integer(const RingPtr& ring, const Integer& c);

  const RingPtr& ring() const noexcept { return ring_; }
  const MultiPoly& numerator() const noexcept { return numerator_; }
  const DenExponent& denominator() const noexcept { return denominator_; }
  bool is_zero() const noexcept { return numerator_.is_zero(); }
  bool is_polynomial() const;
  /// prod S_i^{e_i} expanded.
  MultiPoly denominator_poly() const;

  /// numerator * prod S_i^{(target_i - e_i)}, i.e. the element multiplied by
  /// prod S_i^{target_i}. Throws InvariantViolation when some e_i exceeds
  /// target_i (the denominator does not cancel).
  MultiPoly clear_denominator(const DenExponent& target) const;

  LocalizedElem& operator+=(const LocalizedElem& rhs);
  LocalizedElem& operator-=(const LocalizedElem& rhs);
  LocalizedElem operator-() const;
  friend LocalizedElem operator+(LocalizedElem a, const LocalizedElem& b) {
    return a += b;
  }
  friend LocalizedElem operator-(LocalizedElem a, const LocalizedElem& b) {
    return a -= b;
  }
  friend LocalizedElem operator*(const LocalizedElem& a, const LocalizedElem& b);
  friend bool operator==(const LocalizedElem& a, const LocalizedElem& b);

 private:
  void check_ring(const LocalizedElem& rhs) const;
  MultiPoly lifted_numerator(const DenExponent& target) const;

  RingPtr ring_;
  MultiPoly numerator_;
  DenExponent denominator_;
};

/// prod_i S_i^{e_i}.
MultiPoly expand_denominator(const LocalizedRing& ring, const DenExponent& e);

}  // namespace rfsep
