#include "rfsep/ring/localized.hpp"

#include <algorithm>

#include "rfsep/core/error.hpp"

namespace rfsep {

DenominatorSet::DenominatorSet(std::vector<MultiPoly> elements) {
  for (auto& f : elements) {
    if (f.is_zero()) throw ValidationError("denominator set contains zero");
    if (!index_of(f)) elements_.push_back(std::move(f));
  }
}

std::optional<std::size_t> DenominatorSet::index_of(const MultiPoly& f) const {
  for (std::size_t i = 0; i < elements_.size(); ++i) {
    if (elements_[i] == f) return i;
  }
  return std::nullopt;
}

RingPtr make_ring(std::uint64_t characteristic, std::size_t num_vars,
                  std::vector<MultiPoly> denominators) {
  for (const auto& f : denominators) {
    if (f.num_vars() != num_vars || f.characteristic() != characteristic) {
      throw StructuralError("denominator does not live in the ring");
    }
  }
  auto ring = std::make_shared<LocalizedRing>();
  ring->characteristic = characteristic;
  ring->num_vars = num_vars;
  ring->denominators = DenominatorSet(std::move(denominators));
  return ring;
}

MultiPoly expand_denominator(const LocalizedRing& ring, const DenExponent& e) {
  MultiPoly result = MultiPoly::constant(ring.num_vars, ring.characteristic, 1);
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (e[i] > 0) result *= ring.denominators[i].pow(e[i]);
  }
  return result;
}

LocalizedElem::LocalizedElem(RingPtr ring, MultiPoly numerator)
    : LocalizedElem(ring, std::move(numerator),
                    DenExponent(ring->denominators.size(), 0)) {}

LocalizedElem::LocalizedElem(RingPtr ring, MultiPoly numerator,
                             DenExponent denominator)
    : ring_(std::move(ring)),
      numerator_(std::move(numerator)),
      denominator_(std::move(denominator)) {
  if (numerator_.num_vars() != ring_->num_vars ||
      numerator_.characteristic() != ring_->characteristic) {
    throw StructuralError("numerator does not live in the ring");
  }
  if (denominator_.size() != ring_->denominators.size()) {
    throw StructuralError("denominator exponent vector has wrong length");
  }
}

LocalizedElem LocalizedElem::zero(const RingPtr& ring) {
  return {ring, MultiPoly(ring->num_vars, ring->characteristic)};
}

LocalizedElem LocalizedElem::one(const RingPtr& ring) {
  return integer(ring, 1);
}

LocalizedElem LocalizedElem::integer(const RingPtr& ring, const Integer& c) {
  return {ring, MultiPoly::constant(ring->num_vars, ring->characteristic, c)};
}

bool LocalizedElem::is_polynomial() const {
  return std::all_of(denominator_.begin(), denominator_.end(),
                     [](auto e) { return e == 0; });
}

MultiPoly LocalizedElem::denominator_poly() const {
  return expand_denominator(*ring_, denominator_);
}

MultiPoly LocalizedElem::lifted_numerator(const DenExponent& target) const {
  DenExponent extra(target.size());
  bool any = false;
  for (std::size_t i = 0; i < target.size(); ++i) {
    extra[i] = target[i] - denominator_[i];
    any = any || extra[i] > 0;
  }
  if (!any) return numerator_;
  return numerator_ * expand_denominator(*ring_, extra);
}

MultiPoly LocalizedElem::clear_denominator(const DenExponent& target) const {
  if (target.size() != denominator_.size()) {
    throw StructuralError("clear_denominator: wrong exponent length");
  }
  for (std::size_t i = 0; i < target.size(); ++i) {
    if (denominator_[i] > target[i]) {
      throw InvariantViolation(
          "denominator does not cancel against the requested power of Phi");
    }
  }
  return lifted_numerator(target);
}

void LocalizedElem::check_ring(const LocalizedElem& rhs) const {
  if (ring_ != rhs.ring_ &&
      (ring_->num_vars != rhs.ring_->num_vars ||
       ring_->characteristic != rhs.ring_->characteristic ||
       ring_->denominators.elements() != rhs.ring_->denominators.elements())) {
    throw StructuralError("localized elements from different rings");
  }
}

LocalizedElem& LocalizedElem::operator+=(const LocalizedElem& rhs) {
  check_ring(rhs);
  if (denominator_ == rhs.denominator_) {
    numerator_ += rhs.numerator_;
    return *this;
  }
  DenExponent common(denominator_.size());
  for (std::size_t i = 0; i < common.size(); ++i) {
    common[i] = std::max(denominator_[i], rhs.denominator_[i]);
  }
  numerator_ = lifted_numerator(common) + rhs.lifted_numerator(common);
  denominator_ = std::move(common);
  return *this;
}

LocalizedElem& LocalizedElem::operator-=(const LocalizedElem& rhs) {
  return *this += -rhs;
}

LocalizedElem LocalizedElem::operator-() const {
  return {ring_, -numerator_, denominator_};
}

LocalizedElem operator*(const LocalizedElem& a, const LocalizedElem& b) {
  a.check_ring(b);
  DenExponent den(a.denominator_.size());
  for (std::size_t i = 0; i < den.size(); ++i) {
    den[i] = a.denominator_[i] + b.denominator_[i];
  }
  return {a.ring_, a.numerator_ * b.numerator_, std::move(den)};
}

bool operator==(const LocalizedElem& a, const LocalizedElem& b) {
  a.check_ring(b);
  if (a.denominator_ == b.denominator_) return a.numerator_ == b.numerator_;
  DenExponent common(a.denominator_.size());
  for (std::size_t i = 0; i < common.size(); ++i) {
    common[i] = std::max(a.denominator_[i], b.denominator_[i]);
  }
  return a.lifted_numerator(common) == b.lifted_numerator(common);
}

}  // namespace rfsep
