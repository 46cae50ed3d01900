#include "rfsep/ring/multipoly.hpp"

#include <algorithm>
#include <sstream>

#include "rfsep/core/error.hpp"

namespace rfsep {

std::uint64_t total_degree(const Exponent& e) {
  std::uint64_t d = 0;
  for (auto x : e) d += x;
  return d;
}

bool GrlexOrder::operator()(const Exponent& a, const Exponent& b) const {
  const auto da = total_degree(a);
  const auto db = total_degree(b);
  if (da != db) return da < db;
  return a < b;
}

MultiPoly::MultiPoly(std::size_t num_vars, std::uint64_t characteristic)
    : num_vars_(num_vars), characteristic_(characteristic) {
  if (characteristic != 0 && !is_prime(characteristic)) {
    throw PreconditionError("characteristic must be 0 or prime, got " +
                            std::to_string(characteristic));
  }
}

MultiPoly MultiPoly::constant(std::size_t num_vars,
                              std::uint64_t characteristic, const Integer& c) {
  MultiPoly f(num_vars, characteristic);
  f.add_term(Exponent(num_vars, 0), c);
  return f;
}

MultiPoly MultiPoly::variable(std::size_t num_vars,
                              std::uint64_t characteristic, std::size_t index) {
  if (index >= num_vars) {
    throw PreconditionError("variable index out of range");
  }
  MultiPoly f(num_vars, characteristic);
  Exponent e(num_vars, 0);
  e[index] = 1;
  f.add_term(e, 1);
  return f;
}

bool MultiPoly::is_constant() const {
  return terms_.empty() ||
         (terms_.size() == 1 && total_degree(terms_.begin()->first) == 0);
}

long MultiPoly::degree() const {
  if (terms_.empty()) return -1;
  return static_cast<long>(total_degree(terms_.rbegin()->first));
}

std::uint32_t MultiPoly::min_degree_in(std::size_t var) const {
  if (terms_.empty()) return 0;
  std::uint32_t k = UINT32_MAX;
  for (const auto& [e, c] : terms_) k = std::min(k, e[var]);
  return k;
}

Integer MultiPoly::constant_term() const {
  auto it = terms_.find(Exponent(num_vars_, 0));
  return it == terms_.end() ? Integer(0) : it->second;
}

Integer MultiPoly::max_abs_coefficient() const {
  Integer m = 0;
  for (const auto& [e, c] : terms_) {
    Integer a = abs(c);
    if (a > m) m = a;
  }
  return m;
}

Integer MultiPoly::normalized(Integer c) const {
  if (characteristic_ != 0) {
    c = Integer(static_cast<unsigned long>(residue(c, characteristic_)));
  }
  return c;
}

void MultiPoly::add_term(const Exponent& e, const Integer& c) {
  if (e.size() != num_vars_) {
    throw StructuralError("exponent vector length does not match num_vars");
  }
  Integer v = normalized(c);
  if (v == 0) return;
  auto [it, inserted] = terms_.try_emplace(e, v);
  if (!inserted) {
    it->second = normalized(it->second + v);
    if (it->second == 0) terms_.erase(it);
  }
}

void MultiPoly::check_compatible(const MultiPoly& rhs, const char* op) const {
  if (num_vars_ != rhs.num_vars_ || characteristic_ != rhs.characteristic_) {
    throw StructuralError(std::string("poly ") + op +
                          ": mismatched arity or characteristic");
  }
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& rhs) {
  check_compatible(rhs, "add");
  for (const auto& [e, c] : rhs.terms_) add_term(e, c);
  return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& rhs) {
  check_compatible(rhs, "sub");
  for (const auto& [e, c] : rhs.terms_) add_term(e, -c);
  return *this;
}

MultiPoly MultiPoly::operator-() const {
  MultiPoly r(num_vars_, characteristic_);
  for (const auto& [e, c] : terms_) r.add_term(e, -c);
  return r;
}

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
  a.check_compatible(b, "mul");
  MultiPoly r(a.num_vars_, a.characteristic_);
  Exponent e(a.num_vars_);
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      r.add_term(e, ca * cb);
    }
  }
  return r;
}

MultiPoly& MultiPoly::operator*=(const MultiPoly& rhs) {
  *this = *this * rhs;
  return *this;
}

bool operator==(const MultiPoly& a, const MultiPoly& b) {
  return a.num_vars_ == b.num_vars_ && a.characteristic_ == b.characteristic_ &&
         a.terms_ == b.terms_;
}

MultiPoly MultiPoly::pow(std::uint64_t e) const {
  MultiPoly result = constant(num_vars_, characteristic_, 1);
  MultiPoly base = *this;
  while (e > 0) {
    if (e & 1U) result *= base;
    e >>= 1U;
    if (e > 0) base *= base;
  }
  return result;
}

MultiPoly poly_arith(const MultiPoly& a, const MultiPoly& b, PolyOp op) {
  switch (op) {
    case PolyOp::add:
      return a + b;
    case PolyOp::sub:
      return a - b;
    case PolyOp::mul:
      return a * b;
  }
  throw InternalError("poly_arith: unknown op");
}

std::string to_string(const MultiPoly& f) {
  if (f.is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (auto it = f.terms().rbegin(); it != f.terms().rend(); ++it) {
    const auto& [e, c] = *it;
    Integer mag = abs(c);
    const bool negative = c < 0;
    if (first) {
      if (negative) out << "-";
    } else {
      out << (negative ? " - " : " + ");
    }
    first = false;
    bool wrote = false;
    const bool unit = total_degree(e) > 0 && mag == 1;
    if (!unit) {
      out << mag.get_str();
      wrote = true;
    }
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (wrote) out << "*";
      out << "T" << (i + 1);
      if (e[i] > 1) out << "^" << e[i];
      wrote = true;
    }
  }
  return out.str();
}

}  // namespace rfsep
