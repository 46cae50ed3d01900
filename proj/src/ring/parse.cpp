#include "rfsep/ring/parse.hpp"

#include <cctype>
#include <string>

#include "rfsep/core/error.hpp"

namespace rfsep {
namespace {

class PolyParser {
 public:
  PolyParser(std::string_view text, std::size_t num_vars,
             std::uint64_t characteristic, bool allow_tau, std::size_t line,
             std::size_t column)
      : text_(text),
        num_vars_(num_vars),
        characteristic_(characteristic),
        allow_tau_(allow_tau),
        line_(line),
        column_(column) {}

  MultiPoly parse() {
    skip_space();
    if (at_end()) fail("empty polynomial");
    MultiPoly result = expression();
    skip_space();
    if (!at_end()) fail(std::string("unexpected '") + text_[pos_] + "'");
    return result;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(what, line_, column_ + pos_);
  }

  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return at_end() ? '\0' : text_[pos_]; }

  void skip_space() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
  }

  MultiPoly constant(const Integer& c) const {
    return MultiPoly::constant(num_vars_, characteristic_, c);
  }

  MultiPoly expression() {
    MultiPoly acc = term();
    for (;;) {
      skip_space();
      char c = peek();
      if (c != '+' && c != '-') return acc;
      ++pos_;
      MultiPoly rhs = term();
      if (c == '+') {
        acc += rhs;
      } else {
        acc -= rhs;
      }
    }
  }

  bool starts_factor() {
    skip_space();
    char c = peek();
    return std::isdigit(static_cast<unsigned char>(c)) || c == 'T' ||
           c == 't' || c == '(';
  }

  MultiPoly term() {
    MultiPoly acc = factor();
    for (;;) {
      skip_space();
      if (peek() == '*') {
        ++pos_;
        acc *= factor();
      } else if (starts_factor()) {
        acc *= factor();
      } else {
        return acc;
      }
    }
  }

  MultiPoly factor() {
    skip_space();
    if (peek() == '-') {
      ++pos_;
      return -factor();
    }
    if (peek() == '+') {
      ++pos_;
      return factor();
    }
    MultiPoly base = atom();
    skip_space();
    if (peek() == '^') {
      ++pos_;
      skip_space();
      if (!std::isdigit(static_cast<unsigned char>(peek()))) {
        fail("expected a nonnegative exponent after '^'");
      }
      std::uint64_t e = 0;
      while (std::isdigit(static_cast<unsigned char>(peek()))) {
        if (e > 1'000'000) fail("exponent too large");
        e = e * 10 + static_cast<std::uint64_t>(text_[pos_++] - '0');
      }
      return base.pow(e);
    }
    return base;
  }

  MultiPoly atom() {
    skip_space();
    char c = peek();
    if (at_end()) fail("unexpected end of polynomial");
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
      return constant(Integer(std::string(text_.substr(start, pos_ - start))));
    }
    if (c == '(') {
      ++pos_;
      MultiPoly inner = expression();
      skip_space();
      if (peek() != ')') fail("expected ')'");
      ++pos_;
      return inner;
    }
    if (c == 'T') {
      std::size_t start = pos_++;
      if (!std::isdigit(static_cast<unsigned char>(peek()))) {
        pos_ = start;
        fail("expected variable index after 'T'");
      }
      std::size_t index = 0;
      while (std::isdigit(static_cast<unsigned char>(peek()))) {
        index = index * 10 + static_cast<std::size_t>(text_[pos_++] - '0');
        if (index > num_vars_ + 1) break;
      }
      if (index == 0 || index > num_vars_) {
        pos_ = start;
        fail("variable T" + std::to_string(index) + " out of range (ring has " +
             std::to_string(num_vars_) + " variables)");
      }
      return MultiPoly::variable(num_vars_, characteristic_, index - 1);
    }
    if (text_.substr(pos_, 3) == "tau") {
      if (!allow_tau_ || num_vars_ != 1) fail("'tau' needs a one-variable ring");
      pos_ += 3;
      return MultiPoly::variable(num_vars_, characteristic_, 0);
    }
    fail(std::string("unexpected '") + c + "'");
  }

  std::string_view text_;
  std::size_t num_vars_;
  std::uint64_t characteristic_;
  bool allow_tau_;
  std::size_t line_;
  std::size_t column_;
  std::size_t pos_ = 0;
};

}  // namespace

MultiPoly parse_polynomial(std::string_view text, std::size_t num_vars,
                           std::uint64_t characteristic, std::size_t line,
                           std::size_t column) {
  return PolyParser(text, num_vars, characteristic, true, line, column).parse();
}

UniPoly parse_unipoly(std::string_view text, std::uint64_t characteristic,
                      std::size_t line, std::size_t column) {
  return to_unipoly(
      PolyParser(text, 1, characteristic, true, line, column).parse());
}

UniPoly to_unipoly(const MultiPoly& f) {
  if (f.num_vars() > 1) {
    throw StructuralError("to_unipoly: more than one variable");
  }
  UniPoly h(f.characteristic());
  for (const auto& [e, c] : f.terms()) h.add_term(e.empty() ? 0 : e[0], c);
  return h;
}

}  // namespace rfsep
