#include "rfsep/cli/group_file.hpp"

#include <cctype>
#include <fstream>
#include <optional>
#include <sstream>

#include "rfsep/core/error.hpp"
#include "rfsep/ring/parse.hpp"

namespace rfsep {
namespace {

struct LogicalLine {
  std::string text;
  std::size_t line = 0;
};

std::string strip_comment(const std::string& s) {
  const auto hash = s.find('#');
  return hash == std::string::npos ? s : s.substr(0, hash);
}

bool blank(std::string_view s) {
  for (char c : s) {
    if (!std::isspace(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

int bracket_balance(std::string_view s) {
  int depth = 0;
  for (char c : s) {
    if (c == '[' || c == '(') ++depth;
    if (c == ']' || c == ')') --depth;
  }
  return depth;
}

// Continuation lines are joined with a single space; columns beyond the
// first physical line are approximate.
std::vector<LogicalLine> logical_lines(std::string_view text) {
  std::vector<LogicalLine> out;
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t lineno = 0;
  LogicalLine pending;
  int depth = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    std::string s = strip_comment(raw);
    if (depth > 0) {
      pending.text += ' ' + s;
    } else {
      if (blank(s)) continue;
      pending = {s, lineno};
    }
    depth = bracket_balance(pending.text);
    if (depth <= 0) {
      out.push_back(pending);
      depth = 0;
    }
  }
  if (depth > 0) throw ParseError("unbalanced brackets", pending.line, 1);
  return out;
}

class LineCursor {
 public:
  explicit LineCursor(const LogicalLine& line) : line_(line) {}

  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(what, line_.line, pos_ + 1);
  }
  [[noreturn]] void fail_at(const std::string& what, std::size_t pos) const {
    throw ParseError(what, line_.line, pos + 1);
  }

  void skip() {
    while (pos_ < text().size() && std::isspace(static_cast<unsigned char>(text()[pos_]))) ++pos_;
  }
  bool done() {
    skip();
    return pos_ >= text().size();
  }
  char peek() {
    skip();
    return pos_ < text().size() ? text()[pos_] : '\0';
  }
  void expect(char c) {
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }
  std::string word() {
    skip();
    const std::size_t start = pos_;
    while (pos_ < text().size() &&
           (std::isalnum(static_cast<unsigned char>(text()[pos_])) || text()[pos_] == '_')) {
      ++pos_;
    }
    if (start == pos_) fail("expected a name");
    return std::string(text().substr(start, pos_ - start));
  }
  std::size_t number() {
    skip();
    const std::size_t start = pos_;
    while (pos_ < text().size() && std::isdigit(static_cast<unsigned char>(text()[pos_]))) ++pos_;
    if (start == pos_ || pos_ - start > 18) fail("expected a number");
    return std::stoull(std::string(text().substr(start, pos_ - start)));
  }
  std::string_view text() const { return line_.text; }
  std::size_t pos() const { return pos_; }
  void set_pos(std::size_t p) { pos_ = p; }
  std::size_t line() const { return line_.line; }

 private:
  const LogicalLine& line_;
  std::size_t pos_ = 0;
};

struct RingDecl {
  std::uint64_t characteristic = 0;
  std::size_t vars = 0;
  std::vector<std::pair<std::string, std::size_t>> denoms;  // text, column
};

RingDecl parse_ring_line(LineCursor& cur) {
  RingDecl decl;
  while (!cur.done()) {
    const std::string key = cur.word();
    cur.expect('=');
    if (key == "char") {
      decl.characteristic = cur.number();
    } else if (key == "vars") {
      decl.vars = cur.number();
    } else if (key == "denoms") {
      cur.expect('[');
      while (cur.peek() != ']') {
        cur.skip();
        const std::size_t start = cur.pos();
        int depth = 0;
        std::size_t p = start;
        const auto t = cur.text();
        while (p < t.size() && (depth > 0 || (t[p] != ',' && t[p] != ']'))) {
          if (t[p] == '(') ++depth;
          if (t[p] == ')') --depth;
          ++p;
        }
        if (p >= t.size()) cur.fail_at("unterminated denoms list", start);
        decl.denoms.emplace_back(std::string(t.substr(start, p - start)), start);
        cur.set_pos(p);
        if (cur.peek() == ',') cur.expect(',');
      }
      cur.expect(']');
    } else {
      cur.fail("unknown ring attribute '" + key + "'");
    }
  }
  if (decl.characteristic != 0 && !is_prime(decl.characteristic)) {
    throw ParseError("characteristic must be 0 or prime", cur.line(), 1);
  }
  return decl;
}

// Splits s at top-level occurrences of `sep` (outside parentheses).
std::vector<std::pair<std::string_view, std::size_t>> split_top(std::string_view s,
                                                                char sep) {
  std::vector<std::pair<std::string_view, std::size_t>> out;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '(') ++depth;
    if (s[i] == ')') --depth;
    if (s[i] == sep && depth == 0) {
      out.emplace_back(s.substr(start, i - start), start);
      start = i + 1;
    }
  }
  out.emplace_back(s.substr(start), start);
  return out;
}

class EntryParser {
 public:
  EntryParser(const RingPtr& ring, std::size_t line) : ring_(ring), line_(line) {}

  LocalizedElem parse(std::string_view text, std::size_t column) const {
    auto parts = split_top(text, '/');
    if (parts.size() > 2) {
      throw ParseError("more than one '/' in an entry", line_, column + parts[2].second);
    }
    MultiPoly num = poly(parts[0].first, column + parts[0].second);
    DenExponent den(ring_->denominators.size(), 0);
    if (parts.size() == 2) {
      const std::size_t dcol = column + parts[1].second;
      for (auto [factor, off] : split_top(parts[1].first, '*')) {
        absorb_factor(factor, dcol + off, num, den);
      }
    }
    return {ring_, std::move(num), std::move(den)};
  }

 private:
  MultiPoly poly(std::string_view text, std::size_t column) const {
    return parse_polynomial(text, ring_->num_vars, ring_->characteristic, line_, column);
  }

  void absorb_factor(std::string_view factor, std::size_t column, MultiPoly& num,
                     DenExponent& den) const {
    const MultiPoly f = poly(factor, column);
    if (auto idx = ring_->denominators.index_of(f)) {
      den[*idx] += 1;
      return;
    }
    // base^k with base in S.
    const auto caret = factor.rfind('^');
    if (caret != std::string_view::npos) {
      const std::string_view exp_text = trim(factor.substr(caret + 1));
      bool digits = !exp_text.empty();
      for (char c : exp_text) digits = digits && std::isdigit(static_cast<unsigned char>(c));
      if (digits && exp_text.size() < 7) {
        const MultiPoly base = poly(factor.substr(0, caret), column);
        if (auto idx = ring_->denominators.index_of(base)) {
          den[*idx] += static_cast<std::uint32_t>(std::stoul(std::string(exp_text)));
          return;
        }
      }
    }
    if (f.is_constant() && !f.is_zero() && ring_->characteristic != 0) {
      const auto c = residue(f.constant_term(), ring_->characteristic);
      num *= MultiPoly::constant(ring_->num_vars, ring_->characteristic,
                                 Integer(static_cast<unsigned long>(
                                     inv_mod(c, ring_->characteristic))));
      return;
    }
    if (f.is_constant() && f.constant_term() == 1) return;
    throw ParseError("denominator not in S: " + to_string(f), line_, column);
  }

  static std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
  }

  RingPtr ring_;
  std::size_t line_;
};

LMatrix parse_matrix(LineCursor& cur, const RingPtr& ring, std::size_t dim) {
  EntryParser entries(ring, cur.line());
  std::vector<std::vector<LocalizedElem>> rows;
  cur.expect('[');
  for (;;) {
    cur.expect('[');
    std::vector<LocalizedElem> row;
    for (;;) {
      cur.skip();
      const std::size_t start = cur.pos();
      const auto t = cur.text();
      std::size_t p = start;
      int depth = 0;
      while (p < t.size() && (depth > 0 || (t[p] != ',' && t[p] != ']'))) {
        if (t[p] == '(') ++depth;
        if (t[p] == ')') --depth;
        ++p;
      }
      if (p >= t.size()) cur.fail_at("unterminated matrix row", start);
      row.push_back(entries.parse(t.substr(start, p - start), start + 1));
      cur.set_pos(p);
      if (cur.peek() == ',') {
        cur.expect(',');
        continue;
      }
      cur.expect(']');
      break;
    }
    rows.push_back(std::move(row));
    if (cur.peek() == ',') {
      cur.expect(',');
      continue;
    }
    cur.expect(']');
    break;
  }
  if (rows.size() != dim) {
    throw ParseError("matrix has " + std::to_string(rows.size()) + " rows, expected " +
                         std::to_string(dim),
                     cur.line(), 1);
  }
  LMatrix m(dim, dim, LocalizedElem::zero(ring));
  for (std::size_t i = 0; i < dim; ++i) {
    if (rows[i].size() != dim) {
      throw ParseError("matrix row " + std::to_string(i + 1) + " has " +
                           std::to_string(rows[i].size()) + " entries, expected " +
                           std::to_string(dim),
                       cur.line(), 1);
    }
    for (std::size_t j = 0; j < dim; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

}  // namespace

GroupSpec parse_group_file(std::string_view text) {
  std::optional<RingDecl> ring_decl;
  RingPtr ring;
  std::optional<std::size_t> dim;
  std::vector<Generator> gens;

  for (const auto& line : logical_lines(text)) {
    LineCursor cur(line);
    const std::string keyword = cur.word();
    if (keyword == "ring") {
      if (ring) cur.fail("duplicate ring line");
      ring_decl = parse_ring_line(cur);
      std::vector<MultiPoly> denoms;
      for (const auto& [t, col] : ring_decl->denoms) {
        MultiPoly f = parse_polynomial(t, ring_decl->vars, ring_decl->characteristic,
                                       line.line, col + 1);
        if (f.is_zero()) throw ParseError("zero denominator in S", line.line, col + 1);
        denoms.push_back(std::move(f));
      }
      ring = make_ring(ring_decl->characteristic, ring_decl->vars, std::move(denoms));
    } else if (keyword == "dim") {
      if (dim) cur.fail("duplicate dim line");
      dim = cur.number();
      if (*dim == 0) cur.fail("dimension must be >= 1");
      if (!cur.done()) cur.fail("trailing text after dim");
    } else if (keyword == "gen") {
      if (!ring) cur.fail("gen before ring line");
      if (!dim) cur.fail("gen before dim line");
      Generator g;
      g.name = cur.word();
      cur.expect('=');
      g.matrix = parse_matrix(cur, ring, *dim);
      if (cur.done()) cur.fail("generator '" + g.name + "' needs an 'inv' clause");
      if (cur.word() != "inv") cur.fail("expected 'inv'");
      g.inverse_name = cur.word();
      cur.expect('=');
      g.inverse = parse_matrix(cur, ring, *dim);
      if (!cur.done()) cur.fail("trailing text after generator");
      gens.push_back(std::move(g));
    } else {
      throw ParseError("unknown keyword '" + keyword + "'", line.line, 1);
    }
  }
  if (!ring) throw ParseError("missing ring line", 0, 0);
  if (!dim) throw ParseError("missing dim line", 0, 0);
  return GroupSpec(ring, *dim, std::move(gens));
}

GroupSpec load_group_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open group file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_group_file(ss.str());
}

}  // namespace rfsep
