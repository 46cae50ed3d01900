#include "rfsep/matgroup/word.hpp"

#include <algorithm>
#include <cctype>

#include "rfsep/core/error.hpp"

namespace rfsep {

GroupWord GroupWord::inverse() const {
  std::vector<Letter> out;
  out.reserve(letters_.size());
  for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) {
    out.push_back(it->inverse());
  }
  return GroupWord(std::move(out));
}

GroupWord GroupWord::reduced() const {
  std::vector<Letter> stack;
  stack.reserve(letters_.size());
  for (const auto& l : letters_) {
    if (!stack.empty() && stack.back() == l.inverse()) {
      stack.pop_back();
    } else {
      stack.push_back(l);
    }
  }
  return GroupWord(std::move(stack));
}

bool GroupWord::is_reduced() const {
  for (std::size_t i = 1; i < letters_.size(); ++i) {
    if (letters_[i] == letters_[i - 1].inverse()) return false;
  }
  return true;
}

GroupWord GroupWord::pow(long long k) const {
  const GroupWord base = k < 0 ? inverse() : *this;
  GroupWord out;
  for (long long i = 0; i < (k < 0 ? -k : k); ++i) out *= base;
  return out;
}

GroupWord& GroupWord::operator*=(const GroupWord& rhs) {
  letters_.insert(letters_.end(), rhs.letters_.begin(), rhs.letters_.end());
  return *this;
}

GroupWord commutator(const GroupWord& a, const GroupWord& b) {
  return a * b * a.inverse() * b.inverse();
}

GroupWord conjugate(const GroupWord& k, const GroupWord& w) {
  return k * w * k.inverse();
}

Alphabet Alphabet::free(std::size_t rank) {
  Alphabet a;
  if (rank <= 3) {
    const char* base[] = {"x", "y", "z"};
    for (std::size_t i = 0; i < rank; ++i) a.names.emplace_back(base[i]);
  } else {
    for (std::size_t i = 0; i < rank; ++i) a.names.push_back("x" + std::to_string(i + 1));
  }
  return a;
}

namespace {

class WordParser {
 public:
  WordParser(std::string_view text, const Alphabet& alphabet)
      : text_(text), alphabet_(alphabet) {}

  GroupWord parse() {
    GroupWord w = sequence();
    skip();
    if (pos_ < text_.size()) fail(std::string("unexpected '") + text_[pos_] + "'");
    return w;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("word: " + what, 1, pos_ + 1);
  }

  void skip() {
    while (pos_ < text_.size() &&
           (std::isspace(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '*' ||
            text_[pos_] == '.')) {
      ++pos_;
    }
  }

  char peek() {
    skip();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  GroupWord sequence() {
    GroupWord w;
    for (;;) {
      char c = peek();
      if (c == '\0' || c == ')' || c == ']' || c == ',') return w;
      w *= item();
    }
  }

  GroupWord item() {
    GroupWord base = primary();
    if (peek() == '^') {
      ++pos_;
      skip();
      bool negative = false;
      if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) {
        negative = text_[pos_] == '-';
        ++pos_;
      }
      const std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (start == pos_) fail("expected an exponent after '^'");
      if (pos_ - start > 6) fail("exponent too large");
      const long long k = std::stoll(std::string(text_.substr(start, pos_ - start)));
      return base.pow(negative ? -k : k);
    }
    return base;
  }

  GroupWord primary() {
    const char c = peek();
    if (c == '(') {
      ++pos_;
      GroupWord inner = sequence();
      if (peek() != ')') fail("expected ')'");
      ++pos_;
      return inner;
    }
    if (c == '[') {
      ++pos_;
      GroupWord a = sequence();
      if (peek() != ',') fail("expected ',' in commutator");
      ++pos_;
      GroupWord b = sequence();
      if (peek() != ']') fail("expected ']'");
      ++pos_;
      return commutator(a, b);
    }
    if (c == '1') {
      ++pos_;
      return {};
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
        ++pos_;
      }
      return identifier(text_.substr(start, pos_ - start), start);
    }
    if (c == '\0') fail("unexpected end of word");
    fail(std::string("unexpected '") + c + "'");
  }

  bool lookup(std::string_view name, Letter& out) const {
    for (std::size_t i = 0; i < alphabet_.names.size(); ++i) {
      if (alphabet_.names[i] == name) {
        out = {static_cast<std::uint32_t>(i), 1};
        return true;
      }
    }
    auto it = alphabet_.aliases.find(std::string(name));
    if (it != alphabet_.aliases.end()) {
      out = it->second;
      return true;
    }
    return false;
  }

  GroupWord identifier(std::string_view ident, std::size_t start) {
    Letter l;
    if (lookup(ident, l)) return GroupWord({l});
    // Greedy longest-prefix split of juxtaposed names.
    GroupWord w;
    std::size_t i = 0;
    while (i < ident.size()) {
      std::size_t best = 0;
      Letter best_letter;
      for (std::size_t len = ident.size() - i; len > 0; --len) {
        if (lookup(ident.substr(i, len), best_letter)) {
          best = len;
          break;
        }
      }
      if (best == 0) {
        pos_ = start;
        fail("unknown generator '" + std::string(ident) + "'");
      }
      w *= GroupWord({best_letter});
      i += best;
    }
    return w;
  }

  std::string_view text_;
  const Alphabet& alphabet_;
  std::size_t pos_ = 0;
};

}  // namespace

GroupWord parse_word(std::string_view text, const Alphabet& alphabet) {
  return WordParser(text, alphabet).parse();
}

std::string format_word(const GroupWord& w, const Alphabet& alphabet) {
  const auto& ls = w.letters();
  if (ls.empty()) return "1";
  std::string out;
  for (std::size_t i = 0; i < ls.size();) {
    std::size_t j = i;
    while (j < ls.size() && ls[j] == ls[i]) ++j;
    const long long run = static_cast<long long>(j - i) * ls[i].sign;
    if (!out.empty()) out += ' ';
    if (ls[i].gen >= alphabet.names.size()) {
      throw StructuralError("format_word: generator index out of range");
    }
    out += alphabet.names[ls[i].gen];
    if (run != 1) out += "^" + std::to_string(run);
    i = j;
  }
  return out;
}

std::size_t letter_rank(const Letter& l) {
  return 2 * static_cast<std::size_t>(l.gen) + (l.sign > 0 ? 0 : 1);
}

std::vector<GroupWord> reduced_words_of_length(std::size_t rank, std::size_t n) {
  std::vector<GroupWord> level{GroupWord()};
  for (std::size_t len = 0; len < n; ++len) {
    std::vector<GroupWord> next;
    for (const auto& w : level) {
      for (std::size_t r = 0; r < 2 * rank; ++r) {
        const Letter l{static_cast<std::uint32_t>(r / 2), r % 2 == 0 ? 1 : -1};
        if (!w.empty() && w.letters().back() == l.inverse()) continue;
        GroupWord x = w;
        x *= GroupWord({l});
        next.push_back(std::move(x));
      }
    }
    level = std::move(next);
  }
  return level;
}

GroupWord random_reduced_word(std::size_t rank, std::size_t length, std::mt19937_64& rng) {
  if (rank == 0 && length > 0) throw PreconditionError("random word over an empty alphabet");
  std::vector<Letter> out;
  out.reserve(length);
  while (out.size() < length) {
    std::uniform_int_distribution<std::size_t> pick(0, 2 * rank - 1);
    const std::size_t r = pick(rng);
    const Letter l{static_cast<std::uint32_t>(r / 2), r % 2 == 0 ? 1 : -1};
    if (!out.empty() && out.back() == l.inverse()) continue;
    out.push_back(l);
  }
  return GroupWord(std::move(out));
}

}  // namespace rfsep
