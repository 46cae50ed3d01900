#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace rfsep {

/// One letter of a group word: generator index and exponent sign.
struct Letter {
  std::uint32_t gen = 0;
  int sign = 1;

  Letter inverse() const { return {gen, -sign}; }
  friend bool operator==(const Letter&, const Letter&) = default;
};

/// A word over signed generator indices. Not automatically reduced.
class GroupWord {
 public:
  GroupWord() = default;
  explicit GroupWord(std::vector<Letter> letters) : letters_(std::move(letters)) {}

  static GroupWord generator(std::uint32_t gen, int sign = 1) {
    return GroupWord({Letter{gen, sign}});
  }

  const std::vector<Letter>& letters() const noexcept { return letters_; }
  std::size_t length() const noexcept { return letters_.size(); }
  bool empty() const noexcept { return letters_.empty(); }

  GroupWord inverse() const;
  /// Cancels adjacent x x^-1 pairs until none remain.
  GroupWord reduced() const;
  bool is_reduced() const;
  GroupWord pow(long long k) const;

  GroupWord& operator*=(const GroupWord& rhs);
  friend GroupWord operator*(GroupWord a, const GroupWord& b) { return a *= b; }
  friend bool operator==(const GroupWord&, const GroupWord&) = default;

 private:
  std::vector<Letter> letters_;
};

/// [a, b] = a b a^-1 b^-1.
GroupWord commutator(const GroupWord& a, const GroupWord& b);
/// k w k^-1.
GroupWord conjugate(const GroupWord& k, const GroupWord& w);

/// Names for words: generator names plus optional aliases such as
/// "Ainv" -> (A, -1).
struct Alphabet {
  std::vector<std::string> names;
  std::map<std::string, Letter> aliases;

  std::size_t size() const noexcept { return names.size(); }
  /// x, y, z for k <= 3, otherwise x1..xk.
  static Alphabet free(std::size_t rank);
};

/// Parses words like "A B^-1", "x y x^-1", "[x,y]^2", "(A B)^3 Ainv".
/// Juxtaposed names ("AB", "xyx") are split greedily by longest known
/// name. "1" denotes the empty word.
GroupWord parse_word(std::string_view text, const Alphabet& alphabet);

/// Space separated, runs compressed: "A^3 B^-1". The empty word is "1".
std::string format_word(const GroupWord& w, const Alphabet& alphabet);

/// Letters in shortlex order: (g0,+1), (g0,-1), (g1,+1), ...
std::size_t letter_rank(const Letter& l);

/// All freely reduced words of length exactly n over `rank` generators, in
/// shortlex order.
std::vector<GroupWord> reduced_words_of_length(std::size_t rank, std::size_t n);

/// Uniformly random freely reduced word of the given length.
GroupWord random_reduced_word(std::size_t rank, std::size_t length, std::mt19937_64& rng);

}  // namespace rfsep
