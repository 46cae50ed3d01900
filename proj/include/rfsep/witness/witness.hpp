#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "rfsep/matgroup/group_spec.hpp"
#include "rfsep/matgroup/word.hpp"

namespace rfsep {

/// Group in which malabelian witnesses are built: a free group of rank k
/// (identity decided by free reduction) or a matrix group (exact matrix
/// equality).
class MalabelianContext {
 public:
  static MalabelianContext free_group(std::size_t rank, std::size_t kappa = 1,
                                      std::size_t kappa_max = 4);
  static MalabelianContext matrix_group(std::shared_ptr<const GroupSpec> spec,
                                        std::size_t kappa = 1,
                                        std::size_t kappa_max = 6);

  bool is_free() const noexcept { return spec_ == nullptr; }
  std::size_t rank() const noexcept { return rank_; }
  std::size_t kappa() const noexcept { return kappa_; }
  std::size_t kappa_max() const noexcept { return kappa_max_; }
  const Alphabet& alphabet() const noexcept { return alphabet_; }
  const std::shared_ptr<const GroupSpec>& spec() const noexcept { return spec_; }

  bool is_trivial(const GroupWord& w) const;
  std::string format(const GroupWord& w) const { return format_word(w, alphabet_); }
  GroupWord parse(std::string_view text) const { return parse_word(text, alphabet_); }

 private:
  MalabelianContext() = default;
  std::size_t rank_ = 0;
  std::size_t kappa_ = 1;
  std::size_t kappa_max_ = 4;
  Alphabet alphabet_;
  std::shared_ptr<const GroupSpec> spec_;
};

/// lambda(l) = ceil(cz * log2 l) + 3.
std::size_t solvable_depth(std::size_t dim, double cz = 5.0);

/// Shortlex-first k with |k| <= kappa_max and [g, k h k^-1] != 1.
/// Throws MalabelianViolation when none exists within the radius.
GroupWord find_conjugator(const MalabelianContext& ctx, const GroupWord& g,
                          const GroupWord& h);

struct WitnessRecord {
  GroupWord input;
  std::size_t level = 0;
  std::vector<GroupWord> conjugators;
  /// The witness as a word; absent when longer than the materialization cap.
  std::optional<GroupWord> word;
  /// Length of the word as constructed (after free reduction in free
  /// contexts, unreduced nested commutator length otherwise).
  Integer length;
  /// max(kappa, longest conjugator used).
  std::size_t kappa_eff = 0;
  /// 8^n * max(|a|, kappa_eff).
  Integer bound;
  /// Value of the witness and its inverse in matrix contexts.
  std::optional<LMatrix> matrix;
  std::optional<LMatrix> matrix_inverse;
};

/// w_{0,a} = a; w_{j,a} = [w_{j-1,a}, k_j w_{j-1,a} k_j^-1].
WitnessRecord derived_witness(const MalabelianContext& ctx, const GroupWord& a,
                              std::size_t n, std::size_t materialize_cap = 1u << 20);

struct LcmTree {
  /// levels[0] is the padded input; each later level pairs the previous one.
  std::vector<std::vector<GroupWord>> levels;
  /// conjugators[i][j] was used to combine levels[i][2j], levels[i][2j+1].
  std::vector<std::vector<GroupWord>> conjugators;
  GroupWord result;
  std::size_t kappa_eff = 0;
};

LcmTree lcm_witness(const MalabelianContext& ctx, const std::vector<GroupWord>& t);

/// 4 |T|^2 (max |t| + 3 kappa).
std::uint64_t lcm_length_bound(const std::vector<GroupWord>& t, std::size_t kappa);

}  // namespace rfsep
