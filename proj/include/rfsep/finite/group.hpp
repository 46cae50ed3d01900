#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "rfsep/finite/field.hpp"

namespace rfsep {

/// Concrete encoding of group elements as fixed-width symbol strings.
class Realization {
 public:
  virtual ~Realization() = default;
  virtual std::size_t width() const = 0;
  virtual void identity(std::uint32_t* out) const = 0;
  /// out = a * b. `out` never aliases the inputs.
  virtual void multiply(const std::uint32_t* a, const std::uint32_t* b,
                        std::uint32_t* out) const = 0;
  /// Brings an element to canonical form (projective scaling).
  virtual void canonicalize(std::uint32_t* /*x*/) const {}
  virtual std::string format(const std::uint32_t* x) const;
};

/// Permutations of {0..n-1}; the product ab applies a first, then b.
class PermRealization : public Realization {
 public:
  explicit PermRealization(std::size_t degree) : degree_(degree) {}
  std::size_t width() const override { return degree_; }
  void identity(std::uint32_t* out) const override;
  void multiply(const std::uint32_t* a, const std::uint32_t* b,
                std::uint32_t* out) const override;
  std::string format(const std::uint32_t* x) const override;

 private:
  std::size_t degree_;
};

/// n x n matrices over a finite field, optionally modulo scalars.
class MatrixRealization : public Realization {
 public:
  MatrixRealization(FiniteField field, std::size_t dim, bool projective);
  std::size_t width() const override { return dim_ * dim_; }
  void identity(std::uint32_t* out) const override;
  void multiply(const std::uint32_t* a, const std::uint32_t* b,
                std::uint32_t* out) const override;
  void canonicalize(std::uint32_t* x) const override;
  std::string format(const std::uint32_t* x) const override;

  const FiniteField& field() const noexcept { return field_; }
  std::size_t dim() const noexcept { return dim_; }
  bool projective() const noexcept { return projective_; }
  std::vector<std::uint32_t> encode(const FqMatrix& m) const;
  FqMatrix decode(const std::uint32_t* x) const;

 private:
  FiniteField field_;
  std::size_t dim_;
  bool projective_;
};

class FiniteGroup;

/// Direct product of already materialized groups; symbols are the factor
/// element indices.
class ProductRealization : public Realization {
 public:
  explicit ProductRealization(std::vector<std::shared_ptr<const FiniteGroup>> factors);
  std::size_t width() const override { return factors_.size(); }
  void identity(std::uint32_t* out) const override;
  void multiply(const std::uint32_t* a, const std::uint32_t* b,
                std::uint32_t* out) const override;
  std::string format(const std::uint32_t* x) const override;
  const std::vector<std::shared_ptr<const FiniteGroup>>& factors() const {
    return factors_;
  }

 private:
  std::vector<std::shared_ptr<const FiniteGroup>> factors_;
};

/// A finite group materialized by closure: every element gets an index,
/// index 0 is the identity, generators are the first indices after it
/// (deduplicated). Products of indices go through a Cayley table when the
/// order is small and through symbol multiplication plus hashing otherwise.
class FiniteGroup {
 public:
  using Elem = std::uint32_t;
  static constexpr std::size_t kCayleyLimit = 2048;

  /// Closure of `generators` (symbol strings of the realization's width).
  /// Throws CapacityError once more than `cap` elements appear.
  static std::shared_ptr<FiniteGroup> generate(
      std::shared_ptr<const Realization> realization,
      const std::vector<std::vector<std::uint32_t>>& generators,
      std::size_t cap);

  std::size_t order() const noexcept { return count_; }
  const Realization& realization() const noexcept { return *realization_; }
  std::shared_ptr<const Realization> realization_ptr() const {
    return realization_;
  }
  /// Indices of the supplied generators, in input order (may repeat).
  const std::vector<Elem>& generators() const noexcept { return generators_; }

  Elem identity() const noexcept { return 0; }
  Elem mul(Elem a, Elem b) const;
  Elem inv(Elem a) const { return inverse_[a]; }
  Elem pow(Elem a, long long e) const;
  Elem commutator(Elem a, Elem b) const;
  Elem conjugate(Elem k, Elem x) const;
  std::uint64_t element_order(Elem a) const { return orders_[a]; }
  std::uint64_t max_element_order() const;
  /// Distinct element orders, ascending.
  std::vector<std::uint64_t> element_order_set() const;

  std::span<const std::uint32_t> symbols(Elem a) const;
  /// Index of a symbol string (canonicalized first), or -1 if absent.
  long long find(std::vector<std::uint32_t> symbols) const;
  std::string format(Elem a) const;

 private:
  FiniteGroup() = default;
  long long lookup(const std::uint32_t* canonical) const;
  Elem insert(const std::uint32_t* canonical);
  void rehash();
  void finish();

  std::shared_ptr<const Realization> realization_;
  std::size_t width_ = 0;
  std::size_t count_ = 0;
  std::vector<std::uint32_t> arena_;
  std::vector<std::int64_t> table_;
  std::vector<Elem> generators_;
  std::vector<Elem> cayley_;
  std::vector<Elem> inverse_;
  std::vector<std::uint64_t> orders_;
};

using GroupPtr = std::shared_ptr<const FiniteGroup>;

/// A subgroup as an ascending list of element indices of its ambient group.
struct Subgroup {
  std::vector<FiniteGroup::Elem> elements;
  std::vector<FiniteGroup::Elem> generators;

  std::size_t order() const noexcept { return elements.size(); }
  bool contains(FiniteGroup::Elem x) const;
  bool is_trivial() const noexcept { return elements.size() <= 1; }
};

Subgroup generate_subgroup(const FiniteGroup& g,
                           const std::vector<FiniteGroup::Elem>& gens);
/// Smallest subgroup of `within` containing `gens` and normalized by
/// `within`'s generators.
Subgroup normal_closure(const FiniteGroup& g, const Subgroup& within,
                        const std::vector<FiniteGroup::Elem>& gens);
/// [H, H] as the normal closure in H of commutators of H's generators.
Subgroup derived_subgroup(const FiniteGroup& g, const Subgroup& h);
/// D^n(H), D^0(H) = H.
Subgroup derived_series_term(const FiniteGroup& g, const Subgroup& h,
                             std::size_t n);
Subgroup whole_group(const FiniteGroup& g);

/// Order of the subgroup of G_1 x ... x G_r generated by the given tuples
/// (tuples[i][j] is the j-th coordinate of the i-th generator).
std::size_t joint_image_order(const std::vector<const FiniteGroup*>& groups,
                              const std::vector<std::vector<FiniteGroup::Elem>>& tuples,
                              std::size_t cap);

/// Convenience constructors.
std::shared_ptr<FiniteGroup> permutation_group(
    std::size_t degree, const std::vector<std::vector<std::uint32_t>>& gens,
    std::size_t cap = 1'000'000);
std::shared_ptr<FiniteGroup> matrix_group(const FiniteField& field,
                                          std::size_t dim,
                                          const std::vector<FqMatrix>& gens,
                                          bool projective,
                                          std::size_t cap = 1'000'000);
std::shared_ptr<FiniteGroup> direct_product(std::vector<GroupPtr> factors,
                                            std::size_t cap = 1'000'000);

/// Parses cycle notation "(1,2,3)(4,5)" on points 1..degree.
std::vector<std::uint32_t> parse_cycles(const std::string& text,
                                        std::size_t degree);

}  // namespace rfsep
