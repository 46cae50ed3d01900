#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "rfsep/finite/group.hpp"

namespace rfsep {

/// <x, y | x^m = 1, y^n = x^s, y x y^-1 = x^r>, elements x^a y^b stored as
/// (a, b). Requires r^n = 1 and r s = s modulo m.
class MetacyclicRealization : public Realization {
 public:
  MetacyclicRealization(std::uint32_t m, std::uint32_t n, std::uint32_t r,
                        std::uint32_t s);
  std::size_t width() const override { return 2; }
  void identity(std::uint32_t* out) const override;
  void multiply(const std::uint32_t* a, const std::uint32_t* b,
                std::uint32_t* out) const override;

 private:
  std::uint32_t m_, n_, s_;
  std::vector<std::uint32_t> rpow_;  // r^b mod m for b < n
};

/// N x| H where h acts on N by action[h] (a permutation of N's indices).
class SemidirectRealization : public Realization {
 public:
  SemidirectRealization(GroupPtr n, GroupPtr h,
                        std::vector<std::vector<FiniteGroup::Elem>> action);
  std::size_t width() const override { return 2; }
  void identity(std::uint32_t* out) const override;
  void multiply(const std::uint32_t* a, const std::uint32_t* b,
                std::uint32_t* out) const override;

 private:
  GroupPtr n_;
  GroupPtr h_;
  std::vector<std::vector<FiniteGroup::Elem>> action_;
};

std::shared_ptr<FiniteGroup> trivial_group();
std::shared_ptr<FiniteGroup> cyclic_group(std::uint32_t n);
/// Dihedral group of order 2n.
std::shared_ptr<FiniteGroup> dihedral_group(std::uint32_t n);
std::shared_ptr<FiniteGroup> metacyclic_group(std::uint32_t m, std::uint32_t n,
                                              std::uint32_t r, std::uint32_t s);
std::shared_ptr<FiniteGroup> symmetric_group(std::uint32_t n);
std::shared_ptr<FiniteGroup> alternating_group(std::uint32_t n);
/// PSL_2(q), acting projectively on 2x2 matrices.
std::shared_ptr<FiniteGroup> psl2(std::uint64_t q);
/// SL_2(3) as 2x2 matrices over F_3.
std::shared_ptr<FiniteGroup> sl2_3();

/// Extends generator images to a map on all of G. Returns an empty vector
/// when the images do not define a homomorphism.
std::vector<FiniteGroup::Elem> extend_homomorphism(
    const FiniteGroup& g, const FiniteGroup& target,
    const std::vector<FiniteGroup::Elem>& images);

/// N x| H where H's generators act on N through automorphisms given by the
/// images of N's generators. Throws ValidationError when the data does not
/// define an action.
std::shared_ptr<FiniteGroup> semidirect_product(
    GroupPtr n, GroupPtr h,
    const std::vector<std::vector<FiniteGroup::Elem>>& generator_actions);

/// Counts of elements per element order, ascending by order.
std::vector<std::pair<std::uint64_t, std::size_t>> order_histogram(const FiniteGroup& g);
/// A generating set found greedily, elements of large order first.
std::vector<FiniteGroup::Elem> small_generating_set(const FiniteGroup& g);
/// Exact isomorphism test by backtracking over generator images.
bool are_isomorphic(const FiniteGroup& a, const FiniteGroup& b);

}  // namespace rfsep
