#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "rfsep/finite/group.hpp"
#include "rfsep/matgroup/word.hpp"
#include "rfsep/rfgrowth/catalog.hpp"

namespace rfsep {

/// A homomorphism from the free group F_k, given by the images of x_1..x_k.
struct Hom {
  GroupPtr target;
  std::vector<FiniteGroup::Elem> images;

  std::size_t rank() const noexcept { return images.size(); }
  FiniteGroup::Elem evaluate(const GroupWord& w) const;
  std::size_t image_order() const;
  bool surjective() const { return image_order() == target->order(); }
};

/// Calls `visit` on every k-tuple of elements of Q in lexicographic order of
/// element indices until it returns false. Throws CapacityError when
/// |Q|^k exceeds the budget.
void for_each_hom(std::size_t k, const GroupPtr& target, std::uint64_t budget,
                  const std::function<bool(const Hom&)>& visit);
std::vector<Hom> enumerate_homs(std::size_t k, const GroupPtr& target,
                                std::uint64_t budget);

/// An endomorphism of F_k given by generator images, with its inverse.
struct AutRule {
  std::string name;
  std::vector<GroupWord> images;
  std::vector<GroupWord> inverse_images;
};

GroupWord apply_rule(const std::vector<GroupWord>& images, const GroupWord& w);
/// Builds a rule. Without an explicit inverse, the images must form an
/// elementary Nielsen move (signed permutation, or x_i -> x_i x_j^{+-1} or
/// x_j^{+-1} x_i) whose inverse is computed. A supplied inverse is checked
/// by composing both ways. Throws ValidationError otherwise.
AutRule make_aut_rule(std::string name, std::vector<GroupWord> images,
                      std::optional<std::vector<GroupWord>> inverse = std::nullopt);
/// Swap x1 x2, the cyclic shift (k > 2), x1 -> x1^-1 and x1 -> x1 x2.
std::vector<AutRule> nielsen_generators(std::size_t k);
/// Lines "NAME: x -> WORD, y -> WORD [| x -> WORD, y -> WORD]"; generators
/// not mentioned are fixed; the part after '|' is the inverse.
std::vector<AutRule> parse_aut_rules(const std::string& text, const Alphabet& alphabet);

/// ker(phi) and ker(phi o alpha) for every rule alpha and its inverse
/// satisfy ker(phi) <= ker(phi o alpha), tested by joint image orders.
bool kernel_invariant(const Hom& phi, const std::vector<AutRule>& rules);
/// ker(a) = ker(b).
bool same_kernel(const Hom& a, const Hom& b);

struct InvariantCore {
  /// Orbit representatives phi o alpha, phi first.
  std::vector<Hom> orbit;
  /// The diagonal map g -> (psi(g))_psi onto its image.
  Hom diagonal;
};

/// Throws OrbitUnbounded when the orbit of ker(phi) exceeds orbit_cap.
InvariantCore invariant_core(const Hom& phi, const std::vector<AutRule>& rules,
                             std::size_t orbit_cap, std::size_t element_cap = 1'000'000);

struct FactorProjection {
  std::size_t factor = 0;
  Hom hom;
};

/// phi must map into a direct product; returns the first factor in which
/// `tracked` survives.
FactorProjection project_to_factor(const Hom& phi, const GroupWord& tracked);
Hom project(const Hom& phi, std::size_t factor);

struct DepthOptions {
  ClassFilter filter;
  /// Skip targets with more than this many k-tuples.
  std::uint64_t budget = 20'000'000;
  /// Require kernels invariant under these rules.
  std::vector<AutRule> aut;
};

struct DepthReport {
  std::string target;
  std::size_t order = 0;
  std::size_t catalog_index = 0;
  Hom witness;
  std::string class_filter;
  std::string invariance;  // "not requested" or "invariant"
  /// No catalog entry of smaller order was skipped and the catalog holds
  /// every candidate group of smaller order.
  bool exhaustive = false;
  std::size_t skipped_targets = 0;
};

/// Smallest catalog target admitting phi: F_k -> Q with phi(g) != 1
/// (surjective for the Lie classes). Throws NotSeparated.
DepthReport depth(std::size_t k, const GroupWord& g, const QuotientCatalog& catalog,
                  const DepthOptions& options = {});

}  // namespace rfsep
