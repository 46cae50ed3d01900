#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rfsep/finite/field.hpp"
#include "rfsep/matgroup/group_spec.hpp"
#include "rfsep/ring/multipoly.hpp"
#include "rfsep/ring/unipoly.hpp"

namespace rfsep {

struct ReductionResult {
  std::vector<std::uint64_t> n_vec;
  /// f(tau^{n_1}, ..., tau^{n_s}), never zero.
  UniPoly g;
  /// max(deg f, 2).
  std::uint64_t D = 2;
  /// True when the recursive candidate vanished and the exhaustive search
  /// supplied n_vec.
  bool fallback = false;
  std::vector<std::string> audit;
};

/// Substitution exponents making f nonzero, following the peel-and-recurse
/// construction with every n_i <= D^{2s}.
ReductionResult reduce_to_one_variable(const MultiPoly& f);

struct PrimeChoice {
  Integer m;
  std::uint64_t p = 0;
  /// h(m), exact.
  Integer h_at_m;
  /// h(m) mod p.
  std::uint64_t residue = 0;
  /// Reported quantities from the existence argument: log max|a_i| and
  /// (2s+2) d^{2s+2}.
  double log_max_coeff = 0.0;
  Integer bound_term;
};

/// Smallest evaluation point m (0 if a_0 != 0, else the least m >= 1 with
/// h(m) != 0) and then the smallest prime p with h(m) != 0 mod p. Members
/// of `must_survive` must also be nonzero at (m, p); candidates violating
/// that are skipped. `s` and `d` only feed the reported bound term.
PrimeChoice choose_prime(const UniPoly& h, const std::vector<UniPoly>& must_survive = {},
                         std::uint64_t s = 0, std::uint64_t d = 0);

struct IrreducibleChoice {
  UniPoly w;
  std::uint64_t p = 0;
  Integer field_size;
};

/// Smallest monic irreducible w over F_p, by degree then coefficient
/// order, that divides neither h nor any member of `must_survive`.
IrreducibleChoice choose_irreducible(const UniPoly& h,
                                     const std::vector<UniPoly>& must_survive = {});

/// The composite of tau-power substitution and reduction into a finite
/// field, applied to a group spec.
class SpecializationMap {
 public:
  /// Characteristic 0: T_i -> m^{n_i} mod p.
  static SpecializationMap char0(const GroupSpec& spec, std::vector<std::uint64_t> n_vec,
                                 const Integer& m, std::uint64_t p);
  /// Characteristic p: T_i -> tau^{n_i} in F_p[tau]/(w).
  static SpecializationMap charp(const GroupSpec& spec, std::vector<std::uint64_t> n_vec,
                                 const UniPoly& w);

  const FiniteField& field() const noexcept { return field_; }
  const std::vector<std::uint64_t>& n_vec() const noexcept { return n_vec_; }
  std::size_t dim() const noexcept { return dim_; }

  FiniteField::Elem map(const MultiPoly& f) const;
  FiniteField::Elem map(const LocalizedElem& x) const;
  FqMatrix map(const LMatrix& m) const;
  /// Image of generator `gen` (sign selects the supplied inverse).
  const FqMatrix& letter_image(const Letter& l) const;
  FqMatrix word_image(const GroupWord& w) const;
  /// Images of the declared generators, in order.
  std::vector<FqMatrix> generator_images() const;

 private:
  SpecializationMap(const GroupSpec& spec, FiniteField field,
                    std::vector<std::uint64_t> n_vec, std::optional<Integer> m);
  void init(const GroupSpec& spec);

  FiniteField field_;
  std::vector<std::uint64_t> n_vec_;
  std::optional<Integer> m_;
  std::size_t dim_ = 0;
  std::vector<FiniteField::Elem> den_inverse_;
  std::vector<FqMatrix> images_;
  std::vector<FqMatrix> inverse_images_;
};

SpecializationMap specialize_group_char0(const GroupSpec& spec,
                                         std::vector<std::uint64_t> n_vec,
                                         const Integer& m, std::uint64_t p);
SpecializationMap specialize_group_charp(const GroupSpec& spec,
                                         std::vector<std::uint64_t> n_vec,
                                         const IrreducibleChoice& w);

}  // namespace rfsep
