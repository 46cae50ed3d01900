#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rfsep/finite/field.hpp"
#include "rfsep/finite/group.hpp"
#include "rfsep/ring/integer.hpp"

namespace rfsep {

/// Families of finite groups of Lie type. The classical families A, B, C, D
/// and 2A are the main ones; the others carry order formulas only and have a
/// fixed rank (except 2D).
enum class LieFamily {
  A, B, C, D, TwistedA,
  TwistedD, Triality, G2, F4, E6, E7, E8, TwistedE6, Suzuki, ReeG2, ReeF4
};

std::string to_string(LieFamily family);

struct LieTypeId {
  LieFamily family = LieFamily::A;
  std::uint64_t rank = 1;
  std::uint64_t p = 2;
  std::uint64_t e = 1;

  Integer q() const;
  /// Conventional name such as "A1(7)", "2A2(2)", "2B2(8)".
  std::string name() const;
  friend bool operator==(const LieTypeId&, const LieTypeId&) = default;
};

/// Validates the rank constraint of the family and that p is prime, e >= 1.
/// Throws PreconditionError.
LieTypeId make_lie_id(LieFamily family, std::uint64_t rank, std::uint64_t p,
                      std::uint64_t e = 1);
/// Same with q given as a prime power.
LieTypeId make_lie_id_q(LieFamily family, std::uint64_t rank, std::uint64_t q);

/// Parses Lie notation ("A1", "2A2", "G2", "2B2") together with a field
/// size; classical names ("SL2", "PSU3", "Sp4", "Omega7") are accepted by
/// parse_lie_descriptor.
LieTypeId parse_lie_name(const std::string& family_and_rank, std::uint64_t q);
/// Descriptor with the field in parentheses, "SL_2(3)", "^2F_4(2)", "A1(7)".
LieTypeId parse_lie_descriptor(const std::string& text);

/// Order of the group modulo its center (the simple group, except for the
/// Tits exceptions). With require_simple the exceptions are refused.
Integer lie_order(const LieTypeId& id, bool require_simple = false);

/// The eight groups of Lie type that are not simple modulo their center.
const std::vector<std::string>& tits_exception_names();
bool is_tits_exception(const LieTypeId& id);
bool is_tits_exception(const std::string& descriptor);

bool extension_bounded(const std::vector<LieTypeId>& ids, std::uint64_t e);
/// binom(l, 2): the extension degree bound for a simple group of Lie type
/// inside GL_l.
std::uint64_t extension_bound_from_dimension(std::uint64_t l);

/// Generators of a matrix group over a finite field.
struct FiniteRep {
  FiniteField field;
  std::size_t dim = 0;
  std::vector<FqMatrix> generators;
  /// Generators act modulo scalars.
  bool projective = false;
  std::optional<std::uint64_t> order;
};

/// Checks dimensions and invertibility of every generator.
void validate_rep(const FiniteRep& rep);
std::shared_ptr<FiniteGroup> materialize(const FiniteRep& rep, std::size_t cap);

/// SL_{n+1}(q) (or PSL when projective) from elementary transvections
/// x_ij(tau^k). Only family A is materializable.
FiniteRep lie_natural_rep(const LieTypeId& id, bool projective);

/// Writes an element of F_{p^k} as a k x k matrix over F_p acting on the
/// basis 1, tau, ..., tau^{k-1} by multiplication.
FqMatrix multiplication_block(const FiniteField& big, const FiniteField& prime,
                              FiniteField::Elem a);
/// The Frobenius x -> x^p of F_{p^k} as a k x k matrix over F_p.
FqMatrix frobenius_block(const FiniteField& big, const FiniteField& prime);

/// Image of (g, x^t) in G x| C_k, as a (k w) x (k w) matrix over F_p.
FqMatrix frobenius_semidirect_image(const FiniteField& big, const FqMatrix& g,
                                    std::uint64_t t);
/// Representation of G x| C_k over F_p, where C_k acts on G through the
/// entrywise Frobenius. The last generator is the Frobenius operator.
FiniteRep frobenius_semidirect_rep(const FiniteRep& rep);

/// Image of (g_1, ..., g_m; sigma) in H^m x| Sym(m). sigma[i] is the block
/// that block i is sent to.
FqMatrix product_aut_image(const FiniteField& field,
                           const std::vector<FqMatrix>& blocks,
                           const std::vector<std::size_t>& sigma);
/// H^m x| Sym(m): each generator of H in each block, then the swap of the
/// first two blocks and the cyclic shift (when m > 2).
FiniteRep product_aut_rep(const FiniteRep& rep, std::size_t m);

/// Maximal element order of the group generated by the representation.
std::uint64_t m1_bruteforce(const FiniteRep& rep, std::size_t cap);

/// max lcm(o_1, ..., o_l) over multisets of l element orders.
std::uint64_t m1_of_power(const std::vector<std::uint64_t>& element_orders,
                          std::size_t l);

struct RankRatio {
  Integer group_order;  // |H|
  std::uint64_t m1 = 1;  // m_1(H^l)
  std::size_t multiplicity = 1;
  /// log |H^l| / log m_1(H^l)
  double value = 0;
};

/// The ratio for the simple group H of type id (materialized projectively).
RankRatio rank_ratio(const LieTypeId& id, std::size_t multiplicity,
                     std::size_t cap);
/// The ratio for any materialized group.
RankRatio rank_ratio(const FiniteGroup& h, std::size_t multiplicity);

}  // namespace rfsep
