#pragma once

#include <cstdint>
#include <vector>

#include "rfsep/ring/integer.hpp"
#include "rfsep/ring/unipoly.hpp"

namespace rfsep {

/// Moebius function; n >= 1.
int mobius(std::uint64_t n);

/// Number of monic irreducible polynomials of degree m over F_p, via Gauss'
/// formula (1/m) sum_{d | m} mu(d) p^{m/d}.
Integer gauss_irreducible_count(std::uint64_t p, std::uint64_t m);

/// All monic irreducibles over F_p of degree exactly `degree`, ordered by
/// their coefficient vector (a_{m-1}, ..., a_0) read as a base-p number.
std::vector<UniPoly> irreducibles_of_degree(std::uint64_t p,
                                            std::uint64_t degree);

/// All monic irreducibles of degree 1..max_deg over F_p, ordered by degree
/// then as in irreducibles_of_degree.
std::vector<UniPoly> enumerate_irreducibles(std::uint64_t p,
                                            std::uint64_t max_deg);

/// Rabin's irreducibility test over F_p. Independent of the enumeration.
bool is_irreducible_fp(const UniPoly& w);

}  // namespace rfsep
