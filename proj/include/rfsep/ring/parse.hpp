#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>

#include "rfsep/ring/multipoly.hpp"
#include "rfsep/ring/unipoly.hpp"

namespace rfsep {

/// Parses a polynomial literal: integers, T1..Ts (and `tau` when s = 1),
/// `+ - * ^`, parentheses. Juxtaposition multiplies ("2T1", "(T1+1)(T1-1)").
/// Errors carry `line` and the column of the offending character, counted
/// from `column`.
MultiPoly parse_polynomial(std::string_view text, std::size_t num_vars,
                           std::uint64_t characteristic, std::size_t line = 1,
                           std::size_t column = 1);

/// Same grammar with `tau` as the only variable.
UniPoly parse_unipoly(std::string_view text, std::uint64_t characteristic,
                      std::size_t line = 1, std::size_t column = 1);

/// Collapses a one-variable MultiPoly to a UniPoly in tau.
UniPoly to_unipoly(const MultiPoly& f);

}  // namespace rfsep
