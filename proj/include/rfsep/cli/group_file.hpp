#pragma once

#include <string>
#include <string_view>

#include "rfsep/matgroup/group_spec.hpp"

namespace rfsep {

/// Parses the line-oriented group file format:
///
///   ring char=0 vars=1 denoms=[T1]
///   dim 2
///   gen A = [[1, 2*T1],[0,1]]   inv Ainv = [[1, -2*T1],[0,1]]
///
/// Entries are polynomials or `numerator / denominator` where the
/// denominator is a product of powers of members of `denoms`. A matrix may
/// continue over several lines while brackets are open. `#` starts a
/// comment.
GroupSpec parse_group_file(std::string_view text);
GroupSpec load_group_file(const std::string& path);

}  // namespace rfsep
