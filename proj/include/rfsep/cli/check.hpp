#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rfsep/matgroup/group_spec.hpp"

namespace rfsep {

struct CheckOptions {
  std::size_t samples = 100;
  std::size_t max_length = 6;
  std::uint64_t seed = 1;
};

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Runs the module invariants that apply to a single group on random words:
/// degree and coefficient bounds, multiplicativity of the specialization
/// map, and separation certificates that verify and survive a
/// serialization round trip.
std::vector<CheckResult> check_group(const GroupSpec& spec, const CheckOptions& options);

}  // namespace rfsep
