#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "rfsep/matgroup/group_spec.hpp"
#include "rfsep/rfgrowth/homs.hpp"
#include "rfsep/ring/integer.hpp"
#include "rfsep/separate/separate.hpp"

namespace rfsep {

struct CurvePoint {
  std::size_t n = 0;
  /// Running maximum over nontrivial words of length <= n.
  Integer value = 0;
  /// Words of length exactly n that were evaluated.
  std::size_t words = 0;
  /// A word of length <= n attaining the value.
  std::string argmax;
  /// Oracle mode: every depth at this n was exhaustive.
  bool exhaustive = true;
};

/// RF curve of F_k from catalog depths.
std::vector<CurvePoint> rf_curve_oracle(std::size_t k, const QuotientCatalog& catalog,
                                        const DepthOptions& options, std::size_t n_max);

/// RF curve bound of a matrix group from certificate order bounds. Words
/// range over reduced words in the declared generators; words evaluating to
/// the identity are skipped.
std::vector<CurvePoint> rf_curve_pipeline(const GroupSpec& spec,
                                          const SeparationOptions& options,
                                          std::size_t n_max);

struct PowerFit {
  double coefficient = 0;  // C
  double exponent = 0;     // d
  double max_residual = 0;  // in log space
};

/// Least squares fit of log(value) = log(C) + d log(n). Needs at least three
/// points with positive coordinates and two distinct n.
PowerFit fit_polynomial(const std::vector<std::pair<double, double>>& points);
PowerFit fit_polynomial(const std::vector<CurvePoint>& curve);

}  // namespace rfsep
