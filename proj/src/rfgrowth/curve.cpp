#include "rfsep/rfgrowth/curve.hpp"

#include <cmath>

#include "rfsep/core/error.hpp"

namespace rfsep {

std::vector<CurvePoint> rf_curve_oracle(std::size_t k, const QuotientCatalog& catalog,
                                        const DepthOptions& options, std::size_t n_max) {
  if (n_max < 1) throw PreconditionError("n_max must be at least 1");
  std::vector<CurvePoint> curve;
  CurvePoint running;
  const Alphabet alphabet = Alphabet::free(k);
  for (std::size_t n = 1; n <= n_max; ++n) {
    running.n = n;
    running.words = 0;
    for (const auto& w : reduced_words_of_length(k, n)) {
      const DepthReport r = depth(k, w, catalog, options);
      ++running.words;
      running.exhaustive = running.exhaustive && r.exhaustive;
      if (Integer(static_cast<unsigned long>(r.order)) > running.value) {
        running.value = static_cast<unsigned long>(r.order);
        running.argmax = format_word(w, alphabet);
      }
    }
    curve.push_back(running);
  }
  return curve;
}

std::vector<CurvePoint> rf_curve_pipeline(const GroupSpec& spec,
                                          const SeparationOptions& options,
                                          std::size_t n_max) {
  if (n_max < 1) throw PreconditionError("n_max must be at least 1");
  std::vector<CurvePoint> curve;
  CurvePoint running;
  for (std::size_t n = 1; n <= n_max; ++n) {
    running.n = n;
    running.words = 0;
    for (const auto& w : reduced_words_of_length(spec.basis_count(), n)) {
      if (is_identity(evaluate_word(spec, w))) continue;
      const SeparationCertificate cert = separate_element(spec, w, options);
      ++running.words;
      if (cert.order_bound > running.value) {
        running.value = cert.order_bound;
        running.argmax = spec.format(w);
      }
    }
    curve.push_back(running);
  }
  return curve;
}

PowerFit fit_polynomial(const std::vector<std::pair<double, double>>& points) {
  if (points.size() < 3) throw PreconditionError("fit_polynomial needs at least 3 points");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& [n, v] : points) {
    if (!(n > 0) || !(v > 0)) throw PreconditionError("fit_polynomial needs positive values");
    const double x = std::log(n), y = std::log(v);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double m = static_cast<double>(points.size());
  const double denom = m * sxx - sx * sx;
  if (std::abs(denom) < 1e-12) throw PreconditionError("fit_polynomial: all n are equal");
  PowerFit fit;
  fit.exponent = (m * sxy - sx * sy) / denom;
  const double intercept = (sy - fit.exponent * sx) / m;
  fit.coefficient = std::exp(intercept);
  for (const auto& [n, v] : points) {
    const double r = std::abs(std::log(v) - intercept - fit.exponent * std::log(n));
    fit.max_residual = std::max(fit.max_residual, r);
  }
  return fit;
}

PowerFit fit_polynomial(const std::vector<CurvePoint>& curve) {
  std::vector<std::pair<double, double>> pts;
  for (const auto& p : curve) pts.emplace_back(static_cast<double>(p.n), p.value.get_d());
  return fit_polynomial(pts);
}

}  // namespace rfsep
