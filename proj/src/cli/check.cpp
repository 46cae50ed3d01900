#include "rfsep/cli/check.hpp"

#include <random>

#include "rfsep/core/error.hpp"
#include "rfsep/separate/separate.hpp"

namespace rfsep {
namespace {

std::vector<GroupWord> sample_words(const GroupSpec& spec, const CheckOptions& options) {
  std::mt19937_64 rng(options.seed);
  std::uniform_int_distribution<std::size_t> len(1, std::max<std::size_t>(options.max_length, 1));
  std::vector<GroupWord> out;
  for (std::size_t i = 0; i < options.samples; ++i) {
    out.push_back(random_reduced_word(spec.basis_count(), len(rng), rng));
  }
  return out;
}

}  // namespace

std::vector<CheckResult> check_group(const GroupSpec& spec, const CheckOptions& options) {
  const auto words = sample_words(spec, options);
  std::vector<CheckResult> results;

  CheckResult degree{"degree bound", true, ""};
  CheckResult coeff{"coefficient bound", true, ""};
  CheckResult homo{"specialization is multiplicative", true, ""};
  CheckResult sep{"certificates verify", true, ""};
  CheckResult trip{"certificate round trip", true, ""};
  std::size_t separated = 0, trivial = 0;
  for (const auto& w : words) {
    const std::string text = spec.format(w);
    if (degree.passed) {
      const auto r = check_degree_bound(spec, w);
      if (!r.holds) {
        degree.passed = false;
        degree.detail = text + ": degree " + std::to_string(r.max_deg) + " > " + std::to_string(r.bound);
      }
    }
    if (coeff.passed && spec.characteristic() == 0) {
      const auto r = check_coeff_bound(spec, w);
      if (!r.holds) {
        coeff.passed = false;
        coeff.detail = text + ": coefficient " + r.max_abs.get_str() + " > " + r.bound.get_str();
      }
    }
    const LMatrix value = evaluate_word(spec, w);
    if (is_identity(value)) {
      ++trivial;
      continue;
    }
    try {
      const SeparationCertificate cert = separate_element(spec, w);
      const SpecializationMap map = certificate_map(spec, cert);
      if (homo.passed && !(map.map(value) == map.word_image(w))) {
        homo.passed = false;
        homo.detail = text;
      }
      const auto v = verify_certificate(spec, cert);
      if (sep.passed && !v.ok) {
        sep.passed = false;
        sep.detail = text + ": " + v.reason;
      }
      const auto reparsed = parse_certificate(serialize(cert));
      if (trip.passed && (serialize(reparsed) != serialize(cert) || !verify_certificate(spec, reparsed).ok)) {
        trip.passed = false;
        trip.detail = text;
      }
      ++separated;
    } catch (const Error& e) {
      if (sep.passed) {
        sep.passed = false;
        sep.detail = text + ": " + e.what();
      }
    }
  }
  if (spec.characteristic() != 0) coeff.detail = "skipped in positive characteristic";
  const std::string summary = std::to_string(words.size()) + " words, " +
                              std::to_string(trivial) + " trivial, " +
                              std::to_string(separated) + " separated";
  for (auto* r : {&degree, &coeff, &homo, &sep, &trip}) {
    if (r->passed && r->detail.empty()) r->detail = summary;
    results.push_back(*r);
  }
  return results;
}

}  // namespace rfsep
