#pragma once

#include <memory>
#include <string>

#include "rfsep/finite/group.hpp"
#include "rfsep/matgroup/group_spec.hpp"
#include "rfsep/separate/certificate.hpp"
#include "rfsep/specialize/specialize.hpp"

namespace rfsep {

struct SeparationOptions {
  SeparationMode mode = SeparationMode::direct;
  double solvable_constant = 5.0;
  std::size_t kappa = 1;
  std::size_t kappa_max = 6;
  /// Semisimple mode refuses inputs whose witness entries would exceed this
  /// total degree (K times the predicted witness length).
  std::uint64_t degree_cap = 20000;
};

/// Builds a certificate that the image of a (direct) or of its derived
/// witness (semisimple) is nontrivial in GL_l of a finite field.
SeparationCertificate separate_element(const GroupSpec& spec, const GroupWord& a,
                                       const SeparationOptions& options = {});

struct VerificationResult {
  bool ok = false;
  std::string reason;
  explicit operator bool() const noexcept { return ok; }
};

/// Replays the recorded choices and checks every step. Never throws on a
/// malformed certificate; the first failing check is reported instead.
VerificationResult verify_certificate(const GroupSpec& spec,
                                      const SeparationCertificate& cert);

/// The specialization map recorded in a certificate.
SpecializationMap certificate_map(const GroupSpec& spec,
                                  const SeparationCertificate& cert);

/// Subgroup of GL_l(field) generated by the specialized generators.
std::shared_ptr<FiniteGroup> finite_image(const GroupSpec& spec,
                                          const SeparationCertificate& cert,
                                          std::size_t cap);

/// Element of a finite image (or any group materialized from generator
/// images in declaration order) represented by a word.
FiniteGroup::Elem word_element(const FiniteGroup& q, const GroupWord& w);

/// D^n of the normal closure of x in Q. Q must have at most 10^5 elements.
Subgroup normal_closure_derived_depth(const FiniteGroup& q, FiniteGroup::Elem x,
                                      std::size_t n);

}  // namespace rfsep
