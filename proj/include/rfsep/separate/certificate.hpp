#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rfsep/ring/integer.hpp"

namespace rfsep {

enum class SeparationMode { direct, semisimple };

std::string to_string(SeparationMode mode);
SeparationMode parse_mode(std::string_view text);

/// Audit record of one separation run. Every choice is recorded so that
/// verification can replay the pipeline without searching.
struct SeparationCertificate {
  static constexpr int kVersion = 1;

  SeparationMode mode = SeparationMode::direct;
  std::size_t dimension = 0;
  std::uint64_t characteristic = 0;
  std::size_t num_vars = 0;

  std::string input_word;
  /// Derived-series level of the witness (0 in direct mode).
  std::size_t level = 0;
  double solvable_constant = 5.0;
  std::size_t kappa = 1;
  std::size_t kappa_max = 6;
  std::vector<std::string> conjugators;
  Integer witness_length;
  /// Absent when the witness is too long to print.
  std::optional<std::string> witness_word;

  std::size_t entry_row = 0;
  std::size_t entry_col = 0;
  /// Text of f, or absent when elided for size.
  std::optional<std::string> entry_poly;
  long entry_degree = 0;
  std::size_t entry_terms = 0;

  std::vector<std::uint64_t> exponents;
  std::uint64_t reduction_box_base = 2;
  bool reduction_fallback = false;
  std::optional<std::string> trace_poly;
  long long trace_degree = 0;

  /// Characteristic 0 only.
  std::optional<Integer> eval_point;
  std::uint64_t prime = 0;
  std::optional<std::uint64_t> trace_residue;
  /// Characteristic p only.
  std::optional<std::string> irreducible;

  Integer field_size;
  Integer order_bound;
  std::string image;

  double diag_log_max_coeff = 0.0;
  Integer diag_bound_term;
  std::size_t diag_trace_value_bits = 0;
};

/// Line-oriented `key: value` text with a version header.
std::string serialize(const SeparationCertificate& cert);
SeparationCertificate parse_certificate(std::string_view text);

/// Texts longer than this are elided from certificates.
inline constexpr std::size_t kMaxInlineText = 4000;

}  // namespace rfsep
