#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace rfsep {

enum class OutputFormat { human, record, csv };

struct CliConfig {
  std::string subcommand;
  std::string group_file;
  std::vector<std::string> words;
  std::string mode = "direct";
  std::string format;
  std::string catalog_file;
  std::string aut_file;
  std::string class_filter = "any";
  std::size_t free_rank = 0;
  std::size_t n = 0;
  std::size_t kappa = 1;
  std::size_t kappa_max = 6;
  std::uint64_t budget = 20'000'000;
  std::size_t element_cap = 100'000;
  std::size_t orbit_cap = 64;
  std::size_t samples = 100;
  std::uint64_t seed = 1;
  bool pipeline = false;
  bool oracle = false;
};

/// Parses arguments and runs one subcommand. Returns 0 on success, 1 on
/// domain errors and 2 on usage errors; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rfsep
