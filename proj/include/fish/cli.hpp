#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "fish/geodata.hpp"
#include "fish/pareto.hpp"

namespace fish {

inline constexpr const char* kVersion = "0.1.0";

/// Everything one CLI invocation depends on; embedded verbatim in the
/// metadata of every output it writes.
struct RunConfig {
  std::string subcommand;
  std::string dataset_path;
  std::string spots_path;
  std::string output_path;
  std::string trace_path;
  std::string ingest_config_path;
  std::string spec_path;
  IngestConfig ingest;
  std::size_t m = 20;
  std::size_t k = 5;
  std::size_t tau = 5;
  std::size_t b = 5;
  double max_fraction = 0.5;
  std::uint64_t seed = 20211;
  std::size_t n_objects = 4000;
  std::size_t n_clusters = 16;
  unsigned threads = 0;
  std::uint64_t guard = 0;  // resolved from FISH_GUARD_CANDIDATES when 0
  SpacingMode spacing = SpacingMode::kIndex;
};

nlohmann::json config_json(const RunConfig& config);

/// Exit codes of run().
enum ExitCode : int {
  kExitOk = 0,
  kExitConfig = 2,
  kExitData = 3,
  kExitCapacity = 4,
  kExitInternal = 5,
};

/// Parses `args` (without the program name) and executes the subcommand.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fish
