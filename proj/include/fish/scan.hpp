#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "fish/geodata.hpp"

namespace fish {

/// One ranked spatial region of the hot spot list.
struct HotSpot {
  int rank = 0;  // 1-based
  std::optional<std::string> center_id;
  std::optional<double> radius;
  std::vector<std::string> member_ids;
  double llr = 0.0;
  std::size_t cases = 0;
  std::size_t population = 0;
};

struct RankedHotSpotList {
  std::vector<HotSpot> hotspots;
  /// Set when the scan found fewer zones with positive LLR than requested.
  bool short_list = false;

  std::size_t m() const { return hotspots.size(); }
  /// The first `m` hot spots (or all of them when the list is shorter).
  RankedHotSpotList top(std::size_t m) const;
};

/// Log-likelihood ratio of the Bernoulli scan statistic for a zone with `c`
/// cases among `n` objects, given `total_cases` among `total_pop`. Only
/// high-rate zones score; others return 0.
double bernoulli_llr(std::size_t c, std::size_t n, std::size_t total_cases,
                     std::size_t total_pop);

struct ScanOptions {
  double max_fraction = 0.5;
  std::size_t m = 20;
  unsigned threads = 0;  // 0 = hardware concurrency
};

/// Circular Bernoulli scan. Zones are circles centred on each object that
/// grow through the other objects in distance order; up to m pairwise
/// disjoint zones are picked greedily by decreasing LLR (ties: smaller
/// population, then smaller centre id).
RankedHotSpotList scan_circular(const Dataset& dataset, const ScanOptions& options);

/// Parses a JSON ranked list `[{rank, member_ids, llr?, center_id?,
/// radius?}, ...]`. Ranks are taken from file order; overlap is permitted.
RankedHotSpotList parse_ranked_list(std::string_view json_text, const Dataset& dataset);
RankedHotSpotList import_ranked_list(const std::filesystem::path& path,
                                     const Dataset& dataset);

}  // namespace fish
