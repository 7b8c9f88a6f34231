#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fish/exact.hpp"
#include "fish/fish.hpp"

namespace fish {

/// Min-max map of the whole N-F space onto [0,1]^2.
struct NormalizedSpace {
  double n_min = 0.0;
  double n_max = 1.0;
  double f_min = 0.0;
  double f_max = 0.0;

  /// f maps to 0 everywhere when the space has a single f value.
  NFPoint map(const NFPoint& p) const;
};

NormalizedSpace normalize(const NFSpace& space);

/// Mean normalised distance between positionally corresponding candidates
/// after sorting both results by n ascending.
double dc(const DpeResult& exact, const DpeResult& approx, const NormalizedSpace& norm);

/// Fraction of the space dominated by at least one result candidate.
double cov(const DpeResult& result, const NFSpace& space, unsigned threads = 0);
double cov(std::span<const Candidate> result, const NFSpace& space, unsigned threads = 0);

/// Minimum pairwise normalised distance within the result.
double md(const DpeResult& result, const NormalizedSpace& norm);

struct MetricReport {
  DpeResult fish;
  std::optional<DpeResult> exact;
  std::optional<NormalizedSpace> norm;
  std::size_t space_size = 0;
  std::optional<double> dc;
  std::optional<double> cov_fish;
  std::optional<double> cov_exact;
  std::optional<double> md_fish;
  std::optional<double> md_exact;
  /// Why any metric above is absent.
  std::vector<std::string> notes;
};

struct EvalOptions {
  ExactOptions exact;
  FishOptions fish;
};

/// Runs FiSH and, when the space fits the enumeration guard, Exact, and
/// computes every metric that is defined for the instance.
MetricReport evaluate(const RankedHotSpotList& spots, const Dataset& dataset, std::size_t k,
                      std::size_t tau, std::size_t b, const EvalOptions& options = {});

}  // namespace fish
