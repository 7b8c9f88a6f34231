#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "fish/geodata.hpp"
#include "fish/scan.hpp"

namespace fish {

/// A k-subset of the hot spot list, as strictly increasing 1-based ranks.
struct SubsetSelection {
  std::vector<int> ranks;

  std::size_t k() const { return ranks.size(); }
  /// Throws a domain error unless ranks are strictly increasing in [1, m].
  void validate(std::size_t m) const;
  /// Sorts `ranks` and rejects duplicates.
  static SubsetSelection canonical(std::vector<int> ranks);

  auto operator<=>(const SubsetSelection&) const = default;
};

/// Coordinates in the noteworthiness/fairness plane. Lower is better on both.
struct NFPoint {
  double n = 0.0;
  double f = 0.0;

  bool operator==(const NFPoint&) const = default;
};

/// Sum of ranks.
double noteworthiness(const SubsetSelection& sel);

/// 1-D Wasserstein distance with unit spacing between consecutive categories:
/// sum over c < K-1 of |CDF_p(c) - CDF_q(c)|.
double wasserstein_1d(const CategoricalDistribution& p, const CategoricalDistribution& q);
double wasserstein_1d(std::span<const double> p, std::span<const double> q);

/// Precomputed view of a hot spot list against its dataset: member indices
/// per hot spot and the whole-population distribution per protected
/// attribute. Shared read-only by every evaluation of one instance.
class NFEvaluator {
 public:
  NFEvaluator(const RankedHotSpotList& spots, const Dataset& dataset);

  std::size_t m() const { return members_.size(); }
  const Dataset& dataset() const { return *dataset_; }
  std::span<const std::uint32_t> members(int rank) const { return members_[rank - 1]; }
  const std::vector<double>& global_distribution(std::size_t attribute) const {
    return global_[attribute];
  }

  /// Fairness of the union population of `ranks` (any order, no repeats).
  double fairness(std::span<const int> ranks) const;
  NFPoint evaluate(const SubsetSelection& sel) const;

 private:
  const Dataset* dataset_;
  std::vector<std::vector<std::uint32_t>> members_;
  std::vector<std::vector<double>> global_;
};

/// Union population of a set of hot spots, maintained incrementally as hot
/// spots are added or removed. Objects shared by overlapping spots count once.
class UnionPopulation {
 public:
  explicit UnionPopulation(const NFEvaluator& evaluator);

  void add(int rank);
  void remove(int rank);
  std::size_t size() const { return size_; }
  /// Sum over protected attributes of the Wasserstein distance between the
  /// whole population and the union population.
  double fairness() const;

 private:
  const NFEvaluator* eval_;
  std::vector<std::uint32_t> cover_;
  std::vector<std::vector<std::size_t>> counts_;
  std::size_t size_ = 0;
  mutable std::vector<double> scratch_;
};

double fairness(const SubsetSelection& sel, const RankedHotSpotList& spots,
                const Dataset& dataset);
NFPoint nf_point(const SubsetSelection& sel, const RankedHotSpotList& spots,
                 const Dataset& dataset);

}  // namespace fish
