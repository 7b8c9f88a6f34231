#include "fish/objectives.hpp"

#include <algorithm>
#include <cmath>

#include "fish/error.hpp"

namespace fish {

void SubsetSelection::validate(std::size_t m) const {
  if (ranks.empty()) fail(ErrorKind::kDomain, "selection is empty");
  if (ranks.size() > m) fail(ErrorKind::kDomain, "selection larger than the hot spot list");
  for (std::size_t i = 0; i < ranks.size(); ++i) {
    if (ranks[i] < 1 || static_cast<std::size_t>(ranks[i]) > m) {
      fail(ErrorKind::kDomain, "rank " + std::to_string(ranks[i]) + " outside [1, " +
                                   std::to_string(m) + "]");
    }
    if (i > 0 && ranks[i] <= ranks[i - 1]) {
      fail(ErrorKind::kDomain, "selection ranks must be strictly increasing");
    }
  }
}

SubsetSelection SubsetSelection::canonical(std::vector<int> ranks) {
  std::sort(ranks.begin(), ranks.end());
  if (std::adjacent_find(ranks.begin(), ranks.end()) != ranks.end()) {
    fail(ErrorKind::kDomain, "selection contains a repeated rank");
  }
  return SubsetSelection{std::move(ranks)};
}

double noteworthiness(const SubsetSelection& sel) {
  long long sum = 0;
  for (int r : sel.ranks) sum += r;
  return static_cast<double>(sum);
}

double wasserstein_1d(std::span<const double> p, std::span<const double> q) {
  if (p.size() != q.size()) fail(ErrorKind::kDomain, "distributions differ in support size");
  double cdf_p = 0.0;
  double cdf_q = 0.0;
  double total = 0.0;
  for (std::size_t c = 0; c + 1 < p.size(); ++c) {
    cdf_p += p[c];
    cdf_q += q[c];
    total += std::abs(cdf_p - cdf_q);
  }
  return total;
}

double wasserstein_1d(const CategoricalDistribution& p, const CategoricalDistribution& q) {
  if (p.schema != q.schema || p.probabilities.size() != q.probabilities.size()) {
    fail(ErrorKind::kDomain, "distributions over different protected attributes ('" +
                                 p.schema + "' vs '" + q.schema + "')");
  }
  return wasserstein_1d(std::span<const double>(p.probabilities),
                        std::span<const double>(q.probabilities));
}

NFEvaluator::NFEvaluator(const RankedHotSpotList& spots, const Dataset& dataset)
    : dataset_(&dataset) {
  if (dataset.schemas().empty()) {
    fail(ErrorKind::kDomain, "fairness needs at least one protected attribute");
  }
  members_.reserve(spots.m());
  for (const auto& spot : spots.hotspots) {
    if (spot.member_ids.empty()) {
      fail(ErrorKind::kValue, "hot spot " + std::to_string(spot.rank) + " has no members");
    }
    std::vector<std::uint32_t> idx;
    idx.reserve(spot.member_ids.size());
    for (const auto& id : spot.member_ids) {
      idx.push_back(static_cast<std::uint32_t>(dataset.index_of(id)));
    }
    std::sort(idx.begin(), idx.end());
    idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
    members_.push_back(std::move(idx));
  }
  for (std::size_t a = 0; a < dataset.schemas().size(); ++a) {
    std::vector<std::size_t> counts(dataset.schemas()[a].size(), 0);
    for (const auto& obj : dataset.objects()) ++counts[obj.protected_values[a]];
    global_.push_back(
        distribution_from_counts(dataset.schemas()[a].name, counts, dataset.size())
            .probabilities);
  }
}

double NFEvaluator::fairness(std::span<const int> ranks) const {
  UnionPopulation pop(*this);
  for (int r : ranks) {
    if (r < 1 || static_cast<std::size_t>(r) > m()) {
      fail(ErrorKind::kDomain, "rank " + std::to_string(r) + " outside the hot spot list");
    }
    pop.add(r);
  }
  return pop.fairness();
}

NFPoint NFEvaluator::evaluate(const SubsetSelection& sel) const {
  sel.validate(m());
  return NFPoint{noteworthiness(sel), fairness(sel.ranks)};
}

UnionPopulation::UnionPopulation(const NFEvaluator& evaluator)
    : eval_(&evaluator), cover_(evaluator.dataset().size(), 0) {
  for (const auto& schema : evaluator.dataset().schemas()) {
    counts_.emplace_back(schema.size(), 0);
  }
}

void UnionPopulation::add(int rank) {
  const Dataset& ds = eval_->dataset();
  for (std::uint32_t i : eval_->members(rank)) {
    if (cover_[i]++ != 0) continue;
    ++size_;
    const auto& values = ds[i].protected_values;
    for (std::size_t a = 0; a < counts_.size(); ++a) ++counts_[a][values[a]];
  }
}

void UnionPopulation::remove(int rank) {
  const Dataset& ds = eval_->dataset();
  for (std::uint32_t i : eval_->members(rank)) {
    if (cover_[i] == 0) fail(ErrorKind::kDomain, "removing a hot spot that was not added");
    if (--cover_[i] != 0) continue;
    --size_;
    const auto& values = ds[i].protected_values;
    for (std::size_t a = 0; a < counts_.size(); ++a) --counts_[a][values[a]];
  }
}

double UnionPopulation::fairness() const {
  if (size_ == 0) fail(ErrorKind::kDomain, "fairness of an empty union population");
  double total = 0.0;
  const double denom = static_cast<double>(size_);
  for (std::size_t a = 0; a < counts_.size(); ++a) {
    scratch_.resize(counts_[a].size());
    // Same arithmetic as distribution_from_counts.
    for (std::size_t c = 0; c < counts_[a].size(); ++c) {
      scratch_[c] = static_cast<double>(counts_[a][c]) / denom;
    }
    total += wasserstein_1d(std::span<const double>(eval_->global_distribution(a)),
                            std::span<const double>(scratch_));
  }
  return total;
}

double fairness(const SubsetSelection& sel, const RankedHotSpotList& spots,
                const Dataset& dataset) {
  NFEvaluator eval(spots, dataset);
  sel.validate(eval.m());
  return eval.fairness(sel.ranks);
}

NFPoint nf_point(const SubsetSelection& sel, const RankedHotSpotList& spots,
                 const Dataset& dataset) {
  return NFEvaluator(spots, dataset).evaluate(sel);
}

}  // namespace fish
