#include <gtest/gtest.h>

#include <algorithm>
#include <cstring>
#include <random>
#include <set>

#include "fish/error.hpp"
#include "fish/objectives.hpp"
#include "testing.hpp"

namespace fish {
namespace {

std::vector<double> random_distribution(std::mt19937_64& rng, std::size_t k) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> p(k);
  double s = 0.0;
  for (auto& v : p) s += (v = u(rng) < 0.2 ? 0.0 : u(rng));
  if (s == 0.0) {
    p[0] = 1.0;
    return p;
  }
  for (auto& v : p) v /= s;
  return p;
}

TEST(Noteworthiness, Examples) {
  EXPECT_EQ(noteworthiness({{1, 2, 3, 4, 5}}), 15.0);
  EXPECT_EQ(noteworthiness({{7}}), 7.0);
  EXPECT_EQ(noteworthiness({{2, 4, 7}}), 13.0);
}

TEST(Noteworthiness, TopKIsTheUniqueMinimum) {
  const int m = 9;
  for (int k = 1; k <= m; ++k) {
    const double floor_value = k * (k + 1) / 2.0;
    for (const auto& ranks : testing::oracle_combinations(m, k)) {
      const double n = noteworthiness({ranks});
      EXPECT_GE(n, floor_value);
      bool is_top = true;
      for (int i = 0; i < k; ++i) is_top = is_top && ranks[i] == i + 1;
      EXPECT_EQ(n == floor_value, is_top);
    }
  }
}

TEST(Noteworthiness, ReplacingWithLargerUnusedRankIncreases) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 500; ++trial) {
    const int m = 30;
    const int k = 1 + rng() % 10;
    auto all = testing::oracle_combinations(12, k);
    auto ranks = all[rng() % all.size()];
    const double before = noteworthiness({ranks});
    const std::size_t pos = rng() % k;
    std::set<int> used(ranks.begin(), ranks.end());
    int bigger = ranks[pos] + 1 + rng() % 5;
    while (used.count(bigger)) ++bigger;
    ASSERT_LE(bigger, m);
    ranks[pos] = bigger;
    EXPECT_GT(noteworthiness(SubsetSelection::canonical(ranks)), before);
  }
}

TEST(SubsetSelection, Validation) {
  EXPECT_NO_THROW((SubsetSelection{{1, 3, 4}}.validate(4)));
  EXPECT_THROW((SubsetSelection{{1, 3, 3}}.validate(4)), Error);
  EXPECT_THROW((SubsetSelection{{3, 1}}.validate(4)), Error);
  EXPECT_THROW((SubsetSelection{{0, 1}}.validate(4)), Error);
  EXPECT_THROW((SubsetSelection{{1, 5}}.validate(4)), Error);
  EXPECT_THROW((SubsetSelection{{}}.validate(4)), Error);
  EXPECT_EQ(SubsetSelection::canonical({4, 1, 2}).ranks, (std::vector<int>{1, 2, 4}));
  EXPECT_THROW(SubsetSelection::canonical({2, 2}), Error);
}

TEST(Wasserstein, Examples) {
  const std::vector<double> p = {0.2, 0.3, 0.5};
  EXPECT_EQ(wasserstein_1d(p, p), 0.0);
  EXPECT_DOUBLE_EQ(wasserstein_1d(std::vector<double>{1, 0, 0}, std::vector<double>{0, 0, 1}),
                   2.0);
  EXPECT_DOUBLE_EQ(wasserstein_1d(std::vector<double>{0.5, 0.5}, std::vector<double>{1.0, 0.0}),
                   0.5);
}

TEST(Wasserstein, SchemaMismatchIsDomainError) {
  const CategoricalDistribution a{"religion", {0.5, 0.5}};
  const CategoricalDistribution b{"caste", {0.5, 0.5}};
  const CategoricalDistribution c{"religion", {0.5, 0.25, 0.25}};
  EXPECT_THROW(wasserstein_1d(a, b), Error);
  EXPECT_THROW(wasserstein_1d(a, c), Error);
  EXPECT_DOUBLE_EQ(wasserstein_1d(a, CategoricalDistribution{"religion", {0.0, 1.0}}), 0.5);
}

TEST(Wasserstein, MetricAxioms) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 3000; ++trial) {
    const std::size_t k = 1 + rng() % 7;
    const auto p = random_distribution(rng, k);
    const auto q = random_distribution(rng, k);
    const auto r = random_distribution(rng, k);
    const double pq = wasserstein_1d(p, q);
    EXPECT_GE(pq, 0.0);
    EXPECT_NEAR(pq, wasserstein_1d(q, p), 1e-12);
    EXPECT_NEAR(wasserstein_1d(p, p), 0.0, 1e-9);
    EXPECT_LE(pq, wasserstein_1d(p, r) + wasserstein_1d(r, q) + 1e-9);
    bool same = true;
    for (std::size_t c = 0; c < k; ++c) same = same && std::abs(p[c] - q[c]) < 1e-12;
    if (!same) {
      EXPECT_GT(pq, 0.0);
    }
  }
}

TEST(Fairness, ParityGivesZero) {
  const Dataset ds = testing::line_dataset({"A", "B", "A", "B", "A", "B"}, {"A", "B"});
  const auto spots = testing::spots_from_indices({{0, 1}, {2, 3, 4, 5}});
  EXPECT_EQ(fairness({{1}}, spots, ds), 0.0);
  EXPECT_EQ(fairness({{1, 2}}, spots, ds), 0.0);
}

TEST(Fairness, SingleSkewedSpot) {
  const Dataset ds = testing::line_dataset({"A", "A", "B", "B"}, {"A", "B"});
  const auto spots = testing::spots_from_indices({{2, 3}});
  EXPECT_DOUBLE_EQ(fairness({{1}}, spots, ds), 0.5);
}

TEST(Fairness, IsCollectiveNotAdditive) {
  const Dataset ds = testing::line_dataset({"A", "A", "B", "B"}, {"A", "B"});
  const auto spots = testing::spots_from_indices({{0, 1}, {2, 3}});
  EXPECT_DOUBLE_EQ(fairness({{1}}, spots, ds), 0.5);
  EXPECT_DOUBLE_EQ(fairness({{2}}, spots, ds), 0.5);
  EXPECT_EQ(fairness({{1, 2}}, spots, ds), 0.0);
}

TEST(Fairness, OverlappingSpotsCountSharedObjectsOnce) {
  const Dataset ds = testing::line_dataset({"A", "A", "B", "B"}, {"A", "B"});
  // Union is {o0, o2} either way; o0 appears in both spots.
  const auto spots = testing::spots_from_indices({{0, 2}, {0}});
  EXPECT_EQ(fairness({{1, 2}}, spots, ds), 0.0);
}

TEST(Fairness, MatchesOracleOnRandomInstances) {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 100; ++trial) {
    auto inst = testing::random_instance(rng, 60, 8, 1 + trial % 3, 2 + trial % 4);
    const NFEvaluator eval(inst.spots, inst.dataset);
    for (int k = 1; k <= 4; ++k) {
      for (const auto& ranks : testing::oracle_combinations(8, k)) {
        const double got = eval.fairness(ranks);
        EXPECT_NEAR(got, testing::oracle_fairness(inst.dataset, inst.spots, ranks), 1e-12);
      }
    }
  }
}

TEST(Fairness, InvariantToSelectionOrder) {
  std::mt19937_64 rng(31);
  auto inst = testing::random_instance(rng, 80, 10);
  const NFEvaluator eval(inst.spots, inst.dataset);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<int> ranks = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
    std::shuffle(ranks.begin(), ranks.end(), rng);
    ranks.resize(1 + rng() % 10);
    const double a = eval.fairness(ranks);
    std::shuffle(ranks.begin(), ranks.end(), rng);
    EXPECT_EQ(eval.fairness(ranks), a);
  }
}

TEST(UnionPopulation, IncrementalMatchesFreshEvaluation) {
  std::mt19937_64 rng(41);
  auto inst = testing::random_instance(rng, 100, 12);
  const NFEvaluator eval(inst.spots, inst.dataset);
  UnionPopulation pop(eval);
  std::vector<int> in;
  for (int step = 0; step < 400; ++step) {
    const int r = 1 + rng() % 12;
    auto it = std::find(in.begin(), in.end(), r);
    if (it == in.end()) {
      pop.add(r);
      in.push_back(r);
    } else {
      pop.remove(r);
      in.erase(it);
    }
    if (!in.empty()) EXPECT_EQ(pop.fairness(), eval.fairness(in));
  }
  EXPECT_THROW(UnionPopulation(eval).remove(1), Error);
}

TEST(NfPoint, WholeListAndTopK) {
  std::mt19937_64 rng(43);
  auto inst = testing::random_instance(rng, 50, 6);
  const auto all = nf_point({{1, 2, 3, 4, 5, 6}}, inst.spots, inst.dataset);
  EXPECT_EQ(all.n, 21.0);
  EXPECT_NEAR(all.f, testing::oracle_fairness(inst.dataset, inst.spots, {1, 2, 3, 4, 5, 6}),
              1e-12);
  EXPECT_EQ(nf_point({{1, 2, 3}}, inst.spots, inst.dataset).n, 6.0);
  const auto again = nf_point({{1, 2, 3, 4, 5, 6}}, inst.spots, inst.dataset);
  EXPECT_EQ(std::memcmp(&all, &again, sizeof(NFPoint)), 0);
}

TEST(NfPoint, UnknownMemberIsIntegrityError) {
  const Dataset ds = testing::line_dataset({"A", "B"}, {"A", "B"});
  RankedHotSpotList spots;
  spots.hotspots.push_back(HotSpot{1, {}, {}, {"missing"}, 0.0, 0, 1});
  try {
    nf_point({{1}}, spots, ds);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kIntegrity);
  }
}

}  // namespace
}  // namespace fish
