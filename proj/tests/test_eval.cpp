#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "fish/error.hpp"
#include "fish/eval.hpp"
#include "testing.hpp"

namespace fish {
namespace {

const NormalizedSpace kUnit{0.0, 1.0, 0.0, 1.0};

DpeResult result_of(const std::vector<std::pair<double, double>>& xy) {
  DpeResult r;
  int id = 1;
  for (auto [n, f] : xy) r.chosen.push_back({{{id++}}, {n, f}});
  return r;
}

NFSpace space_of(const std::vector<std::pair<double, double>>& xy) {
  NFSpace s;
  s.candidates = result_of(xy).chosen;
  return s;
}

TEST(Normalize, EndpointsAndErrors) {
  const auto space = space_of({{10, 0.5}, {15, 0.1}, {30, 0.9}, {12, 0.3}});
  const auto norm = normalize(space);
  EXPECT_EQ(norm.map({10, 0.1}), (NFPoint{0, 0}));
  EXPECT_EQ(norm.map({30, 0.9}), (NFPoint{1, 1}));
  EXPECT_DOUBLE_EQ(norm.map({20, 0.5}).n, 0.5);
  EXPECT_THROW(normalize(space_of({{7, 0.1}, {7, 0.4}})), Error);
  EXPECT_THROW(normalize(NFSpace{}), Error);
  const auto flat = normalize(space_of({{1, 0.2}, {2, 0.2}}));
  EXPECT_EQ(flat.map({2, 0.2}), (NFPoint{1, 0}));
}

TEST(Dc, Examples) {
  const auto e = result_of({{0, 1}, {0.5, 0.5}, {1, 0}});
  EXPECT_EQ(dc(e, e, kUnit), 0.0);
  EXPECT_DOUBLE_EQ(dc(result_of({{0, 1}}), result_of({{1, 0}}), kUnit), std::sqrt(2.0));
  EXPECT_THROW(dc(e, result_of({{0, 1}}), kUnit), Error);
  // Correspondence is by n order, not by stored order.
  const auto shuffled = result_of({{1, 0}, {0, 1}, {0.5, 0.5}});
  EXPECT_EQ(dc(e, shuffled, kUnit), 0.0);
}

TEST(Md, Examples) {
  EXPECT_EQ(md(result_of({{0.3, 0.3}, {0.3, 0.3}}), kUnit), 0.0);
  EXPECT_DOUBLE_EQ(md(result_of({{0, 0}, {0.5, 0.5}, {1, 1}}), kUnit), std::sqrt(2.0) / 2);
  EXPECT_THROW(md(result_of({{0, 0}}), kUnit), Error);
}

TEST(Cov, Examples) {
  const auto space = space_of({{0, 0}, {1, 2}, {2, 1}, {3, 3}, {0, 0}});
  // (0,0) dominates everything but its own duplicate and itself.
  EXPECT_DOUBLE_EQ(cov(result_of({{0, 0}}), space), 3.0 / 5.0);
  EXPECT_DOUBLE_EQ(cov(result_of({{3, 3}}), space), 0.0);
  EXPECT_DOUBLE_EQ(cov(result_of({{1, 2}}), space), 1.0 / 5.0);
}

TEST(Cov, MatchesDoubleLoopAndIsMonotone) {
  std::mt19937_64 rng(19);
  for (int trial = 0; trial < 40; ++trial) {
    auto inst = testing::random_instance(rng, 100, 6 + rng() % 6);
    const auto space = enumerate_nf_space(inst.spots, inst.dataset, 1 + rng() % 3);
    std::vector<Candidate> picks;
    double last = 0.0;
    for (int step = 0; step < 8; ++step) {
      picks.push_back(space.candidates[rng() % space.candidates.size()]);
      const double c = cov(picks, space, 1 + step % 3);
      EXPECT_EQ(c, testing::oracle_cov(picks, space.candidates));
      EXPECT_GE(c, last);
      EXPECT_GE(c, 0.0);
      EXPECT_LE(c, 1.0);
      last = c;
    }
  }
}

TEST(Cov, WholeFrontierCoversEveryDominatedCandidate) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 30; ++trial) {
    auto inst = testing::random_instance(rng, 100, 5 + rng() % 8);
    const auto space = enumerate_nf_space(inst.spots, inst.dataset, 1 + rng() % 4);
    const auto fr = frontier(space.candidates);
    EXPECT_EQ(cov(fr.candidates, space), cov(space.candidates, space));
    std::size_t dominated = 0;
    for (const auto& p : space.candidates) {
      bool hit = false;
      for (const auto& q : space.candidates) hit = hit || testing::oracle_dominates(q.point, p.point);
      dominated += hit;
    }
    EXPECT_DOUBLE_EQ(cov(fr.candidates, space),
                     double(dominated) / double(space.candidates.size()));
  }
}

TEST(Evaluate, WholeListInstance) {
  std::mt19937_64 rng(23);
  auto inst = testing::random_instance(rng, 60, 5);
  const auto report = evaluate(inst.spots, inst.dataset, 5, 5, 5);
  ASSERT_TRUE(report.exact.has_value());
  ASSERT_TRUE(report.dc.has_value());
  EXPECT_EQ(*report.dc, 0.0);
  ASSERT_TRUE(report.cov_fish && report.cov_exact);
  EXPECT_EQ(*report.cov_fish, *report.cov_exact);
  EXPECT_FALSE(report.md_fish.has_value());
  EXPECT_FALSE(report.md_exact.has_value());
  EXPECT_FALSE(report.notes.empty());
}

TEST(Evaluate, RegularInstancePopulatesEverything) {
  std::mt19937_64 rng(25);
  auto inst = testing::random_instance(rng, 300, 12, 2, 3, 30);
  const auto report = evaluate(inst.spots, inst.dataset, 3, 3, 3);
  ASSERT_TRUE(report.exact.has_value());
  EXPECT_EQ(report.space_size, 220u);
  ASSERT_TRUE(report.norm.has_value());
  if (report.fish.chosen.size() == report.exact->chosen.size()) {
    ASSERT_TRUE(report.dc.has_value());
    EXPECT_GE(*report.dc, 0.0);
  }
  ASSERT_TRUE(report.md_fish && report.md_exact);
  EXPECT_TRUE(std::isfinite(*report.md_fish));
  EXPECT_LE(*report.cov_fish, 1.0);
}

TEST(Evaluate, CapacityLeavesFishOnly) {
  std::mt19937_64 rng(27);
  auto inst = testing::random_instance(rng, 100, 20);
  EvalOptions opts;
  opts.exact.guard = 10;
  const auto report = evaluate(inst.spots, inst.dataset, 5, 5, 5, opts);
  EXPECT_FALSE(report.exact.has_value());
  EXPECT_FALSE(report.dc || report.cov_fish || report.cov_exact || report.md_fish);
  EXPECT_FALSE(report.fish.chosen.empty());
  ASSERT_EQ(report.notes.size(), 1u);
  EXPECT_NE(report.notes[0].find("15504"), std::string::npos);
}

}  // namespace
}  // namespace fish
