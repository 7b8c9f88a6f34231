#include <gtest/gtest.h>

#include <random>
#include <set>

#include "fish/error.hpp"
#include "fish/scan.hpp"
#include "scan_oracle.hpp"
#include "testing.hpp"

namespace fish {
namespace {

using testing::big_llr;
using testing::OracleZone;
using testing::exhaustive_best_zone;
using testing::planted_dataset;

TEST(BernoulliLlr, NullRateScoresZero) { EXPECT_EQ(bernoulli_llr(5, 10, 50, 100), 0.0); }

TEST(BernoulliLlr, LowRateScoresZero) { EXPECT_EQ(bernoulli_llr(0, 10, 50, 100), 0.0); }

TEST(BernoulliLlr, ConcentratedCasesMatchHighPrecision) {
  const double expected = big_llr(10, 10, 10, 100);
  EXPECT_NEAR(bernoulli_llr(10, 10, 10, 100), expected, 1e-12 * expected);
  // 10 ln(10) + 90 ln(90/100)... closed form for this corner case.
  EXPECT_NEAR(expected, -(10 * std::log(0.1) + 90 * std::log(0.9)), 1e-12);
}

TEST(BernoulliLlr, RejectsImpossibleCounts) {
  EXPECT_THROW(bernoulli_llr(11, 10, 50, 100), Error);
  EXPECT_THROW(bernoulli_llr(1, 0, 50, 100), Error);
  EXPECT_THROW(bernoulli_llr(1, 100, 50, 100), Error);  // n must be < N
  EXPECT_THROW(bernoulli_llr(5, 10, 4, 100), Error);
  EXPECT_THROW(bernoulli_llr(0, 95, 10, 100), Error);  // C - c > N - n
}

TEST(BernoulliLlr, SignAndMonotonicityProperties) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 2000; ++trial) {
    const long N = 2 + rng() % 500;
    const long C = rng() % (N + 1);
    const long n = 1 + rng() % (N - 1);
    const long lo = std::max(0L, C - (N - n));
    const long hi = std::min(n, C);
    double prev = -1.0;
    for (long c = lo; c <= hi; ++c) {
      const double v = bernoulli_llr(c, n, C, N);
      const bool high = c * N > C * n;
      if (high) {
        EXPECT_GT(v, 0.0) << c << "/" << n << " vs " << C << "/" << N;
        EXPECT_GE(v, prev);
        EXPECT_NEAR(v, big_llr(c, n, C, N), 1e-9 * std::max(1.0, v));
        prev = v;
      } else {
        EXPECT_EQ(v, 0.0);
      }
    }
  }
}

TEST(ScanCircular, RecoversPlantedCluster) {
  std::mt19937_64 rng(5);
  const Dataset ds = planted_dataset(rng, 10, 90);
  const auto list = scan_circular(ds, {});
  ASSERT_GE(list.m(), 1u);
  const auto& top = list.hotspots[0];
  std::set<std::string> got(top.member_ids.begin(), top.member_ids.end());
  std::set<std::string> want;
  for (int i = 0; i < 10; ++i) want.insert("h" + std::to_string(i));
  EXPECT_EQ(got, want);
  EXPECT_EQ(top.cases, 10u);
  EXPECT_EQ(top.rank, 1);

  const OracleZone oracle = exhaustive_best_zone(ds, 0.5);
  EXPECT_EQ(oracle.members, want);
  EXPECT_NEAR(top.llr, oracle.llr, 1e-9 * oracle.llr);
}

TEST(ScanCircular, UniformHotnessGivesSortedDisjointList) {
  std::mt19937_64 rng(99);
  auto inst = testing::random_instance(rng, 300, 1);
  const auto list = scan_circular(inst.dataset, {0.5, 20, 2});
  std::set<std::string> seen;
  for (std::size_t i = 0; i < list.m(); ++i) {
    const auto& s = list.hotspots[i];
    EXPECT_EQ(s.rank, static_cast<int>(i) + 1);
    EXPECT_GT(s.llr, 0.0);
    EXPECT_LE(s.cases, s.population);
    EXPECT_EQ(s.population, s.member_ids.size());
    if (i > 0) EXPECT_LE(s.llr, list.hotspots[i - 1].llr);
    for (const auto& id : s.member_ids) EXPECT_TRUE(seen.insert(id).second) << id;
  }
  // Global rate is 1/2, so no zone should be remotely as strong as a planted one.
  ASSERT_GT(list.m(), 0u);
  EXPECT_LT(list.hotspots[0].llr, 15.0);
}

TEST(ScanCircular, NoHotObjectsGivesEmptyListWithWarning) {
  const Dataset ds = testing::line_dataset({"A", "B", "A"}, {"A", "B"});
  const auto list = scan_circular(ds, {});
  EXPECT_EQ(list.m(), 0u);
  EXPECT_TRUE(list.short_list);
}

TEST(ScanCircular, RejectsBadArguments) {
  const Dataset one = testing::line_dataset({"A"}, {"A"});
  EXPECT_THROW(scan_circular(one, {}), Error);
  const Dataset ds = testing::line_dataset({"A", "B"}, {"A", "B"});
  EXPECT_THROW(scan_circular(ds, {0.0, 5, 1}), Error);
  EXPECT_THROW(scan_circular(ds, {1.5, 5, 1}), Error);
}

TEST(ScanCircular, MatchesExhaustiveEnumerationOnPlantedInstances) {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 5; ++trial) {
    const std::size_t hot = 3 + rng() % 12;
    const Dataset ds = planted_dataset(rng, hot, 100 - hot);
    const auto list = scan_circular(ds, {0.5, 3, 1});
    const OracleZone oracle = exhaustive_best_zone(ds, 0.5);
    ASSERT_FALSE(list.hotspots.empty());
    std::set<std::string> got(list.hotspots[0].member_ids.begin(),
                              list.hotspots[0].member_ids.end());
    EXPECT_EQ(got, oracle.members);
    EXPECT_NEAR(list.hotspots[0].llr, oracle.llr, 1e-9 * oracle.llr);
  }
}

TEST(ScanCircular, ThreadCountDoesNotChangeOutput) {
  std::mt19937_64 rng(8);
  auto inst = testing::random_instance(rng, 400, 1);
  const auto a = scan_circular(inst.dataset, {0.3, 15, 1});
  const auto b = scan_circular(inst.dataset, {0.3, 15, 4});
  ASSERT_EQ(a.m(), b.m());
  for (std::size_t i = 0; i < a.m(); ++i) {
    EXPECT_EQ(a.hotspots[i].member_ids, b.hotspots[i].member_ids);
    EXPECT_EQ(a.hotspots[i].llr, b.hotspots[i].llr);
    EXPECT_EQ(a.hotspots[i].center_id, b.hotspots[i].center_id);
  }
}

TEST(ImportRankedList, AssignsRanksInFileOrder) {
  const Dataset ds = testing::line_dataset(std::vector<std::string>(12, "A"), {"A"});
  const auto list = parse_ranked_list(
      R"([{"rank": 9, "member_ids": ["o0","o1","o2","o3"], "llr": 4.5},
          {"member_ids": ["o4", "o5"]},
          {"member_ids": ["o6","o7","o8","o9","o10"], "center_id": "o8", "radius": 2}])",
      ds);
  ASSERT_EQ(list.m(), 3u);
  EXPECT_EQ(list.hotspots[0].rank, 1);
  EXPECT_EQ(list.hotspots[0].llr, 4.5);
  EXPECT_EQ(list.hotspots[1].llr, 0.0);
  EXPECT_EQ(list.hotspots[2].rank, 3);
  EXPECT_EQ(list.hotspots[2].population, 5u);
  EXPECT_EQ(list.hotspots[2].center_id, "o8");
}

TEST(ImportRankedList, UnknownIdIsIntegrityError) {
  const Dataset ds = testing::line_dataset({"A", "A"}, {"A"});
  try {
    parse_ranked_list(R"([{"member_ids": ["o0", "zz"]}])", ds);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kIntegrity);
  }
}

TEST(ImportRankedList, EmptyMemberListIsValueError) {
  const Dataset ds = testing::line_dataset({"A", "A"}, {"A"});
  try {
    parse_ranked_list(R"([{"member_ids": []}])", ds);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kValue);
  }
}

TEST(ImportRankedList, DuplicateHotSpotsPassThrough) {
  const Dataset ds = testing::line_dataset(std::vector<std::string>(4, "A"), {"A"});
  std::string json = "[";
  for (int r = 1; r <= 7; ++r) {
    json += r == 2 || r == 7 ? R"({"member_ids": ["o0","o1"]})" : R"({"member_ids": ["o2"]})";
    json += r < 7 ? "," : "]";
  }
  const auto list = parse_ranked_list(json, ds);
  ASSERT_EQ(list.m(), 7u);
  EXPECT_EQ(list.hotspots[1].member_ids, list.hotspots[6].member_ids);
}

TEST(ImportRankedList, AcceptsExportedDocumentAndIntegerIds) {
  std::vector<DataObject> objs = {{"1", {0, 0}, 1, {0}}, {"2", {1, 1}, 0, {0}}};
  const Dataset ds(std::move(objs), {{"a", {"x"}}}, CoordMode::kPlanar);
  const auto list =
      parse_ranked_list(R"({"metadata": {}, "hotspots": [{"member_ids": [1, 2]}]})", ds);
  ASSERT_EQ(list.m(), 1u);
  EXPECT_EQ(list.hotspots[0].cases, 1u);
}

}  // namespace
}  // namespace fish
