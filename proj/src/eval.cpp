#include "fish/eval.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>

#include "fish/error.hpp"
#include "parallel.hpp"

namespace fish {

NFPoint NormalizedSpace::map(const NFPoint& p) const {
  const double fn = f_max > f_min ? (p.f - f_min) / (f_max - f_min) : 0.0;
  return NFPoint{(p.n - n_min) / (n_max - n_min), fn};
}

NormalizedSpace normalize(const NFSpace& space) {
  if (space.candidates.empty()) fail(ErrorKind::kDomain, "cannot normalise an empty space");
  NormalizedSpace norm;
  norm.n_min = norm.n_max = space.candidates.front().point.n;
  norm.f_min = norm.f_max = space.candidates.front().point.f;
  for (const auto& c : space.candidates) {
    norm.n_min = std::min(norm.n_min, c.point.n);
    norm.n_max = std::max(norm.n_max, c.point.n);
    norm.f_min = std::min(norm.f_min, c.point.f);
    norm.f_max = std::max(norm.f_max, c.point.f);
  }
  if (!(norm.n_max > norm.n_min)) {
    fail(ErrorKind::kDomain, "N-F space has a single noteworthiness value");
  }
  return norm;
}

namespace {

std::vector<NFPoint> sorted_points(const DpeResult& r) {
  std::vector<Candidate> c = r.chosen;
  std::sort(c.begin(), c.end(), canonical_less);
  std::vector<NFPoint> pts;
  for (const auto& x : c) pts.push_back(x.point);
  return pts;
}

double distance(const NormalizedSpace& norm, const NFPoint& a, const NFPoint& b) {
  const NFPoint p = norm.map(a);
  const NFPoint q = norm.map(b);
  return std::hypot(p.n - q.n, p.f - q.f);
}

}  // namespace

double dc(const DpeResult& exact, const DpeResult& approx, const NormalizedSpace& norm) {
  if (exact.chosen.size() != approx.chosen.size()) {
    fail(ErrorKind::kDomain, "DC needs results of equal length (" +
                                 std::to_string(exact.chosen.size()) + " vs " +
                                 std::to_string(approx.chosen.size()) + ")");
  }
  if (exact.chosen.empty()) fail(ErrorKind::kDomain, "DC of empty results");
  const auto e = sorted_points(exact);
  const auto f = sorted_points(approx);
  double total = 0.0;
  for (std::size_t i = 0; i < e.size(); ++i) total += distance(norm, e[i], f[i]);
  return total / static_cast<double>(e.size());
}

double cov(std::span<const Candidate> result, const NFSpace& space, unsigned threads) {
  if (space.candidates.empty()) fail(ErrorKind::kDomain, "coverage over an empty space");
  constexpr std::size_t kChunk = 4096;
  const std::size_t n = space.candidates.size();
  std::vector<std::size_t> counts((n + kChunk - 1) / kChunk, 0);
  detail::parallel_for(counts.size(), threads, [&](std::size_t chunk) {
    const std::size_t end = std::min(n, (chunk + 1) * kChunk);
    std::size_t count = 0;
    for (std::size_t i = chunk * kChunk; i < end; ++i) {
      const NFPoint& p = space.candidates[i].point;
      for (const auto& r : result) {
        if (dominates(r.point, p)) {
          ++count;
          break;
        }
      }
    }
    counts[chunk] = count;
  });
  std::size_t total = 0;
  for (std::size_t c : counts) total += c;
  return static_cast<double>(total) / static_cast<double>(n);
}

double cov(const DpeResult& result, const NFSpace& space, unsigned threads) {
  return cov(std::span<const Candidate>(result.chosen), space, threads);
}

double md(const DpeResult& result, const NormalizedSpace& norm) {
  const auto& c = result.chosen;
  if (c.size() < 2) fail(ErrorKind::kDomain, "MD needs at least two candidates");
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < c.size(); ++i) {
    for (std::size_t j = i + 1; j < c.size(); ++j) {
      best = std::min(best, distance(norm, c[i].point, c[j].point));
    }
  }
  return best;
}

MetricReport evaluate(const RankedHotSpotList& spots, const Dataset& dataset, std::size_t k,
                      std::size_t tau, std::size_t b, const EvalOptions& options) {
  MetricReport report;
  report.fish = fish_search(spots, dataset, k, tau, b, options.fish);

  NFSpace space;
  try {
    const auto start = std::chrono::steady_clock::now();
    space = enumerate_nf_space(spots, dataset, k, options.exact);
    DpeResult exact = exact_tau_dpe(space, tau, options.exact.spacing);
    exact.runtime_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    report.exact = std::move(exact);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::kCapacity) throw;
    report.notes.push_back(std::string("exact unavailable: ") + e.what());
    return report;
  }
  report.space_size = space.candidates.size();
  report.cov_fish = cov(report.fish, space, options.exact.threads);
  report.cov_exact = cov(*report.exact, space, options.exact.threads);

  const bool same_length = report.fish.chosen.size() == report.exact->chosen.size();
  try {
    report.norm = normalize(space);
  } catch (const Error& e) {
    report.notes.push_back(std::string("normalisation undefined: ") + e.what());
    // A single-valued space leaves both methods on the same candidates.
    bool identical = same_length;
    for (std::size_t i = 0; identical && i < report.fish.chosen.size(); ++i) {
      identical = report.fish.chosen[i].point == report.exact->chosen[i].point;
    }
    if (identical) report.dc = 0.0;
    report.notes.push_back("md undefined: normalisation unavailable");
    return report;
  }
  if (same_length) {
    report.dc = dc(*report.exact, report.fish, *report.norm);
  } else {
    report.notes.push_back("dc undefined: results differ in length");
  }
  if (report.fish.chosen.size() >= 2) {
    report.md_fish = md(report.fish, *report.norm);
  } else {
    report.notes.push_back("md_fish undefined: fewer than two candidates");
  }
  if (report.exact->chosen.size() >= 2) {
    report.md_exact = md(*report.exact, *report.norm);
  } else {
    report.notes.push_back("md_exact undefined: fewer than two candidates");
  }
  return report;
}

}  // namespace fish
