#include "fish/fish.hpp"

#include <chrono>

#include "fish/error.hpp"
#include "parallel.hpp"

namespace fish {

std::vector<SearchNode> expand_children(const SearchNode& node, const NFEvaluator& eval,
                                        std::size_t k) {
  const auto& prefix = node.sel.ranks;
  std::vector<SearchNode> children;
  if (prefix.size() >= k) return children;
  const int m = static_cast<int>(eval.m());
  const int need_above = static_cast<int>(k - prefix.size() - 1);
  const int first = prefix.empty() ? 1 : prefix.back() + 1;
  const int last = m - need_above;
  if (first > last) return children;

  UnionPopulation pop(eval);
  for (int r : prefix) pop.add(r);
  children.reserve(static_cast<std::size_t>(last - first + 1));
  for (int r = first; r <= last; ++r) {
    pop.add(r);
    SearchNode child;
    child.sel.ranks = prefix;
    child.sel.ranks.push_back(r);
    child.point = NFPoint{node.point.n + r, pop.fairness()};
    pop.remove(r);
    children.push_back(std::move(child));
  }
  return children;
}

namespace {

std::vector<SearchNode> diverse(const Frontier& fr, std::size_t count, SpacingMode spacing,
                                bool& shortfall) {
  if (count == 1) {
    shortfall = false;
    return {fr.candidates.front()};
  }
  auto spaced = equally_spaced(fr, count, spacing);
  shortfall = spaced.shortfall;
  return std::move(spaced.chosen);
}

std::vector<BeamLevel> run_beam(const RankedHotSpotList& spots, const Dataset& dataset,
                                std::size_t k, std::size_t tau, std::size_t b,
                                const FishOptions& options, bool keep_all) {
  const std::size_t m = spots.m();
  if (k < 1 || k > m) {
    fail(ErrorKind::kDomain, "k must lie in [1, m] (k=" + std::to_string(k) +
                                 ", m=" + std::to_string(m) + ")");
  }
  if (tau < 2) fail(ErrorKind::kDomain, "tau must be at least 2");
  if (b < 1) fail(ErrorKind::kDomain, "beam width b must be at least 1");

  const NFEvaluator eval(spots, dataset);
  std::vector<BeamLevel> levels;
  std::vector<SearchNode> current = expand_children(SearchNode{}, eval, k);
  for (std::size_t level = 1;; ++level) {
    BeamLevel bl;
    bl.level = level;
    bl.frontier = frontier(current);
    const bool last = level == k;
    bl.selected = diverse(bl.frontier, last ? tau : b, options.spacing, bl.shortfall);
    if (last) {
      bl.candidates = std::move(current);
      levels.push_back(std::move(bl));
      break;
    }
    std::vector<std::vector<SearchNode>> next(bl.selected.size());
    detail::parallel_for(bl.selected.size(), options.threads, [&](std::size_t i) {
      next[i] = expand_children(bl.selected[i], eval, k);
    });
    current.clear();
    for (auto& part : next) {
      current.insert(current.end(), std::make_move_iterator(part.begin()),
                     std::make_move_iterator(part.end()));
    }
    if (keep_all) {
      levels.push_back(std::move(bl));
    } else {
      levels.clear();
    }
  }
  return levels;
}

}  // namespace

DpeResult fish_search(const RankedHotSpotList& spots, const Dataset& dataset, std::size_t k,
                      std::size_t tau, std::size_t b, const FishOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  auto levels = run_beam(spots, dataset, k, tau, b, options, false);
  DpeResult result;
  result.method = Method::kFish;
  result.params = {spots.m(), k, tau, b};
  result.chosen = std::move(levels.back().selected);
  result.shortfall = levels.back().shortfall;
  result.runtime_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

std::vector<BeamLevel> beam_trace(const RankedHotSpotList& spots, const Dataset& dataset,
                                  std::size_t k, std::size_t tau, std::size_t b,
                                  const FishOptions& options) {
  return run_beam(spots, dataset, k, tau, b, options, true);
}

}  // namespace fish
