#pragma once

#include <vector>

#include "fish/exact.hpp"
#include "fish/pareto.hpp"

namespace fish {

/// A node of the lexical prefix tree: `sel` holds the prefix (its length is
/// the tree level) and `point` the coordinates of the prefix as a subset.
using SearchNode = Candidate;

/// One level of the beam search: every candidate generated at this level,
/// their frontier, and the diverse survivors expanded into the next level
/// (the τ result picks at the last level).
struct BeamLevel {
  std::size_t level = 0;
  std::vector<SearchNode> candidates;
  Frontier frontier;
  std::vector<SearchNode> selected;
  bool shortfall = false;
};

struct FishOptions {
  unsigned threads = 0;
  SpacingMode spacing = SpacingMode::kIndex;
};

/// Children of `node` that can still be completed to a k-subset: ranks r
/// after the last prefix rank with at least k - (level + 1) ranks above r.
/// The root is the node with an empty prefix.
std::vector<SearchNode> expand_children(const SearchNode& node, const NFEvaluator& eval,
                                        std::size_t k);

/// Beam search over the prefix tree: at levels 1..k-1 keep b equally spaced
/// frontier candidates and expand all their children; at level k return τ
/// equally spaced frontier candidates.
DpeResult fish_search(const RankedHotSpotList& spots, const Dataset& dataset,
                      std::size_t k, std::size_t tau, std::size_t b,
                      const FishOptions& options = {});

/// Same computation as fish_search, returning every level.
std::vector<BeamLevel> beam_trace(const RankedHotSpotList& spots, const Dataset& dataset,
                                  std::size_t k, std::size_t tau, std::size_t b,
                                  const FishOptions& options = {});

}  // namespace fish
