#pragma once

#include <span>
#include <vector>

#include "fish/objectives.hpp"

namespace fish {

struct Candidate {
  SubsetSelection sel;
  NFPoint point;
};

/// Canonical order: n ascending, then f ascending, then ranks lexically.
bool canonical_less(const Candidate& a, const Candidate& b);

/// True iff `a` is no worse than `b` on both objectives and the two points
/// are not identical.
bool dominates(const NFPoint& a, const NFPoint& b);

/// Non-dominated candidates in canonical order, traced from top-left
/// (smallest n) to bottom-right. Candidates with identical coordinates are
/// all retained.
struct Frontier {
  std::vector<Candidate> candidates;

  std::size_t size() const { return candidates.size(); }
};

Frontier frontier(std::span<const Candidate> cands);

enum class SpacingMode { kIndex, kArcLength };

struct SpacedSelection {
  std::vector<Candidate> chosen;
  bool shortfall = false;  // frontier had fewer than t distinct picks
};

/// Positions round_half_up(i * (p - 1) / (t - 1)) for i in [0, t); requires
/// p >= t >= 2.
std::vector<std::size_t> equally_spaced_indices(std::size_t p, std::size_t t);

/// Splits the frontier sequence into t - 1 equal segments and returns the t
/// endpoints. A frontier shorter than t is returned whole with `shortfall`
/// set. kArcLength spaces by path length in frontier-normalised coordinates.
SpacedSelection equally_spaced(const Frontier& fr, std::size_t t,
                               SpacingMode mode = SpacingMode::kIndex);

}  // namespace fish
