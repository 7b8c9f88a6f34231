#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fish/pareto.hpp"

namespace fish {

inline constexpr std::uint64_t kDefaultCandidateGuard = 5'000'000;

/// C(n, k), saturating at UINT64_MAX.
std::uint64_t binomial(std::uint64_t n, std::uint64_t k);

/// kDefaultCandidateGuard unless FISH_GUARD_CANDIDATES holds a positive integer.
std::uint64_t candidate_guard_from_env();

/// Every k-subset of the hot spot list with its coordinates, in lexical order.
struct NFSpace {
  std::vector<Candidate> candidates;
  std::size_t m = 0;
  std::size_t k = 0;
};

enum class Method { kExact, kFish };
const char* to_string(Method method);

struct DpeParams {
  std::size_t m = 0;
  std::size_t k = 0;
  std::size_t tau = 0;
  std::optional<std::size_t> b;
};

/// τ diverse pareto-efficient candidates, sorted by n ascending.
struct DpeResult {
  std::vector<Candidate> chosen;
  Method method = Method::kExact;
  DpeParams params;
  bool shortfall = false;
  double runtime_seconds = 0.0;
};

struct ExactOptions {
  std::uint64_t guard = kDefaultCandidateGuard;
  unsigned threads = 0;
  SpacingMode spacing = SpacingMode::kIndex;
};

/// Enumerates all C(m, k) selections. Union populations are shared along
/// common prefixes, so each leaf costs one hot spot insertion. Throws a
/// capacity error when C(m, k) exceeds options.guard.
NFSpace enumerate_nf_space(const RankedHotSpotList& spots, const Dataset& dataset,
                           std::size_t k, const ExactOptions& options = {});

/// Frontier of the enumerated space followed by τ equally spaced picks.
DpeResult exact_tau_dpe(const NFSpace& space, std::size_t tau,
                        SpacingMode spacing = SpacingMode::kIndex);
DpeResult exact_tau_dpe(const RankedHotSpotList& spots, const Dataset& dataset,
                        std::size_t k, std::size_t tau, const ExactOptions& options = {});

}  // namespace fish
