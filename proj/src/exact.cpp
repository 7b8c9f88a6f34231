#include "fish/exact.hpp"

#include <chrono>
#include <cstdlib>
#include <limits>

#include "fish/error.hpp"
#include "parallel.hpp"

namespace fish {

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 r = 1;
  constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
  for (std::uint64_t i = 1; i <= k; ++i) {
    // r * (n - k + i) / i stays integral at every step.
    r = r * (n - k + i) / i;
    if (r > kMax) return kMax;
  }
  return static_cast<std::uint64_t>(r);
}

std::uint64_t candidate_guard_from_env() {
  const char* env = std::getenv("FISH_GUARD_CANDIDATES");
  if (env == nullptr || *env == '\0') return kDefaultCandidateGuard;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(env, &end, 10);
  if (*end != '\0' || v == 0) {
    fail(ErrorKind::kConfig, std::string("FISH_GUARD_CANDIDATES must be a positive integer, got '") +
                                 env + "'");
  }
  return v;
}

const char* to_string(Method method) {
  return method == Method::kExact ? "exact" : "fish";
}

namespace {

// Fills out[pos...] with all completions of `prefix` in lexical order.
class Enumerator {
 public:
  Enumerator(const NFEvaluator& eval, std::size_t k, std::vector<Candidate>& out)
      : eval_(eval), k_(k), m_(static_cast<int>(eval.m())), pop_(eval), out_(out) {}

  void run(const std::vector<int>& prefix, std::size_t pos) {
    pos_ = pos;
    ranks_ = prefix;
    long long n = 0;
    for (int r : prefix) {
      pop_.add(r);
      n += r;
    }
    descend(n);
  }

 private:
  void descend(long long n) {
    if (ranks_.size() == k_) {
      out_[pos_++] = Candidate{SubsetSelection{ranks_},
                               NFPoint{static_cast<double>(n), pop_.fairness()}};
      return;
    }
    const int remaining = static_cast<int>(k_ - ranks_.size());
    const int start = ranks_.empty() ? 1 : ranks_.back() + 1;
    for (int r = start; r <= m_ - remaining + 1; ++r) {
      ranks_.push_back(r);
      pop_.add(r);
      descend(n + r);
      pop_.remove(r);
      ranks_.pop_back();
    }
  }

  const NFEvaluator& eval_;
  std::size_t k_;
  int m_;
  UnionPopulation pop_;
  std::vector<Candidate>& out_;
  std::vector<int> ranks_;
  std::size_t pos_ = 0;
};

}  // namespace

NFSpace enumerate_nf_space(const RankedHotSpotList& spots, const Dataset& dataset,
                           std::size_t k, const ExactOptions& options) {
  const std::size_t m = spots.m();
  if (k < 1 || k > m) {
    fail(ErrorKind::kDomain, "k must lie in [1, m] (k=" + std::to_string(k) +
                                 ", m=" + std::to_string(m) + ")");
  }
  const std::uint64_t total = binomial(m, k);
  if (total > options.guard) {
    fail(ErrorKind::kCapacity,
         "C(" + std::to_string(m) + "," + std::to_string(k) + ") = " + std::to_string(total) +
             " candidates exceeds the enumeration guard of " + std::to_string(options.guard) +
             "; lower m or k, use fish, or raise FISH_GUARD_CANDIDATES");
  }
  const NFEvaluator eval(spots, dataset);
  NFSpace space;
  space.m = m;
  space.k = k;
  space.candidates.resize(static_cast<std::size_t>(total));

  // Work blocks are the lexically ordered prefixes of length min(k, 2).
  struct Block {
    std::vector<int> prefix;
    std::size_t offset;
  };
  std::vector<Block> blocks;
  const int mi = static_cast<int>(m);
  const int ki = static_cast<int>(k);
  std::size_t offset = 0;
  for (int r1 = 1; r1 <= mi - ki + 1; ++r1) {
    if (k == 1) {
      blocks.push_back({{r1}, offset++});
      continue;
    }
    for (int r2 = r1 + 1; r2 <= mi - ki + 2; ++r2) {
      blocks.push_back({{r1, r2}, offset});
      offset += binomial(m - r2, k - 2);
    }
  }
  detail::parallel_for(blocks.size(), options.threads, [&](std::size_t b) {
    Enumerator(eval, k, space.candidates).run(blocks[b].prefix, blocks[b].offset);
  });
  return space;
}

DpeResult exact_tau_dpe(const NFSpace& space, std::size_t tau, SpacingMode spacing) {
  if (tau < 2) fail(ErrorKind::kDomain, "tau must be at least 2");
  const Frontier fr = frontier(space.candidates);
  auto spaced = equally_spaced(fr, tau, spacing);
  DpeResult result;
  result.method = Method::kExact;
  result.params = {space.m, space.k, tau, std::nullopt};
  result.chosen = std::move(spaced.chosen);
  result.shortfall = spaced.shortfall;
  return result;
}

DpeResult exact_tau_dpe(const RankedHotSpotList& spots, const Dataset& dataset,
                        std::size_t k, std::size_t tau, const ExactOptions& options) {
  if (tau < 2) fail(ErrorKind::kDomain, "tau must be at least 2");
  const auto start = std::chrono::steady_clock::now();
  const NFSpace space = enumerate_nf_space(spots, dataset, k, options);
  DpeResult result = exact_tau_dpe(space, tau, options.spacing);
  result.runtime_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

}  // namespace fish
