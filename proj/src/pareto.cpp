#include "fish/pareto.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "fish/error.hpp"

namespace fish {

bool canonical_less(const Candidate& a, const Candidate& b) {
  if (a.point.n != b.point.n) return a.point.n < b.point.n;
  if (a.point.f != b.point.f) return a.point.f < b.point.f;
  return a.sel.ranks < b.sel.ranks;
}

bool dominates(const NFPoint& a, const NFPoint& b) {
  return a.n <= b.n && a.f <= b.f && !(a.n == b.n && a.f == b.f);
}

Frontier frontier(std::span<const Candidate> cands) {
  if (cands.empty()) fail(ErrorKind::kDomain, "frontier of an empty candidate set");
  std::vector<const Candidate*> order;
  order.reserve(cands.size());
  for (const auto& c : cands) order.push_back(&c);
  std::sort(order.begin(), order.end(),
            [](const Candidate* a, const Candidate* b) { return canonical_less(*a, *b); });

  // Sweep groups of equal n. Within a group only the minimum-f members can
  // survive; they do unless an earlier group already reached f <= theirs.
  Frontier out;
  double best_f = std::numeric_limits<double>::infinity();
  std::size_t i = 0;
  while (i < order.size()) {
    const double n = order[i]->point.n;
    const double group_min = order[i]->point.f;
    std::size_t j = i;
    while (j < order.size() && order[j]->point.n == n) {
      if (order[j]->point.f == group_min && group_min < best_f) {
        out.candidates.push_back(*order[j]);
      }
      ++j;
    }
    best_f = std::min(best_f, group_min);
    i = j;
  }
  return out;
}

std::vector<std::size_t> equally_spaced_indices(std::size_t p, std::size_t t) {
  if (t < 2) fail(ErrorKind::kDomain, "equally spaced selection needs t >= 2");
  if (p < t) fail(ErrorKind::kDomain, "frontier shorter than t");
  std::vector<std::size_t> idx(t);
  // floor(i*(p-1)/(t-1) + 1/2) in integer arithmetic.
  for (std::size_t i = 0; i < t; ++i) {
    idx[i] = (2 * i * (p - 1) + (t - 1)) / (2 * (t - 1));
  }
  return idx;
}

namespace {

std::vector<std::size_t> arc_length_indices(const Frontier& fr, std::size_t t) {
  const auto& c = fr.candidates;
  double n_lo = c.front().point.n, n_hi = n_lo, f_lo = c.front().point.f, f_hi = f_lo;
  for (const auto& x : c) {
    n_lo = std::min(n_lo, x.point.n);
    n_hi = std::max(n_hi, x.point.n);
    f_lo = std::min(f_lo, x.point.f);
    f_hi = std::max(f_hi, x.point.f);
  }
  auto scale = [](double v, double lo, double hi) { return hi > lo ? (v - lo) / (hi - lo) : 0.0; };
  std::vector<double> arc(c.size(), 0.0);
  for (std::size_t j = 1; j < c.size(); ++j) {
    const double dn = scale(c[j].point.n, n_lo, n_hi) - scale(c[j - 1].point.n, n_lo, n_hi);
    const double df = scale(c[j].point.f, f_lo, f_hi) - scale(c[j - 1].point.f, f_lo, f_hi);
    arc[j] = arc[j - 1] + std::hypot(dn, df);
  }
  const double total = arc.back();
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < t; ++i) {
    const double target = total * static_cast<double>(i) / static_cast<double>(t - 1);
    auto it = std::lower_bound(arc.begin(), arc.end(), target);
    std::size_t j = static_cast<std::size_t>(it - arc.begin());
    if (j == arc.size()) j = arc.size() - 1;
    if (j > 0 && target - arc[j - 1] <= arc[j] - target) --j;
    if (i == t - 1) j = c.size() - 1;
    if (idx.empty() || idx.back() != j) idx.push_back(j);
  }
  return idx;
}

}  // namespace

SpacedSelection equally_spaced(const Frontier& fr, std::size_t t, SpacingMode mode) {
  if (t < 2) fail(ErrorKind::kDomain, "equally spaced selection needs t >= 2");
  SpacedSelection out;
  if (fr.size() < t) {
    out.chosen = fr.candidates;
    out.shortfall = true;
    return out;
  }
  const auto idx = mode == SpacingMode::kIndex ? equally_spaced_indices(fr.size(), t)
                                               : arc_length_indices(fr, t);
  for (std::size_t j : idx) out.chosen.push_back(fr.candidates[j]);
  out.shortfall = out.chosen.size() < t;
  return out;
}

}  // namespace fish
