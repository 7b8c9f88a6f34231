#pragma once

// Fixtures and independent reference implementations shared by the suites.
// Nothing here calls into the code paths it is used to check.

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "fish/geodata.hpp"
#include "fish/pareto.hpp"
#include "fish/scan.hpp"

namespace fish::testing {

/// Dataset with one protected attribute; labels[i] is the category label of
/// object i, located at (i, 0).
inline Dataset line_dataset(const std::vector<std::string>& labels,
                            const std::vector<std::string>& categories) {
  std::vector<DataObject> objs;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    auto c = std::find(categories.begin(), categories.end(), labels[i]) - categories.begin();
    objs.push_back({"o" + std::to_string(i), {double(i), 0.0}, 0,
                    {static_cast<std::uint32_t>(c)}});
  }
  return Dataset(std::move(objs), {{"attr", categories}}, CoordMode::kPlanar);
}

inline RankedHotSpotList spots_from_indices(const std::vector<std::vector<int>>& members) {
  RankedHotSpotList list;
  for (std::size_t s = 0; s < members.size(); ++s) {
    HotSpot h;
    h.rank = static_cast<int>(s) + 1;
    for (int i : members[s]) h.member_ids.push_back("o" + std::to_string(i));
    h.population = h.member_ids.size();
    list.hotspots.push_back(std::move(h));
  }
  return list;
}

/// Random instance: n objects with `attrs` protected attributes of
/// `cats` categories each, and m random (possibly overlapping) hot spots.
struct RandomInstance {
  Dataset dataset;
  RankedHotSpotList spots;
};

inline RandomInstance random_instance(std::mt19937_64& rng, std::size_t n, std::size_t m,
                                      std::size_t attrs = 2, std::size_t cats = 3,
                                      std::size_t max_spot = 12) {
  std::vector<ProtectedAttributeSchema> schemas;
  for (std::size_t a = 0; a < attrs; ++a) {
    ProtectedAttributeSchema s{"a" + std::to_string(a), {}};
    for (std::size_t c = 0; c < cats; ++c) s.categories.push_back("c" + std::to_string(c));
    schemas.push_back(s);
  }
  std::vector<DataObject> objs;
  for (std::size_t i = 0; i < n; ++i) {
    DataObject o{"o" + std::to_string(i), {double(rng() % 1000), double(rng() % 1000)},
                 static_cast<std::uint8_t>(rng() % 2), {}};
    for (std::size_t a = 0; a < attrs; ++a) o.protected_values.push_back(rng() % cats);
    objs.push_back(o);
  }
  std::vector<std::vector<int>> members;
  for (std::size_t s = 0; s < m; ++s) {
    std::set<int> mem;
    const std::size_t size = 1 + rng() % max_spot;
    while (mem.size() < size) mem.insert(static_cast<int>(rng() % n));
    members.emplace_back(mem.begin(), mem.end());
  }
  return {Dataset(std::move(objs), std::move(schemas), CoordMode::kPlanar),
          spots_from_indices(members)};
}

// ---------------------------------------------------------------------------
// Oracles

inline bool oracle_dominates(const NFPoint& a, const NFPoint& b) {
  const bool no_worse = a.n <= b.n && a.f <= b.f;
  const bool identical = a.n == b.n && a.f == b.f;
  return no_worse && !identical;
}

/// O(n^2) skyline, returned as a sorted multiset of (n, f, ranks).
inline std::vector<std::tuple<double, double, std::vector<int>>> oracle_frontier(
    const std::vector<Candidate>& cands) {
  std::vector<std::tuple<double, double, std::vector<int>>> out;
  for (const auto& c : cands) {
    bool dominated = false;
    for (const auto& d : cands) {
      if (oracle_dominates(d.point, c.point)) {
        dominated = true;
        break;
      }
    }
    if (!dominated) out.emplace_back(c.point.n, c.point.f, c.sel.ranks);
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Union-population fairness from first principles, using a set of ids and
/// explicit cumulative sums.
inline double oracle_fairness(const Dataset& ds, const RankedHotSpotList& spots,
                              const std::vector<int>& ranks) {
  std::set<std::string> members;
  for (int r : ranks) {
    for (const auto& id : spots.hotspots[r - 1].member_ids) members.insert(id);
  }
  double total = 0.0;
  for (std::size_t a = 0; a < ds.schemas().size(); ++a) {
    const std::size_t K = ds.schemas()[a].size();
    std::vector<double> whole(K, 0.0), part(K, 0.0);
    for (const auto& o : ds.objects()) {
      whole[o.protected_values[a]] += 1.0;
      if (members.count(o.id)) part[o.protected_values[a]] += 1.0;
    }
    double cw = 0.0, cp = 0.0;
    for (std::size_t c = 0; c + 1 < K; ++c) {
      cw += whole[c] / double(ds.size());
      cp += part[c] / double(members.size());
      total += std::fabs(cw - cp);
    }
  }
  return total;
}

/// All k-subsets of 1..m in lexical order, by odometer.
inline std::vector<std::vector<int>> oracle_combinations(int m, int k) {
  std::vector<std::vector<int>> out;
  std::vector<int> c(k);
  for (int i = 0; i < k; ++i) c[i] = i + 1;
  while (true) {
    out.push_back(c);
    int i = k - 1;
    while (i >= 0 && c[i] == m - k + i + 1) --i;
    if (i < 0) break;
    ++c[i];
    for (int j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
  }
  return out;
}

inline double oracle_cov(const std::vector<Candidate>& result,
                         const std::vector<Candidate>& space) {
  std::size_t dominated = 0;
  for (const auto& p : space) {
    bool hit = false;
    for (const auto& r : result) hit = hit || oracle_dominates(r.point, p.point);
    dominated += hit;
  }
  return double(dominated) / double(space.size());
}

inline std::size_t oracle_round_index(std::size_t i, std::size_t p, std::size_t t) {
  return static_cast<std::size_t>(std::floor(double(i) * double(p - 1) / double(t - 1) + 0.5));
}

}  // namespace fish::testing
