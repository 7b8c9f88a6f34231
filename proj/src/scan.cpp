#include "fish/scan.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <nlohmann/json.hpp>

#include "fish/error.hpp"
#include "parallel.hpp"
#include "text_util.hpp"

namespace fish {

RankedHotSpotList RankedHotSpotList::top(std::size_t m) const {
  RankedHotSpotList out;
  out.short_list = short_list;
  const std::size_t take = std::min(m, hotspots.size());
  out.hotspots.assign(hotspots.begin(), hotspots.begin() + static_cast<std::ptrdiff_t>(take));
  return out;
}

namespace {

// a * log(a / b) with 0 log 0 = 0.
double xlogx(double a, double b) { return a > 0.0 ? a * std::log(a / b) : 0.0; }

}  // namespace

double bernoulli_llr(std::size_t c, std::size_t n, std::size_t total_cases,
                     std::size_t total_pop) {
  const std::size_t C = total_cases;
  const std::size_t N = total_pop;
  if (n < 1 || c > n || n >= N || c > C || C > N || C - c > N - n) {
    fail(ErrorKind::kDomain, "bernoulli_llr: invalid counts c=" + std::to_string(c) +
                                 " n=" + std::to_string(n) + " C=" + std::to_string(C) +
                                 " N=" + std::to_string(N));
  }
  // High-rate indicator: c/n > C/N, compared exactly.
  if (static_cast<unsigned __int128>(c) * N <= static_cast<unsigned __int128>(C) * n) {
    return 0.0;
  }
  const double dc = static_cast<double>(c);
  const double dn = static_cast<double>(n);
  const double dC = static_cast<double>(C);
  const double dN = static_cast<double>(N);
  const double outside = dN - dn;
  const double alt = xlogx(dc, dn) + xlogx(dn - dc, dn) + xlogx(dC - dc, outside) +
                     xlogx(outside - (dC - dc), outside);
  const double null = xlogx(dC, dN) + xlogx(dN - dC, dN);
  return std::max(0.0, alt - null);
}

namespace {

struct Zone {
  double llr = 0.0;
  std::size_t population = 0;  // prefix length in the centre's neighbour list
  std::size_t cases = 0;
  double radius = 0.0;
  bool valid = false;
};

// Strict weak order: better zone first.
bool better(const Zone& a, std::string_view a_center, const Zone& b,
            std::string_view b_center) {
  if (a.llr != b.llr) return a.llr > b.llr;
  if (a.population != b.population) return a.population < b.population;
  return a_center < b_center;
}

}  // namespace

RankedHotSpotList scan_circular(const Dataset& dataset, const ScanOptions& options) {
  const std::size_t N = dataset.size();
  if (N < 2) fail(ErrorKind::kDomain, "scan requires at least 2 objects");
  if (!(options.max_fraction > 0.0 && options.max_fraction <= 1.0)) {
    fail(ErrorKind::kDomain, "max_fraction must lie in (0, 1]");
  }
  RankedHotSpotList result;
  const std::size_t C = dataset.hot_count();
  if (C == 0 || options.m == 0) {
    result.short_list = options.m > 0;
    return result;
  }
  const std::size_t max_pop = std::min<std::size_t>(
      N - 1, static_cast<std::size_t>(std::floor(options.max_fraction * static_cast<double>(N))));
  if (max_pop == 0) {
    result.short_list = true;
    return result;
  }

  // Neighbour lists truncated to the largest admissible zone, including
  // every object tied at the cut-off distance.
  std::vector<std::vector<std::uint32_t>> neighbours(N);
  detail::parallel_for(N, options.threads, [&](std::size_t center) {
    std::vector<std::pair<double, std::uint32_t>> order(N);
    for (std::size_t j = 0; j < N; ++j) {
      order[j] = {dataset.distance(center, j), static_cast<std::uint32_t>(j)};
    }
    auto cut = order.begin() + static_cast<std::ptrdiff_t>(max_pop);
    std::nth_element(order.begin(), cut, order.end());
    std::sort(order.begin(), cut + 1);
    auto& list = neighbours[center];
    list.reserve(max_pop + 1);
    for (auto it = order.begin(); it != cut + 1; ++it) list.push_back(it->second);
  });

  auto dist_at = [&](std::size_t center, std::size_t pos) {
    return dataset.distance(center, neighbours[center][pos]);
  };

  std::vector<bool> taken(N, false);
  auto best_zone_for = [&](std::size_t center) {
    Zone best;
    if (taken[center]) return best;
    const auto& list = neighbours[center];
    std::size_t cases = 0;
    std::size_t pos = 0;
    while (pos < list.size()) {
      // Extend by the whole group of objects at the next distance.
      const double radius = dist_at(center, pos);
      std::size_t end = pos;
      bool blocked = false;
      std::size_t group_cases = 0;
      while (end < list.size() && dist_at(center, end) == radius) {
        blocked = blocked || taken[list[end]];
        group_cases += dataset[list[end]].hotness;
        ++end;
      }
      if (blocked || end > max_pop) break;
      cases += group_cases;
      pos = end;
      Zone zone{bernoulli_llr(cases, pos, C, N), pos, cases, radius, true};
      if (!best.valid || better(zone, "", best, "")) best = zone;
    }
    return best;
  };

  std::vector<Zone> cached(N);
  std::vector<char> stale(N, 1);
  while (result.hotspots.size() < options.m) {
    std::vector<std::size_t> todo;
    for (std::size_t i = 0; i < N; ++i) {
      if (stale[i]) todo.push_back(i);
    }
    detail::parallel_for(todo.size(), options.threads, [&](std::size_t t) {
      cached[todo[t]] = best_zone_for(todo[t]);
      stale[todo[t]] = 0;
    });
    std::size_t winner = N;
    for (std::size_t i = 0; i < N; ++i) {
      if (!cached[i].valid || cached[i].llr <= 0.0) continue;
      if (winner == N ||
          better(cached[i], dataset[i].id, cached[winner], dataset[winner].id)) {
        winner = i;
      }
    }
    if (winner == N) break;
    const Zone& zone = cached[winner];
    HotSpot spot;
    spot.rank = static_cast<int>(result.hotspots.size()) + 1;
    spot.center_id = dataset[winner].id;
    spot.radius = zone.radius;
    spot.llr = zone.llr;
    spot.cases = zone.cases;
    spot.population = zone.population;
    for (std::size_t p = 0; p < zone.population; ++p) {
      const std::uint32_t member = neighbours[winner][p];
      taken[member] = true;
      spot.member_ids.push_back(dataset[member].id);
    }
    result.hotspots.push_back(std::move(spot));
    // A cached best zone stays optimal unless it now touches a taken object:
    // the admissible set only shrinks.
    for (std::size_t i = 0; i < N; ++i) {
      if (!cached[i].valid) continue;
      if (taken[i]) {
        cached[i].valid = false;
        continue;
      }
      for (std::size_t p = 0; p < cached[i].population; ++p) {
        if (taken[neighbours[i][p]]) {
          stale[i] = 1;
          break;
        }
      }
    }
  }
  result.short_list = result.hotspots.size() < options.m;
  return result;
}

RankedHotSpotList parse_ranked_list(std::string_view json_text, const Dataset& dataset) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    fail(ErrorKind::kSchema, std::string("ranked list is not valid JSON: ") + e.what());
  }
  const nlohmann::json* entries = &doc;
  if (doc.is_object() && doc.contains("hotspots")) entries = &doc["hotspots"];
  if (!entries->is_array()) fail(ErrorKind::kSchema, "ranked list must be a JSON array");

  RankedHotSpotList list;
  for (const auto& entry : *entries) {
    if (!entry.is_object() || !entry.contains("member_ids") ||
        !entry["member_ids"].is_array()) {
      fail(ErrorKind::kSchema, "hot spot entry needs a member_ids array");
    }
    HotSpot spot;
    spot.rank = static_cast<int>(list.hotspots.size()) + 1;
    std::vector<bool> seen(dataset.size(), false);
    for (const auto& member : entry["member_ids"]) {
      std::string id;
      if (member.is_string()) id = member.get<std::string>();
      else if (member.is_number_integer()) id = std::to_string(member.get<long long>());
      else fail(ErrorKind::kSchema, "member ids must be strings or integers");
      const std::size_t idx = dataset.index_of(id);
      if (seen[idx]) continue;
      seen[idx] = true;
      spot.cases += dataset[idx].hotness;
      spot.member_ids.push_back(std::move(id));
    }
    if (spot.member_ids.empty()) {
      fail(ErrorKind::kValue, "hot spot " + std::to_string(spot.rank) + " has no members");
    }
    spot.population = spot.member_ids.size();
    if (entry.contains("llr") && !entry["llr"].is_null()) {
      spot.llr = entry["llr"].get<double>();
      if (!(spot.llr >= 0.0)) fail(ErrorKind::kValue, "llr must be non-negative");
    }
    if (entry.contains("center_id") && !entry["center_id"].is_null()) {
      const auto& c = entry["center_id"];
      spot.center_id = c.is_string() ? c.get<std::string>() : c.dump();
    }
    if (entry.contains("radius") && !entry["radius"].is_null()) {
      spot.radius = entry["radius"].get<double>();
    }
    list.hotspots.push_back(std::move(spot));
  }
  return list;
}

RankedHotSpotList import_ranked_list(const std::filesystem::path& path,
                                     const Dataset& dataset) {
  return parse_ranked_list(detail::read_file(path), dataset);
}

}  // namespace fish
