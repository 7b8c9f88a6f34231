#include "fish/json_io.hpp"

namespace fish {

using nlohmann::json;

namespace {

template <typename T>
json optional_value(const std::optional<T>& v) {
  return v ? json(*v) : json(nullptr);
}

}  // namespace

void to_json(json& j, const NFPoint& p) { j = json{{"n", p.n}, {"f", p.f}}; }

void to_json(json& j, const Candidate& c) {
  j = json{{"ranks", c.sel.ranks}, {"n", c.point.n}, {"f", c.point.f}};
}

void to_json(json& j, const DpeResult& r) {
  json params{{"m", r.params.m}, {"k", r.params.k}, {"tau", r.params.tau}};
  params["b"] = optional_value(r.params.b);
  j = json{{"method", to_string(r.method)},
           {"params", params},
           {"shortfall", r.shortfall},
           {"runtime_seconds", r.runtime_seconds},
           {"candidates", r.chosen}};
}

void to_json(json& j, const HotSpot& s) {
  j = json{{"rank", s.rank},     {"member_ids", s.member_ids}, {"llr", s.llr},
           {"cases", s.cases},   {"population", s.population}};
  j["center_id"] = optional_value(s.center_id);
  j["radius"] = optional_value(s.radius);
}

void to_json(json& j, const RankedHotSpotList& list) {
  j = json{{"m", list.m()}, {"short_list", list.short_list}, {"hotspots", list.hotspots}};
}

void to_json(json& j, const BeamLevel& level) {
  j = json{{"level", level.level},
           {"candidates", level.candidates},
           {"frontier", level.frontier.candidates},
           {"selected", level.selected},
           {"shortfall", level.shortfall}};
}

void to_json(json& j, const NormalizedSpace& norm) {
  j = json{{"n_min", norm.n_min}, {"n_max", norm.n_max}, {"f_min", norm.f_min},
           {"f_max", norm.f_max}};
}

void to_json(json& j, const MetricReport& r) {
  j = json{{"dc", optional_value(r.dc)},
           {"cov_fish", optional_value(r.cov_fish)},
           {"cov_exact", optional_value(r.cov_exact)},
           {"md_fish", optional_value(r.md_fish)},
           {"md_exact", optional_value(r.md_exact)},
           {"space_size", r.space_size},
           {"normalization", optional_value(r.norm)},
           {"fish", r.fish},
           {"exact", optional_value(r.exact)},
           {"notes", r.notes}};
}

void to_json(json& j, const ProtectedAttributeSchema& schema) {
  j = json{{"name", schema.name}, {"categories", schema.categories}};
}

json strip_volatile(const json& j) {
  if (j.is_object()) {
    json out = json::object();
    for (auto it = j.begin(); it != j.end(); ++it) {
      if (it.key() == "runtime_seconds" || it.key() == "threads") continue;
      out[it.key()] = strip_volatile(it.value());
    }
    return out;
  }
  if (j.is_array()) {
    json out = json::array();
    for (const auto& v : j) out.push_back(strip_volatile(v));
    return out;
  }
  return j;
}

}  // namespace fish
