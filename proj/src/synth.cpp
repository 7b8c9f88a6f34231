#include "fish/synth.hpp"

#include <cmath>
#include <iomanip>
#include <nlohmann/json.hpp>
#include <numbers>
#include <random>
#include <sstream>

#include "fish/error.hpp"

namespace fish {

SynthSpec default_synth_spec() {
  SynthSpec spec;
  spec.attributes = {
      {"caste", {"general", "obc", "sc", "st"}, {0.4, 0.3, 0.2, 0.1}},
      {"religion", {"hindu", "muslim", "other"}, {0.7, 0.2, 0.1}},
  };
  return spec;
}

namespace {

// std::*_distribution output is implementation-defined; these helpers keep
// generated datasets identical across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  bool bernoulli(double p) { return uniform() < p; }
  std::size_t below(std::size_t n) {
    return std::min(n - 1, static_cast<std::size_t>(uniform() * static_cast<double>(n)));
  }
  std::size_t categorical(const std::vector<double>& weights) {
    double total = 0.0;
    for (double w : weights) total += w;
    double u = uniform() * total;
    for (std::size_t c = 0; c < weights.size(); ++c) {
      if (u < weights[c]) return c;
      u -= weights[c];
    }
    return weights.size() - 1;
  }

 private:
  std::mt19937_64 engine_;
};

void validate(const SynthSpec& spec, std::size_t n_objects, std::size_t n_clusters) {
  if (spec.attributes.empty()) fail(ErrorKind::kConfig, "synth spec needs an attribute");
  for (const auto& a : spec.attributes) {
    if (a.categories.empty() || a.categories.size() != a.weights.size()) {
      fail(ErrorKind::kConfig, "attribute '" + a.name + "' needs one weight per category");
    }
    double total = 0.0;
    for (double w : a.weights) {
      if (!(w >= 0.0)) fail(ErrorKind::kConfig, "attribute weights must be non-negative");
      total += w;
    }
    if (!(total > 0.0)) fail(ErrorKind::kConfig, "attribute '" + a.name + "' has zero weight");
  }
  if (n_objects < n_clusters * 10) {
    fail(ErrorKind::kConfig, "n_objects must be at least 10 per planted cluster");
  }
  if (n_objects == 0) fail(ErrorKind::kConfig, "n_objects must be positive");
  if (spec.cluster_size_min < 1 || spec.cluster_size_min > spec.cluster_size_max) {
    fail(ErrorKind::kConfig, "cluster size range is empty");
  }
  if (n_clusters * spec.cluster_size_max > n_objects) {
    fail(ErrorKind::kConfig, "planted clusters cannot exceed the object count");
  }
  if (!(spec.extent > 2 * spec.cluster_radius) || !(spec.cluster_radius > 0.0)) {
    fail(ErrorKind::kConfig, "cluster radius must be positive and fit the extent");
  }
  for (double p : {spec.cluster_hot_rate, spec.background_hot_rate, spec.skewed_fraction,
                   spec.skew_strength}) {
    if (!(p >= 0.0 && p <= 1.0)) fail(ErrorKind::kConfig, "rates must lie in [0, 1]");
  }
}

}  // namespace

Dataset generate_synthetic(std::uint64_t seed, std::size_t n_objects, std::size_t n_clusters,
                           const SynthSpec& spec) {
  validate(spec, n_objects, n_clusters);
  Rng rng(seed);
  const std::size_t n_skewed = static_cast<std::size_t>(
      std::llround(spec.skewed_fraction * static_cast<double>(n_clusters)));

  std::vector<ProtectedAttributeSchema> schemas;
  for (const auto& a : spec.attributes) schemas.push_back({a.name, a.categories});

  const int width = static_cast<int>(std::to_string(n_objects - 1).size());
  std::vector<DataObject> objects;
  objects.reserve(n_objects);
  auto make = [&](Coord where, bool hot, const std::vector<std::uint32_t>& values) {
    std::ostringstream id;
    id << 'p' << std::setw(width) << std::setfill('0') << objects.size();
    objects.push_back(DataObject{id.str(), where, static_cast<std::uint8_t>(hot), values});
  };
  auto draw_values = [&](const std::vector<std::size_t>* dominant) {
    std::vector<std::uint32_t> values;
    for (std::size_t a = 0; a < spec.attributes.size(); ++a) {
      std::size_t c;
      if (dominant != nullptr && rng.bernoulli(spec.skew_strength)) c = (*dominant)[a];
      else c = rng.categorical(spec.attributes[a].weights);
      values.push_back(static_cast<std::uint32_t>(c));
    }
    return values;
  };

  const double r = spec.cluster_radius;
  for (std::size_t cl = 0; cl < n_clusters; ++cl) {
    const Coord center{rng.uniform(r, spec.extent - r), rng.uniform(r, spec.extent - r)};
    const std::size_t size =
        spec.cluster_size_min + rng.below(spec.cluster_size_max - spec.cluster_size_min + 1);
    std::vector<std::size_t> dominant;
    for (const auto& a : spec.attributes) dominant.push_back(rng.below(a.categories.size()));
    const bool skewed = cl < n_skewed;
    for (std::size_t i = 0; i < size; ++i) {
      const double rho = r * std::sqrt(rng.uniform());
      const double theta = 2.0 * std::numbers::pi * rng.uniform();
      const Coord where{center.x + rho * std::cos(theta), center.y + rho * std::sin(theta)};
      const bool hot = rng.bernoulli(spec.cluster_hot_rate);
      make(where, hot, draw_values(skewed ? &dominant : nullptr));
    }
  }
  while (objects.size() < n_objects) {
    const Coord where{rng.uniform(0.0, spec.extent), rng.uniform(0.0, spec.extent)};
    const bool hot = rng.bernoulli(spec.background_hot_rate);
    make(where, hot, draw_values(nullptr));
  }
  return Dataset(std::move(objects), std::move(schemas), CoordMode::kPlanar);
}

IngestConfig synthetic_ingest_config(const SynthSpec& spec) {
  IngestConfig config;
  for (const auto& a : spec.attributes) {
    config.protected_cols.push_back(a.name);
    config.category_orders[a.name] = a.categories;
  }
  return config;
}

SynthSpec parse_synth_spec(std::string_view json_text) {
  SynthSpec spec = default_synth_spec();
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
    if (!doc.is_object()) fail(ErrorKind::kConfig, "synth spec must be a JSON object");
    if (doc.contains("attributes")) {
      spec.attributes.clear();
      for (const auto& a : doc.at("attributes")) {
        AttributeSpec attr;
        attr.name = a.at("name").get<std::string>();
        attr.categories = a.at("categories").get<std::vector<std::string>>();
        if (a.contains("weights")) {
          attr.weights = a.at("weights").get<std::vector<double>>();
        } else {
          attr.weights.assign(attr.categories.size(), 1.0);
        }
        spec.attributes.push_back(std::move(attr));
      }
    }
    auto read = [&](const char* key, auto& field) {
      if (doc.contains(key)) field = doc.at(key).get<std::decay_t<decltype(field)>>();
    };
    read("extent", spec.extent);
    read("cluster_size_min", spec.cluster_size_min);
    read("cluster_size_max", spec.cluster_size_max);
    read("cluster_radius", spec.cluster_radius);
    read("cluster_hot_rate", spec.cluster_hot_rate);
    read("background_hot_rate", spec.background_hot_rate);
    read("skewed_fraction", spec.skewed_fraction);
    read("skew_strength", spec.skew_strength);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::kConfig, std::string("invalid synth spec: ") + e.what());
  }
  return spec;
}

std::string synth_spec_json(const SynthSpec& spec) {
  nlohmann::json doc;
  doc["attributes"] = nlohmann::json::array();
  for (const auto& a : spec.attributes) {
    doc["attributes"].push_back(
        {{"name", a.name}, {"categories", a.categories}, {"weights", a.weights}});
  }
  doc["extent"] = spec.extent;
  doc["cluster_size_min"] = spec.cluster_size_min;
  doc["cluster_size_max"] = spec.cluster_size_max;
  doc["cluster_radius"] = spec.cluster_radius;
  doc["cluster_hot_rate"] = spec.cluster_hot_rate;
  doc["background_hot_rate"] = spec.background_hot_rate;
  doc["skewed_fraction"] = spec.skewed_fraction;
  doc["skew_strength"] = spec.skew_strength;
  return doc.dump(2);
}

}  // namespace fish
