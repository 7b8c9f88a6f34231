#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fish/geodata.hpp"

namespace fish {

struct AttributeSpec {
  std::string name;
  std::vector<std::string> categories;
  std::vector<double> weights;  // population mix, need not be normalised
};

/// Planted-cluster generator settings. The first round(skewed_fraction *
/// n_clusters) clusters draw each protected attribute mostly from one
/// dominant category; the rest follow the population mix.
struct SynthSpec {
  std::vector<AttributeSpec> attributes;
  double extent = 100.0;  // points lie in [0, extent]^2
  std::size_t cluster_size_min = 20;
  std::size_t cluster_size_max = 60;
  double cluster_radius = 2.0;
  double cluster_hot_rate = 0.7;
  double background_hot_rate = 0.1;
  double skewed_fraction = 0.5;
  double skew_strength = 0.85;  // probability of the dominant category
};

/// Two attributes: a four-way `caste` and a three-way `religion`.
SynthSpec default_synth_spec();
SynthSpec parse_synth_spec(std::string_view json_text);
std::string synth_spec_json(const SynthSpec& spec);

/// Planar dataset fully determined by `seed`. Ids are zero-padded so lexical
/// and generation order agree.
Dataset generate_synthetic(std::uint64_t seed, std::size_t n_objects, std::size_t n_clusters,
                           const SynthSpec& spec);

/// Ingest config matching the columns written for a synthetic dataset.
IngestConfig synthetic_ingest_config(const SynthSpec& spec);

/// The seeded benchmark setting: 4000 objects, 16 planted clusters (half
/// skewed), both default attributes.
struct ReferenceInstance {
  std::uint64_t seed = 20211;
  std::size_t n_objects = 4000;
  std::size_t n_clusters = 16;
  SynthSpec spec = default_synth_spec();
};

}  // namespace fish
