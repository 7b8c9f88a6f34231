#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace fish {

enum class CoordMode { kPlanar, kGeographic };

/// Mean Earth radius used for great-circle distances, in kilometres.
inline constexpr double kEarthRadiusKm = 6371.0088;

/// A categorical protected attribute. The category order is fixed when the
/// dataset is loaded and acts as the 1-D ground metric for divergences.
struct ProtectedAttributeSchema {
  std::string name;
  std::vector<std::string> categories;

  std::size_t size() const { return categories.size(); }
  /// Index of `label`, or size() when absent.
  std::size_t find(std::string_view label) const;
};

struct Coord {
  double x = 0.0;  // latitude in geographic mode
  double y = 0.0;  // longitude in geographic mode
};

struct DataObject {
  std::string id;
  Coord coords;
  std::uint8_t hotness = 0;
  std::vector<std::uint32_t> protected_values;  // one per schema
};

/// Immutable, validated collection of data objects.
class Dataset {
 public:
  Dataset(std::vector<DataObject> objects,
          std::vector<ProtectedAttributeSchema> schemas, CoordMode mode);

  const std::vector<DataObject>& objects() const { return objects_; }
  const std::vector<ProtectedAttributeSchema>& schemas() const {
    return schemas_;
  }
  CoordMode coord_mode() const { return mode_; }
  std::size_t size() const { return objects_.size(); }
  const DataObject& operator[](std::size_t i) const { return objects_[i]; }

  /// Position of the object with `id`; throws an integrity error if unknown.
  std::size_t index_of(std::string_view id) const;
  bool contains(std::string_view id) const;
  std::size_t schema_index(std::string_view name) const;

  std::size_t hot_count() const { return hot_count_; }
  /// Distance between objects i and j: Euclidean (planar) or haversine km.
  double distance(std::size_t i, std::size_t j) const;

 private:
  std::vector<DataObject> objects_;
  std::vector<ProtectedAttributeSchema> schemas_;
  CoordMode mode_;
  std::unordered_map<std::string, std::size_t> index_;
  std::size_t hot_count_ = 0;
};

double euclidean_distance(Coord a, Coord b);
double haversine_km(Coord a, Coord b);

struct IngestConfig {
  std::string id_col = "id";
  std::string x_col = "x";
  std::string y_col = "y";
  std::string hot_col = "hot";
  std::vector<std::string> protected_cols;
  CoordMode coord_mode = CoordMode::kPlanar;
  char delimiter = ',';
  /// Explicit category orders per protected column; others use first
  /// appearance order.
  std::map<std::string, std::vector<std::string>> category_orders;
};

/// Reads `key = value` lines (`#` comments). Recognised keys: id_col, x_col,
/// y_col, hot_col, protected_cols (comma list), coords (planar|geo),
/// delimiter, and order.<column> (comma list).
IngestConfig load_ingest_config(const std::filesystem::path& path);

Dataset load_csv(const std::filesystem::path& path, const IngestConfig& config);
Dataset parse_csv(std::string_view text, const IngestConfig& config);

/// Writes the dataset using the column names of `config`, so that
/// load_csv(path, config) reproduces it exactly.
void write_csv(const Dataset& dataset, const std::filesystem::path& path,
               const IngestConfig& config);
std::string format_csv(const Dataset& dataset, const IngestConfig& config);

struct CategoricalDistribution {
  std::string schema;
  std::vector<double> probabilities;
};

/// Category proportions of `ids` (treated as a set) on one protected
/// attribute.
CategoricalDistribution distribution(const Dataset& dataset,
                                     std::span<const std::string> ids,
                                     std::size_t attribute);
CategoricalDistribution distribution_of_indices(
    const Dataset& dataset, std::span<const std::size_t> indices,
    std::size_t attribute);
/// probabilities[c] = counts[c] / total.
CategoricalDistribution distribution_from_counts(
    std::string schema, std::span<const std::size_t> counts,
    std::size_t total);

}  // namespace fish
