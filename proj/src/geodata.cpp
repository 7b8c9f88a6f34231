#include "fish/geodata.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "fish/error.hpp"
#include "text_util.hpp"

namespace fish {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kSchema: return "schema error";
    case ErrorKind::kValue: return "value error";
    case ErrorKind::kIntegrity: return "integrity error";
    case ErrorKind::kDomain: return "domain error";
    case ErrorKind::kCapacity: return "capacity error";
    case ErrorKind::kConfig: return "config error";
  }
  return "error";
}

std::size_t ProtectedAttributeSchema::find(std::string_view label) const {
  auto it = std::find(categories.begin(), categories.end(), label);
  return static_cast<std::size_t>(it - categories.begin());
}

Dataset::Dataset(std::vector<DataObject> objects,
                 std::vector<ProtectedAttributeSchema> schemas, CoordMode mode)
    : objects_(std::move(objects)), schemas_(std::move(schemas)), mode_(mode) {
  if (objects_.empty()) fail(ErrorKind::kDomain, "dataset is empty");
  for (const auto& schema : schemas_) {
    if (schema.categories.empty()) {
      fail(ErrorKind::kSchema,
           "protected attribute '" + schema.name + "' has no categories");
    }
    std::vector<std::string> sorted = schema.categories;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      fail(ErrorKind::kSchema, "protected attribute '" + schema.name +
                                   "' has duplicate category labels");
    }
  }
  index_.reserve(objects_.size());
  for (std::size_t i = 0; i < objects_.size(); ++i) {
    const DataObject& obj = objects_[i];
    if (obj.hotness > 1) {
      fail(ErrorKind::kValue, "object '" + obj.id + "' has hotness outside {0,1}");
    }
    if (obj.protected_values.size() != schemas_.size()) {
      fail(ErrorKind::kSchema, "object '" + obj.id +
                                   "' does not match the protected schema");
    }
    for (std::size_t a = 0; a < schemas_.size(); ++a) {
      if (obj.protected_values[a] >= schemas_[a].size()) {
        fail(ErrorKind::kValue, "object '" + obj.id +
                                    "' has an invalid category for '" +
                                    schemas_[a].name + "'");
      }
    }
    if (!std::isfinite(obj.coords.x) || !std::isfinite(obj.coords.y)) {
      fail(ErrorKind::kValue, "object '" + obj.id + "' has non-finite coordinates");
    }
    if (mode_ == CoordMode::kGeographic &&
        (std::abs(obj.coords.x) > 90.0 || std::abs(obj.coords.y) > 180.0)) {
      fail(ErrorKind::kValue, "object '" + obj.id + "' has lat/long out of range");
    }
    if (!index_.emplace(obj.id, i).second) {
      fail(ErrorKind::kIntegrity, "duplicate object id '" + obj.id + "'");
    }
    hot_count_ += obj.hotness;
  }
}

std::size_t Dataset::index_of(std::string_view id) const {
  auto it = index_.find(std::string(id));
  if (it == index_.end()) {
    fail(ErrorKind::kIntegrity, "unknown object id '" + std::string(id) + "'");
  }
  return it->second;
}

bool Dataset::contains(std::string_view id) const {
  return index_.count(std::string(id)) != 0;
}

std::size_t Dataset::schema_index(std::string_view name) const {
  for (std::size_t a = 0; a < schemas_.size(); ++a) {
    if (schemas_[a].name == name) return a;
  }
  fail(ErrorKind::kSchema, "unknown protected attribute '" + std::string(name) + "'");
}

double Dataset::distance(std::size_t i, std::size_t j) const {
  return mode_ == CoordMode::kPlanar
             ? euclidean_distance(objects_[i].coords, objects_[j].coords)
             : haversine_km(objects_[i].coords, objects_[j].coords);
}

double euclidean_distance(Coord a, Coord b) {
  return std::hypot(a.x - b.x, a.y - b.y);
}

double haversine_km(Coord a, Coord b) {
  constexpr double kRad = std::numbers::pi / 180.0;
  const double lat1 = a.x * kRad;
  const double lat2 = b.x * kRad;
  const double dlat = lat2 - lat1;
  const double dlon = (b.y - a.y) * kRad;
  const double s = std::sin(dlat / 2) * std::sin(dlat / 2) +
                   std::cos(lat1) * std::cos(lat2) * std::sin(dlon / 2) *
                       std::sin(dlon / 2);
  return 2.0 * kEarthRadiusKm * std::asin(std::min(1.0, std::sqrt(s)));
}

// ---------------------------------------------------------------------------
// Ingestion

IngestConfig load_ingest_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::kConfig, "cannot open ingest config " + path.string());
  IngestConfig config;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view view = detail::trim(line);
    if (view.empty() || view.front() == '#') continue;
    auto eq = view.find('=');
    if (eq == std::string_view::npos) {
      fail(ErrorKind::kConfig, path.string() + ":" + std::to_string(lineno) +
                                   ": expected key = value");
    }
    std::string key(detail::trim(view.substr(0, eq)));
    std::string value(detail::trim(view.substr(eq + 1)));
    if (key == "id_col") config.id_col = value;
    else if (key == "x_col") config.x_col = value;
    else if (key == "y_col") config.y_col = value;
    else if (key == "hot_col") config.hot_col = value;
    else if (key == "protected_cols") config.protected_cols = detail::split_list(value, ',');
    else if (key == "coords") {
      if (value == "planar") config.coord_mode = CoordMode::kPlanar;
      else if (value == "geo" || value == "geographic") config.coord_mode = CoordMode::kGeographic;
      else fail(ErrorKind::kConfig, "coords must be planar or geo, got '" + value + "'");
    } else if (key == "delimiter") {
      if (value == "\\t" || value == "tab") config.delimiter = '\t';
      else if (value.size() == 1) config.delimiter = value[0];
      else fail(ErrorKind::kConfig, "delimiter must be a single character");
    } else if (key.rfind("order.", 0) == 0) {
      config.category_orders[key.substr(6)] = detail::split_list(value, ',');
    } else {
      fail(ErrorKind::kConfig, "unknown ingest config key '" + key + "'");
    }
  }
  return config;
}

namespace {

std::size_t column_of(const std::vector<std::string>& header,
                      const std::string& name) {
  auto it = std::find(header.begin(), header.end(), name);
  if (it == header.end()) fail(ErrorKind::kSchema, "missing column '" + name + "'");
  return static_cast<std::size_t>(it - header.begin());
}

double parse_coord(std::string_view field, std::size_t row) {
  field = detail::trim(field);
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc() || ptr != field.data() + field.size()) {
    fail(ErrorKind::kValue, "row " + std::to_string(row) +
                                ": cannot parse coordinate '" + std::string(field) + "'");
  }
  return value;
}

}  // namespace

Dataset parse_csv(std::string_view text, const IngestConfig& config) {
  // Leading '#' lines carry provenance metadata.
  while (!text.empty() && text.front() == '#') {
    auto nl = text.find('\n');
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
  }
  auto rows = detail::parse_delimited(text, config.delimiter);
  if (rows.empty()) fail(ErrorKind::kSchema, "CSV has no header row");
  const auto& header = rows.front();
  if (config.protected_cols.empty()) {
    fail(ErrorKind::kConfig, "at least one protected attribute column is required");
  }
  const std::size_t id_c = column_of(header, config.id_col);
  const std::size_t x_c = column_of(header, config.x_col);
  const std::size_t y_c = column_of(header, config.y_col);
  const std::size_t hot_c = column_of(header, config.hot_col);
  std::vector<std::size_t> prot_c;
  std::vector<ProtectedAttributeSchema> schemas;
  std::vector<bool> fixed_order;
  for (const auto& col : config.protected_cols) {
    prot_c.push_back(column_of(header, col));
    ProtectedAttributeSchema schema{col, {}};
    auto order = config.category_orders.find(col);
    fixed_order.push_back(order != config.category_orders.end());
    if (fixed_order.back()) schema.categories = order->second;
    schemas.push_back(std::move(schema));
  }
  for (const auto& [col, order] : config.category_orders) {
    if (std::find(config.protected_cols.begin(), config.protected_cols.end(), col) ==
        config.protected_cols.end()) {
      fail(ErrorKind::kConfig, "category order given for non-protected column '" + col + "'");
    }
  }

  std::vector<DataObject> objects;
  objects.reserve(rows.size() - 1);
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& row = rows[r];
    if (row.size() == 1 && detail::trim(row[0]).empty()) continue;  // blank line
    if (row.size() != header.size()) {
      fail(ErrorKind::kSchema, "row " + std::to_string(r) + " has " +
                                   std::to_string(row.size()) + " fields, header has " +
                                   std::to_string(header.size()));
    }
    DataObject obj;
    obj.id = row[id_c];
    if (obj.id.empty()) fail(ErrorKind::kValue, "row " + std::to_string(r) + ": empty id");
    obj.coords = {parse_coord(row[x_c], r), parse_coord(row[y_c], r)};
    std::string_view hot = detail::trim(row[hot_c]);
    if (hot == "0") obj.hotness = 0;
    else if (hot == "1") obj.hotness = 1;
    else fail(ErrorKind::kValue, "row " + std::to_string(r) + ": hotness '" +
                                     std::string(hot) + "' is not 0 or 1");
    for (std::size_t a = 0; a < prot_c.size(); ++a) {
      const std::string& label = row[prot_c[a]];
      if (detail::trim(label).empty()) {
        fail(ErrorKind::kValue, "row " + std::to_string(r) + ": missing value for '" +
                                    schemas[a].name + "'");
      }
      std::size_t c = schemas[a].find(label);
      if (c == schemas[a].size()) {
        if (fixed_order[a]) {
          fail(ErrorKind::kValue, "row " + std::to_string(r) + ": category '" + label +
                                      "' not in configured order for '" + schemas[a].name + "'");
        }
        schemas[a].categories.push_back(label);
      }
      obj.protected_values.push_back(static_cast<std::uint32_t>(c));
    }
    objects.push_back(std::move(obj));
  }
  return Dataset(std::move(objects), std::move(schemas), config.coord_mode);
}

Dataset load_csv(const std::filesystem::path& path, const IngestConfig& config) {
  return parse_csv(detail::read_file(path), config);
}

std::string format_csv(const Dataset& dataset, const IngestConfig& config) {
  std::ostringstream out;
  const char d = config.delimiter;
  std::vector<std::string> header = {config.id_col, config.x_col, config.y_col,
                                     config.hot_col};
  for (const auto& schema : dataset.schemas()) header.push_back(schema.name);
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (i) out << d;
    out << detail::quote_field(header[i], d);
  }
  out << '\n';
  for (const auto& obj : dataset.objects()) {
    out << detail::quote_field(obj.id, d) << d << detail::format_double(obj.coords.x)
        << d << detail::format_double(obj.coords.y) << d << int(obj.hotness);
    for (std::size_t a = 0; a < dataset.schemas().size(); ++a) {
      out << d
          << detail::quote_field(
                 dataset.schemas()[a].categories[obj.protected_values[a]], d);
    }
    out << '\n';
  }
  return out.str();
}

void write_csv(const Dataset& dataset, const std::filesystem::path& path,
               const IngestConfig& config) {
  detail::write_file(path, format_csv(dataset, config));
}

// ---------------------------------------------------------------------------
// Distributions

CategoricalDistribution distribution_from_counts(std::string schema,
                                                 std::span<const std::size_t> counts,
                                                 std::size_t total) {
  if (total == 0) fail(ErrorKind::kDomain, "distribution of an empty population");
  CategoricalDistribution dist{std::move(schema), {}};
  dist.probabilities.resize(counts.size());
  const double denom = static_cast<double>(total);
  for (std::size_t c = 0; c < counts.size(); ++c) {
    dist.probabilities[c] = static_cast<double>(counts[c]) / denom;
  }
  return dist;
}

CategoricalDistribution distribution_of_indices(const Dataset& dataset,
                                                std::span<const std::size_t> indices,
                                                std::size_t attribute) {
  if (attribute >= dataset.schemas().size()) {
    fail(ErrorKind::kDomain, "protected attribute index out of range");
  }
  const auto& schema = dataset.schemas()[attribute];
  std::vector<bool> seen(dataset.size(), false);
  std::vector<std::size_t> counts(schema.size(), 0);
  std::size_t total = 0;
  for (std::size_t i : indices) {
    if (i >= dataset.size()) fail(ErrorKind::kIntegrity, "object index out of range");
    if (seen[i]) continue;
    seen[i] = true;
    ++counts[dataset[i].protected_values[attribute]];
    ++total;
  }
  return distribution_from_counts(schema.name, counts, total);
}

CategoricalDistribution distribution(const Dataset& dataset,
                                     std::span<const std::string> ids,
                                     std::size_t attribute) {
  if (ids.empty()) fail(ErrorKind::kDomain, "distribution of an empty id set");
  std::vector<std::size_t> indices;
  indices.reserve(ids.size());
  for (const auto& id : ids) indices.push_back(dataset.index_of(id));
  return distribution_of_indices(dataset, indices, attribute);
}

}  // namespace fish
