#pragma once

#include <nlohmann/json.hpp>

#include "fish/eval.hpp"
#include "fish/fish.hpp"
#include "fish/scan.hpp"

namespace fish {

// nlohmann::json ADL hooks. Candidates serialise flat as
// {"ranks": [...], "n": ..., "f": ...}.
void to_json(nlohmann::json& j, const NFPoint& p);
void to_json(nlohmann::json& j, const Candidate& c);
void to_json(nlohmann::json& j, const DpeResult& r);
void to_json(nlohmann::json& j, const HotSpot& s);
void to_json(nlohmann::json& j, const RankedHotSpotList& list);
void to_json(nlohmann::json& j, const BeamLevel& level);
void to_json(nlohmann::json& j, const NormalizedSpace& norm);
void to_json(nlohmann::json& j, const MetricReport& report);
void to_json(nlohmann::json& j, const ProtectedAttributeSchema& schema);

/// Copy of `j` without fields that legitimately differ between otherwise
/// identical runs: runtime_seconds and threads.
nlohmann::json strip_volatile(const nlohmann::json& j);

}  // namespace fish
