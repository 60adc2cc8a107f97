#pragma once

// Internal JSON (de)serialization shared by the codebook format and the
// scenario configuration loader. Key order is fixed by insertion order so
// serialized documents are byte-reproducible.

#include <nlohmann/json.hpp>

#include "riscov/geometry.hpp"
#include "riscov/scenario.hpp"

namespace riscov::detail {

using ojson = nlohmann::ordered_json;

ojson scenario_to_json(const ScenarioConfig& s);
ScenarioConfig scenario_from_json(const ojson& j);

ojson quantization_to_json(const Quantization& q);
Quantization quantization_from_json(const ojson& j);

ojson panel_to_json(const PanelSpec& p);
PanelSpec panel_from_json(const ojson& j, double default_spacing);

ojson shape_to_json(const Shape& s);
Shape shape_from_json(const ojson& j);

ojson region_to_json(const Region& r);
Region region_from_json(const ojson& j);

ojson bs_to_json(const BsArray& bs);
BsArray bs_from_json(const ojson& j);

/// Canonical digest over everything that defines the physics of a setup
/// (scenario constants, panels, BS array, regions).
std::string setup_digest(const ScenarioConfig& scenario, const std::vector<PanelSpec>& panels,
                         const BsArray& bs, const std::vector<Region>& regions);

} // namespace riscov::detail
