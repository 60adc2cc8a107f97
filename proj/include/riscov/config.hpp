#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "riscov/geometry.hpp"
#include "riscov/metrics.hpp"
#include "riscov/scenario.hpp"

namespace riscov {

struct SolverSettings {
    std::vector<double> thresholds{16.0};
    bool early_stop{false};
    double early_stop_rel_tol{1e-5};
};

/// Everything a run needs, parsed from one JSON configuration file.
/// Missing sections fall back to the reference indoor scenario: 30 GHz,
/// 44 dBm / -105 dBm, three 200x200 half-wavelength panels on the x=0 wall
/// and a three-antenna BS with a single uniform codeword.
struct SimulationSetup {
    ScenarioConfig scenario;
    std::vector<PanelSpec> panels;
    BsArray bs;
    std::vector<Region> regions;
    SolverSettings solver;
    GridSpec room;
    std::vector<std::pair<int, int>> codebook_pairs; // empty = full cross product
};

SimulationSetup setup_from_string(std::string_view text);
SimulationSetup load_setup(const std::filesystem::path& path);

/// Digest over the physics-defining sections (scenario, panels, bs,
/// regions); matches the digest embedded in codeword/codebook files.
std::string setup_digest(const SimulationSetup& setup);

const Region& find_region(const SimulationSetup& setup, std::string_view id);

/// 1-based index of the region with this id.
int region_index(const SimulationSetup& setup, std::string_view id);

std::vector<PanelSpec> default_panels(const ScenarioConfig& scenario);
BsArray default_bs(const ScenarioConfig& scenario);

} // namespace riscov
