#include "riscov/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "serial.hpp"

namespace riscov {

namespace {

using detail::ojson;

ScenarioConfig parse_scenario_section(const ojson& root) {
    ScenarioConfig s; // defaults already hold the reference constants
    if (!root.contains("scenario")) return s;
    const ojson& j = root.at("scenario");

    if (j.contains("frequency_ghz")) s.frequency_hz = j.at("frequency_ghz").get<double>() * 1e9;
    if (j.contains("frequency_hz")) s.frequency_hz = j.at("frequency_hz").get<double>();
    if (j.contains("tx_power_dbm")) s.tx_power_w = dbm_to_watts(j.at("tx_power_dbm").get<double>());
    if (j.contains("noise_power_dbm"))
        s.noise_power_w = dbm_to_watts(j.at("noise_power_dbm").get<double>());
    if (j.contains("ris_element_gain")) s.g_ris = j.at("ris_element_gain").get<double>();
    if (j.contains("bs_antenna_gain")) s.g_tx = j.at("bs_antenna_gain").get<double>();
    if (j.contains("ue_antenna_gain")) s.g_rx = j.at("ue_antenna_gain").get<double>();
    if (j.contains("radiation_exponent"))
        s.radiation_exponent = j.at("radiation_exponent").get<double>();
    if (j.contains("quantization")) s.quantization = detail::quantization_from_json(j.at("quantization"));
    if (j.contains("seed")) s.rng_seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("initial_weight")) s.w_initial = j.at("initial_weight").get<double>();
    if (j.contains("max_epochs")) s.max_epochs = j.at("max_epochs").get<int>();
    s.validate();
    return s;
}

void resolve_sector_origins(Shape& shape, const std::array<double, 2>& fallback) {
    if (auto* sector = std::get_if<Sector>(&shape.value)) {
        if (std::isnan(sector->origin[0])) sector->origin = fallback;
    } else if (auto* u = std::get_if<ShapeUnion>(&shape.value)) {
        for (auto& part : u->parts) resolve_sector_origins(part, fallback);
    }
}

} // namespace

std::vector<PanelSpec> default_panels(const ScenarioConfig& scenario) {
    const double spacing = scenario.wavelength() / 2.0;
    std::vector<PanelSpec> panels;
    for (double y : {5.0, 10.0, 15.0}) {
        PanelSpec p;
        p.center = {0.0, y, 3.5};
        p.rows = 200;
        p.cols = 200;
        p.spacing = spacing;
        panels.push_back(p);
    }
    return panels;
}

BsArray default_bs(const ScenarioConfig& scenario) {
    const double half_wl = scenario.wavelength() / 2.0;
    BsArray bs;
    bs.antenna_positions = {{-5.0 - half_wl, -5.0, 10.0}, {-5.0, -5.0, 10.0}, {-5.0 + half_wl, -5.0, 10.0}};
    const double amp = 1.0 / std::sqrt(3.0);
    bs.codebook = {{{amp, 0.0}, {amp, 0.0}, {amp, 0.0}}};
    return bs;
}

SimulationSetup setup_from_string(std::string_view text) {
    ojson root;
    try {
        root = ojson::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw config_error(std::string("configuration parse error: ") + e.what());
    }

    try {
        SimulationSetup setup;
        setup.scenario = parse_scenario_section(root);

        const double default_spacing = setup.scenario.wavelength() / 2.0;
        if (root.contains("panels")) {
            for (const auto& p : root.at("panels"))
                setup.panels.push_back(detail::panel_from_json(p, default_spacing));
        } else {
            setup.panels = default_panels(setup.scenario);
        }
        if (setup.panels.empty()) throw config_error("configuration defines no panels");

        setup.bs = root.contains("bs") ? detail::bs_from_json(root.at("bs"))
                                       : default_bs(setup.scenario);
        setup.bs.validate();

        if (!root.contains("regions") || root.at("regions").empty())
            throw config_error("configuration defines no regions");
        for (const auto& r : root.at("regions"))
            setup.regions.push_back(detail::region_from_json(r));
        for (std::size_t i = 0; i < setup.regions.size(); ++i) {
            for (std::size_t l = i + 1; l < setup.regions.size(); ++l)
                if (setup.regions[i].id == setup.regions[l].id)
                    throw config_error("duplicate region id '" + setup.regions[i].id + "'");
        }

        // Sectors without an explicit origin pivot about the panel centers
        // projected onto the UE plane.
        std::array<double, 2> fallback{0.0, 0.0};
        for (const auto& p : setup.panels) {
            fallback[0] += p.center.x;
            fallback[1] += p.center.y;
        }
        fallback[0] /= static_cast<double>(setup.panels.size());
        fallback[1] /= static_cast<double>(setup.panels.size());
        for (auto& region : setup.regions) resolve_sector_origins(region.shape, fallback);

        if (root.contains("solver")) {
            const ojson& j = root.at("solver");
            if (j.contains("thresholds"))
                setup.solver.thresholds = j.at("thresholds").get<std::vector<double>>();
            if (j.contains("early_stop")) setup.solver.early_stop = j.at("early_stop").get<bool>();
            if (j.contains("early_stop_rel_tol"))
                setup.solver.early_stop_rel_tol = j.at("early_stop_rel_tol").get<double>();
        }
        if (setup.solver.thresholds.empty())
            throw config_error("solver.thresholds must not be empty");

        if (root.contains("room")) {
            const ojson& j = root.at("room");
            if (j.contains("x")) {
                setup.room.x_min = j.at("x")[0].get<double>();
                setup.room.x_max = j.at("x")[1].get<double>();
            }
            if (j.contains("y")) {
                setup.room.y_min = j.at("y")[0].get<double>();
                setup.room.y_max = j.at("y")[1].get<double>();
            }
            if (j.contains("step")) setup.room.step = j.at("step").get<double>();
            if (j.contains("z")) setup.room.z = j.at("z").get<double>();
        }

        if (root.contains("codebook_pairs")) {
            for (const auto& pair : root.at("codebook_pairs")) {
                if (!pair.is_array() || pair.size() != 2)
                    throw config_error("codebook_pairs entries must be [j, k] pairs");
                setup.codebook_pairs.emplace_back(pair[0].get<int>(), pair[1].get<int>());
            }
        }
        return setup;
    } catch (const nlohmann::json::exception& e) {
        throw config_error(std::string("malformed configuration: ") + e.what());
    }
}

SimulationSetup load_setup(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw config_error("cannot open configuration file '" + path.string() + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return setup_from_string(buf.str());
}

std::string setup_digest(const SimulationSetup& setup) {
    return detail::setup_digest(setup.scenario, setup.panels, setup.bs, setup.regions);
}

const Region& find_region(const SimulationSetup& setup, std::string_view id) {
    for (const auto& r : setup.regions)
        if (r.id == id) return r;
    throw config_error("unknown region id '" + std::string(id) + "'");
}

int region_index(const SimulationSetup& setup, std::string_view id) {
    for (std::size_t i = 0; i < setup.regions.size(); ++i)
        if (setup.regions[i].id == id) return static_cast<int>(i) + 1;
    throw config_error("unknown region id '" + std::string(id) + "'");
}

} // namespace riscov
