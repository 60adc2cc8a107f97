#include "serial.hpp"

#include <limits>
#include <numbers>

#include "riscov/digest.hpp"

namespace riscov::detail {

namespace {

ojson vec3_to_json(const Vec3& v) { return ojson::array({v.x, v.y, v.z}); }

Vec3 vec3_from_json(const ojson& j) {
    if (!j.is_array() || j.size() != 3) throw config_error("expected a 3-element coordinate array");
    return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

ojson complex_to_json(const std::complex<double>& c) { return ojson::array({c.real(), c.imag()}); }

std::complex<double> complex_from_json(const ojson& j) {
    if (!j.is_array() || j.size() != 2) throw config_error("expected a [re, im] pair");
    return {j[0].get<double>(), j[1].get<double>()};
}

} // namespace

ojson scenario_to_json(const ScenarioConfig& s) {
    ojson j;
    j["frequency_hz"] = s.frequency_hz;
    j["tx_power_w"] = s.tx_power_w;
    j["noise_power_w"] = s.noise_power_w;
    j["ris_element_gain"] = s.g_ris;
    j["bs_antenna_gain"] = s.g_tx;
    j["ue_antenna_gain"] = s.g_rx;
    j["radiation_exponent"] = s.radiation_exponent;
    j["quantization"] = quantization_to_json(s.quantization);
    j["seed"] = s.rng_seed;
    j["initial_weight"] = s.w_initial;
    j["max_epochs"] = s.max_epochs;
    return j;
}

ScenarioConfig scenario_from_json(const ojson& j) {
    ScenarioConfig s;
    s.frequency_hz = j.at("frequency_hz").get<double>();
    s.tx_power_w = j.at("tx_power_w").get<double>();
    s.noise_power_w = j.at("noise_power_w").get<double>();
    s.g_ris = j.at("ris_element_gain").get<double>();
    s.g_tx = j.at("bs_antenna_gain").get<double>();
    s.g_rx = j.at("ue_antenna_gain").get<double>();
    s.radiation_exponent = j.at("radiation_exponent").get<double>();
    s.quantization = quantization_from_json(j.at("quantization"));
    s.rng_seed = j.at("seed").get<std::uint64_t>();
    s.w_initial = j.at("initial_weight").get<double>();
    s.max_epochs = j.at("max_epochs").get<int>();
    s.validate();
    return s;
}

ojson quantization_to_json(const Quantization& q) {
    if (q.is_continuous()) return ojson("continuous");
    return ojson(q.bit_count());
}

Quantization quantization_from_json(const ojson& j) {
    if (j.is_string()) {
        if (j.get<std::string>() == "continuous") return Quantization::continuous();
        throw config_error("quantization must be \"continuous\" or a positive bit count");
    }
    if (j.is_number_integer()) return Quantization::bits(j.get<int>());
    throw config_error("quantization must be \"continuous\" or a positive bit count");
}

ojson panel_to_json(const PanelSpec& p) {
    ojson j;
    j["center"] = vec3_to_json(p.center);
    j["rows"] = p.rows;
    j["cols"] = p.cols;
    j["spacing"] = p.spacing;
    j["normal"] = vec3_to_json(p.normal);
    return j;
}

PanelSpec panel_from_json(const ojson& j, double default_spacing) {
    PanelSpec p;
    p.center = vec3_from_json(j.at("center"));
    p.rows = j.at("rows").get<int>();
    p.cols = j.at("cols").get<int>();
    p.spacing = j.contains("spacing") ? j.at("spacing").get<double>() : default_spacing;
    if (j.contains("normal")) p.normal = vec3_from_json(j.at("normal"));
    return p;
}

ojson shape_to_json(const Shape& s) {
    return std::visit(
        [](const auto& v) -> ojson {
            using T = std::decay_t<decltype(v)>;
            ojson j;
            if constexpr (std::is_same_v<T, Rectangle>) {
                j["kind"] = "rectangle";
                j["x"] = ojson::array({v.x_min, v.x_max});
                j["y"] = ojson::array({v.y_min, v.y_max});
            } else if constexpr (std::is_same_v<T, Sector>) {
                j["kind"] = "sector";
                j["r"] = ojson::array({v.r_min, v.r_max});
                j["azimuth_rad"] = ojson::array({v.az_min_rad, v.az_max_rad});
                j["origin"] = ojson::array({v.origin[0], v.origin[1]});
            } else if constexpr (std::is_same_v<T, Polygon>) {
                j["kind"] = "polygon";
                auto verts = ojson::array();
                for (const auto& p : v.vertices) verts.push_back(ojson::array({p[0], p[1]}));
                j["vertices"] = verts;
            } else {
                j["kind"] = "union";
                auto parts = ojson::array();
                for (const auto& p : v.parts) parts.push_back(shape_to_json(p));
                j["parts"] = parts;
            }
            return j;
        },
        s.value);
}

Shape shape_from_json(const ojson& j) {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "rectangle") {
        Rectangle r;
        r.x_min = j.at("x")[0].get<double>();
        r.x_max = j.at("x")[1].get<double>();
        r.y_min = j.at("y")[0].get<double>();
        r.y_max = j.at("y")[1].get<double>();
        return Shape{r};
    }
    if (kind == "sector") {
        Sector s;
        s.r_min = j.at("r")[0].get<double>();
        s.r_max = j.at("r")[1].get<double>();
        if (j.contains("azimuth_rad")) {
            s.az_min_rad = j.at("azimuth_rad")[0].get<double>();
            s.az_max_rad = j.at("azimuth_rad")[1].get<double>();
        } else if (j.contains("azimuth_deg")) {
            constexpr double deg = std::numbers::pi / 180.0;
            s.az_min_rad = j.at("azimuth_deg")[0].get<double>() * deg;
            s.az_max_rad = j.at("azimuth_deg")[1].get<double>() * deg;
        } else {
            throw config_error("sector needs azimuth_rad or azimuth_deg");
        }
        if (j.contains("origin")) {
            s.origin = {j.at("origin")[0].get<double>(), j.at("origin")[1].get<double>()};
        } else {
            // Resolved later by the configuration loader; a bare load from a
            // codebook file always carries the origin.
            s.origin = {std::numeric_limits<double>::quiet_NaN(),
                        std::numeric_limits<double>::quiet_NaN()};
        }
        return Shape{s};
    }
    if (kind == "polygon") {
        Polygon p;
        for (const auto& v : j.at("vertices"))
            p.vertices.push_back({v[0].get<double>(), v[1].get<double>()});
        return Shape{p};
    }
    if (kind == "union") {
        ShapeUnion u;
        for (const auto& part : j.at("parts")) u.parts.push_back(shape_from_json(part));
        return Shape{u};
    }
    throw config_error("unknown shape kind '" + kind + "'");
}

ojson region_to_json(const Region& r) {
    ojson j;
    j["id"] = r.id;
    j["z"] = r.z;
    j["step"] = r.sample_step;
    j["shape"] = shape_to_json(r.shape);
    return j;
}

Region region_from_json(const ojson& j) {
    Region r;
    r.id = j.at("id").get<std::string>();
    if (j.contains("z")) r.z = j.at("z").get<double>();
    if (j.contains("step")) r.sample_step = j.at("step").get<double>();
    r.shape = shape_from_json(j.at("shape"));
    return r;
}

ojson bs_to_json(const BsArray& bs) {
    ojson j;
    auto antennas = ojson::array();
    for (const auto& p : bs.antenna_positions) antennas.push_back(vec3_to_json(p));
    j["antennas"] = antennas;
    auto codewords = ojson::array();
    for (const auto& col : bs.codebook) {
        auto entries = ojson::array();
        for (const auto& c : col) entries.push_back(complex_to_json(c));
        codewords.push_back(entries);
    }
    j["codewords"] = codewords;
    return j;
}

BsArray bs_from_json(const ojson& j) {
    BsArray bs;
    for (const auto& p : j.at("antennas")) bs.antenna_positions.push_back(vec3_from_json(p));
    for (const auto& col : j.at("codewords")) {
        std::vector<std::complex<double>> entries;
        for (const auto& c : col) entries.push_back(complex_from_json(c));
        bs.codebook.push_back(std::move(entries));
    }
    bs.validate();
    return bs;
}

std::string setup_digest(const ScenarioConfig& scenario, const std::vector<PanelSpec>& panels,
                         const BsArray& bs, const std::vector<Region>& regions) {
    ojson j;
    j["scenario"] = scenario_to_json(scenario);
    auto panel_arr = ojson::array();
    for (const auto& p : panels) panel_arr.push_back(panel_to_json(p));
    j["panels"] = panel_arr;
    j["bs"] = bs_to_json(bs);
    auto region_arr = ojson::array();
    for (const auto& r : regions) region_arr.push_back(region_to_json(r));
    j["regions"] = region_arr;
    return fnv1a64_hex(j.dump());
}

} // namespace riscov::detail
