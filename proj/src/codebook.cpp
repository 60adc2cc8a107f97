#include "riscov/codebook.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include "serial.hpp"

namespace riscov {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

} // namespace

PhaseProfile RisCodeword::to_profile() const {
    if (quant.is_continuous()) return PhaseProfile::from_angles(phases, quant);
    return PhaseProfile::from_levels(levels, quant);
}

RisCodeword RisCodeword::from_profile(const PhaseProfile& profile, int j, int k,
                                      std::uint64_t seed, int epochs, SolverMode mode) {
    RisCodeword cw;
    cw.j = j;
    cw.k = k;
    cw.seed = seed;
    cw.epochs = epochs;
    cw.mode = mode;
    cw.quant = profile.quantization();
    if (cw.quant.is_continuous()) cw.phases = profile.thetas();
    else cw.levels = profile.levels();
    return cw;
}

std::string RisCodeword::label() const {
    return "j=" + std::to_string(j) + ",k=" + std::to_string(k);
}

const RisCodeword& Codebook::find(int j, int k) const {
    for (const auto& cw : codewords)
        if (cw.j == j && cw.k == k) return cw;
    throw config_error("codebook has no codeword (j=" + std::to_string(j) +
                       ", k=" + std::to_string(k) + ")");
}

std::uint64_t derive_pair_seed(std::uint64_t base_seed, int j, int k) {
    const std::uint64_t a = splitmix64(base_seed ^ (0x9E3779B97F4A7C15ull * static_cast<std::uint64_t>(j)));
    return splitmix64(a ^ (0xC2B2AE3D27D4EB4Full * static_cast<std::uint64_t>(k)));
}

Codebook generate_codebook(const ScenarioConfig& scenario, const std::vector<PanelSpec>& panels,
                           const BsArray& bs, const std::vector<Region>& regions, SolverMode mode,
                           unsigned jobs, std::span<const std::pair<int, int>> pairs,
                           const CodebookProgressFn& progress) {
    scenario.validate();
    bs.validate();
    if (regions.empty()) throw config_error("codebook generation needs at least one region");

    std::vector<std::pair<int, int>> pair_list(pairs.begin(), pairs.end());
    if (pair_list.empty()) {
        for (int j = 1; j <= static_cast<int>(bs.num_codewords()); ++j)
            for (int k = 1; k <= static_cast<int>(regions.size()); ++k)
                pair_list.emplace_back(j, k);
    }
    for (const auto& [j, k] : pair_list) {
        if (j < 1 || j > static_cast<int>(bs.num_codewords()))
            throw config_error("codebook pair references BS codeword " + std::to_string(j) +
                               " outside [1, " + std::to_string(bs.num_codewords()) + "]");
        if (k < 1 || k > static_cast<int>(regions.size()))
            throw config_error("codebook pair references region " + std::to_string(k) +
                               " outside [1, " + std::to_string(regions.size()) + "]");
    }
    std::sort(pair_list.begin(), pair_list.end());
    if (std::adjacent_find(pair_list.begin(), pair_list.end()) != pair_list.end())
        throw config_error("duplicate (j, k) pair in codebook request");

    const ElementLayout layout = build_layout(panels, bs);

    std::vector<RisCodeword> results(pair_list.size());
    std::atomic<std::size_t> next{0};
    std::mutex failure_mutex;
    std::string failure;
    std::mutex progress_mutex;

    const auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= pair_list.size()) return;
            const auto [j, k] = pair_list[i];
            try {
                const Region& region = regions[static_cast<std::size_t>(k - 1)];
                const SamplePointSet samples = sample_region(region, scenario.w_initial);
                const EffectiveCoefficients coeffs =
                    effective_coeffs(layout, bs, j, samples, scenario);
                const std::uint64_t seed = derive_pair_seed(scenario.rng_seed, j, k);
                PhaseProfile initial =
                    PhaseProfile::random(layout.size(), scenario.quantization, seed);
                SolveResult solved = solve(mode, coeffs, scenario, {}, std::move(initial));
                results[i] = RisCodeword::from_profile(
                    solved.phases, j, k, seed, static_cast<int>(solved.trace.epochs.size()), mode);
                if (progress) {
                    const std::lock_guard<std::mutex> lock(progress_mutex);
                    progress(results[i], solved.trace.epochs.back().mean_se_bps_hz);
                }
            } catch (const std::exception& e) {
                const std::lock_guard<std::mutex> lock(failure_mutex);
                if (failure.empty())
                    failure = "codeword (j=" + std::to_string(j) + ", k=" + std::to_string(k) +
                              ") failed: " + e.what();
                next.store(pair_list.size()); // stop handing out new pairs
                return;
            }
        }
    };

    const unsigned workers = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(pair_list.size())));
    if (workers == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    if (!failure.empty()) throw config_error(failure);

    Codebook book;
    book.scenario = scenario;
    book.quant = scenario.quantization;
    book.panels = panels;
    book.regions = regions;
    book.bs = bs;
    book.codewords = std::move(results);
    book.scenario_digest = detail::setup_digest(scenario, panels, bs, regions);
    return book;
}

std::string codebook_to_json(const Codebook& book) {
    detail::ojson j;
    j["format_version"] = 1;
    j["scenario_digest"] = book.scenario_digest;
    j["scenario"] = detail::scenario_to_json(book.scenario);
    j["quantization"] = detail::quantization_to_json(book.quant);
    auto panels = detail::ojson::array();
    for (const auto& p : book.panels) panels.push_back(detail::panel_to_json(p));
    j["panels"] = panels;
    auto regions = detail::ojson::array();
    for (const auto& r : book.regions) regions.push_back(detail::region_to_json(r));
    j["regions"] = regions;
    j["bs_codebook"] = detail::bs_to_json(book.bs);
    auto codewords = detail::ojson::array();
    for (const auto& cw : book.codewords) {
        detail::ojson c;
        c["j"] = cw.j;
        c["k"] = cw.k;
        c["seed"] = cw.seed;
        c["epochs"] = cw.epochs;
        c["mode"] = to_string(cw.mode);
        if (cw.quant.is_continuous()) c["phases"] = cw.phases;
        else c["levels"] = cw.levels;
        codewords.push_back(std::move(c));
    }
    j["codewords"] = std::move(codewords);
    return j.dump(2);
}

Codebook codebook_from_json(std::string_view text) {
    detail::ojson j;
    try {
        j = detail::ojson::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw config_error(std::string("codebook parse error: ") + e.what());
    }
    try {
        if (j.at("format_version").get<int>() != 1)
            throw config_error("unsupported codebook format version");
        Codebook book;
        book.scenario_digest = j.at("scenario_digest").get<std::string>();
        book.scenario = detail::scenario_from_json(j.at("scenario"));
        book.quant = detail::quantization_from_json(j.at("quantization"));
        if (!(book.quant == book.scenario.quantization))
            throw config_error("codebook quantization disagrees with the embedded scenario");
        for (const auto& p : j.at("panels")) book.panels.push_back(detail::panel_from_json(p, 0.0));
        for (const auto& r : j.at("regions")) book.regions.push_back(detail::region_from_json(r));
        book.bs = detail::bs_from_json(j.at("bs_codebook"));

        std::size_t total_elements = 0;
        for (const auto& p : book.panels)
            total_elements += static_cast<std::size_t>(p.rows) * static_cast<std::size_t>(p.cols);

        for (const auto& c : j.at("codewords")) {
            RisCodeword cw;
            cw.j = c.at("j").get<int>();
            cw.k = c.at("k").get<int>();
            cw.seed = c.at("seed").get<std::uint64_t>();
            cw.epochs = c.at("epochs").get<int>();
            cw.mode = solver_mode_from_string(c.at("mode").get<std::string>());
            cw.quant = book.quant;
            if (book.quant.is_continuous()) {
                cw.phases = c.at("phases").get<std::vector<double>>();
            } else {
                cw.levels = c.at("levels").get<std::vector<std::uint32_t>>();
                for (auto level : cw.levels)
                    if (level >= book.quant.num_levels())
                        throw config_error("codeword " + cw.label() + " has level " +
                                           std::to_string(level) + " out of range for q=" +
                                           std::to_string(book.quant.bit_count()));
            }
            if (cw.num_elements() != total_elements)
                throw config_error("codeword " + cw.label() + " has " +
                                   std::to_string(cw.num_elements()) + " phases, panels define " +
                                   std::to_string(total_elements) + " elements");
            book.codewords.push_back(std::move(cw));
        }
        std::vector<std::pair<int, int>> seen;
        for (const auto& cw : book.codewords) seen.emplace_back(cw.j, cw.k);
        std::sort(seen.begin(), seen.end());
        if (std::adjacent_find(seen.begin(), seen.end()) != seen.end())
            throw config_error("codebook contains duplicate (j, k) codewords");
        return book;
    } catch (const nlohmann::json::exception& e) {
        throw config_error(std::string("malformed codebook document: ") + e.what());
    }
}

void save_codebook(const Codebook& book, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw config_error("cannot open '" + path.string() + "' for writing");
    const std::string text = codebook_to_json(book);
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    out.put('\n');
    if (!out) throw config_error("failed to write codebook to '" + path.string() + "'");
}

Codebook load_codebook(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw config_error("cannot open codebook file '" + path.string() + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return codebook_from_json(buf.str());
}

} // namespace riscov
