#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "riscov/codebook.hpp"
#include "riscov/config.hpp"
#include "riscov/digest.hpp"
#include "riscov/errors.hpp"
#include "riscov/io.hpp"
#include "riscov/version.hpp"

namespace {

using namespace riscov;

struct CommonArgs {
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::vector<double> thresholds;
};

SimulationSetup load_with_overrides(const CommonArgs& args) {
    SimulationSetup setup = load_setup(args.config_path);
    if (args.seed) setup.scenario.rng_seed = *args.seed;
    if (!args.thresholds.empty()) setup.solver.thresholds = args.thresholds;
    return setup;
}

RunManifest begin_manifest(const std::string& command, const CommonArgs& args,
                           std::uint64_t effective_seed) {
    RunManifest m;
    m.command = command;
    m.tool_version = kVersion;
    m.config_digest = fnv1a64_hex(read_text_file(args.config_path));
    m.seed = effective_seed;
    m.started_utc = utc_timestamp();
    return m;
}

void finish_manifest(RunManifest& m, const std::filesystem::path& primary_output) {
    m.finished_utc = utc_timestamp();
    write_text_file(primary_output.string() + ".manifest.json", manifest_json(m) + "\n");
}

Codebook single_codeword_book(const SimulationSetup& setup, RisCodeword codeword) {
    Codebook book;
    book.scenario = setup.scenario;
    book.quant = setup.scenario.quantization;
    book.panels = setup.panels;
    book.regions = setup.regions;
    book.bs = setup.bs;
    book.scenario_digest = setup_digest(setup);
    book.codewords.push_back(std::move(codeword));
    return book;
}

void print_report(const CoverageReport& report) {
    std::cout << report_text(report);
}

int cmd_solve(const CommonArgs& common, const std::string& region_id, int bs_codeword,
              const std::string& mode_name, const std::string& out_codeword,
              const std::string& out_trace) {
    SimulationSetup setup = load_with_overrides(common);
    RunManifest manifest = begin_manifest("solve", common, setup.scenario.rng_seed);
    const SolverMode mode = solver_mode_from_string(mode_name);

    const int k = region_index(setup, region_id);
    const Region& region = find_region(setup, region_id);

    const ElementLayout layout = build_layout(setup.panels, setup.bs);
    const SamplePointSet samples = sample_region(region, setup.scenario.w_initial);
    const EffectiveCoefficients coeffs =
        effective_coeffs(layout, setup.bs, bs_codeword, samples, setup.scenario);

    const std::uint64_t pair_seed = derive_pair_seed(setup.scenario.rng_seed, bs_codeword, k);
    PhaseProfile initial =
        PhaseProfile::random(layout.size(), setup.scenario.quantization, pair_seed);

    SolveControls controls;
    controls.early_stop = setup.solver.early_stop;
    controls.early_stop_rel_tol = setup.solver.early_stop_rel_tol;
    SolveResult result = solve(mode, coeffs, setup.scenario, setup.solver.thresholds,
                               std::move(initial), controls);

    RisCodeword codeword =
        RisCodeword::from_profile(result.phases, bs_codeword, k, pair_seed,
                                  static_cast<int>(result.trace.epochs.size()), mode);
    save_codebook(single_codeword_book(setup, std::move(codeword)), out_codeword);
    write_text_file(out_trace, trace_csv(result.trace));

    CoverageReport report = evaluate_region(samples, coeffs, result.phases,
                                            setup.solver.thresholds, setup.scenario);
    report.region_id = region_id;
    report.codeword_id = "j=" + std::to_string(bs_codeword) + ",k=" + std::to_string(k);
    print_report(report);
    std::cout << "codeword: " << out_codeword << "\ntrace: " << out_trace << "\n";

    manifest.outputs = {out_codeword, out_trace};
    finish_manifest(manifest, out_codeword);
    return 0;
}

int cmd_codebook(const CommonArgs& common, const std::string& mode_name, unsigned jobs,
                 const std::string& out_path) {
    SimulationSetup setup = load_with_overrides(common);
    RunManifest manifest = begin_manifest("codebook", common, setup.scenario.rng_seed);
    const SolverMode mode = solver_mode_from_string(mode_name);

    const auto progress = [](const RisCodeword& cw, double mean_se) {
        std::cout << "solved codeword (" << cw.label() << "), mean SE " << format_double(mean_se)
                  << " bps/Hz\n";
    };
    const Codebook book =
        generate_codebook(setup.scenario, setup.panels, setup.bs, setup.regions, mode, jobs,
                          setup.codebook_pairs, progress);
    save_codebook(book, out_path);
    std::cout << "codebook with " << book.codewords.size() << " codewords: " << out_path << "\n";

    manifest.outputs = {out_path};
    finish_manifest(manifest, out_path);
    return 0;
}

int cmd_evaluate(const CommonArgs& common, const std::string& codeword_path, int j_select,
                 int k_select, unsigned jobs, const std::string& out_heatmap,
                 const std::string& out_cdf, const std::string& out_report,
                 const std::string& out_svg) {
    SimulationSetup setup = load_with_overrides(common);
    RunManifest manifest = begin_manifest("evaluate", common, setup.scenario.rng_seed);

    const Codebook book = load_codebook(codeword_path);
    if (book.codewords.empty()) throw config_error("codeword file contains no codewords");
    const RisCodeword& cw =
        (j_select > 0 && k_select > 0) ? book.find(j_select, k_select) : book.codewords.front();

    const std::string config_digest = setup_digest(setup);
    if (config_digest != book.scenario_digest) {
        std::cerr << "warning: scenario digest mismatch (config " << config_digest
                  << ", codeword file " << book.scenario_digest
                  << "); evaluating under the configuration's physics\n";
    }

    const ElementLayout layout = build_layout(setup.panels, setup.bs);
    if (layout.size() != cw.num_elements())
        throw config_error("codeword has " + std::to_string(cw.num_elements()) +
                           " phases but the configuration layout has " +
                           std::to_string(layout.size()) + " elements");

    if (cw.k < 1 || static_cast<std::size_t>(cw.k) > book.regions.size())
        throw config_error("codeword region index k=" + std::to_string(cw.k) +
                           " not present in the codeword file");
    const Region& region = book.regions[static_cast<std::size_t>(cw.k - 1)];

    const PhaseProfile profile = cw.to_profile();
    const SamplePointSet samples = sample_region(region, setup.scenario.w_initial);
    const EffectiveCoefficients coeffs =
        effective_coeffs(layout, setup.bs, cw.j, samples, setup.scenario);

    CoverageReport report =
        evaluate_region(samples, coeffs, profile, setup.solver.thresholds, setup.scenario);
    report.region_id = region.id;
    report.codeword_id = cw.label();

    const HeatmapResult map =
        heatmap(setup.room, layout, setup.bs, cw.j, profile, setup.scenario, jobs);

    write_text_file(out_heatmap, heatmap_csv(map));
    write_text_file(out_cdf, cdf_csv(cdf(report.se_samples)));
    write_text_file(out_report, report_text(report));
    manifest.outputs = {out_heatmap, out_cdf, out_report};
    if (!out_svg.empty()) {
        write_text_file(out_svg, heatmap_svg(map));
        manifest.outputs.push_back(out_svg);
    }

    print_report(report);
    std::cout << "heatmap: " << out_heatmap << "\ncdf: " << out_cdf << "\nreport: " << out_report
              << "\n";
    finish_manifest(manifest, out_report);
    return 0;
}

int cmd_sweep(const CommonArgs& common, const std::string& kind,
              const std::vector<std::string>& levels, const std::string& region_id,
              int bs_codeword, const std::string& mode_name, const std::string& out_path) {
    SimulationSetup setup = load_with_overrides(common);
    RunManifest manifest = begin_manifest("sweep", common, setup.scenario.rng_seed);
    const SolverMode mode = solver_mode_from_string(mode_name);
    if (levels.empty()) throw config_error("sweep needs at least one level");

    const std::string rid = region_id.empty() ? setup.regions.front().id : region_id;
    const int k = region_index(setup, rid);
    const Region& region = find_region(setup, rid);

    std::vector<CoverageReport> reports;
    for (const std::string& level : levels) {
        SimulationSetup variant = setup;
        if (kind == "elements") {
            const long count = std::stol(level);
            const long side = std::lround(std::sqrt(static_cast<double>(count)));
            if (side * side != count || count <= 0)
                throw config_error("element level " + level + " is not a perfect square");
            for (auto& panel : variant.panels) {
                panel.rows = static_cast<int>(side);
                panel.cols = static_cast<int>(side);
            }
        } else if (kind == "quantization") {
            variant.scenario.quantization = level == "continuous"
                                                ? Quantization::continuous()
                                                : Quantization::bits(std::stoi(level));
        } else {
            throw config_error("unknown sweep kind '" + kind + "' (expected elements or quantization)");
        }

        const ElementLayout layout = build_layout(variant.panels, variant.bs);
        const SamplePointSet samples = sample_region(region, variant.scenario.w_initial);
        const EffectiveCoefficients coeffs =
            effective_coeffs(layout, variant.bs, bs_codeword, samples, variant.scenario);
        const std::uint64_t pair_seed =
            derive_pair_seed(variant.scenario.rng_seed, bs_codeword, k);
        PhaseProfile initial =
            PhaseProfile::random(layout.size(), variant.scenario.quantization, pair_seed);
        const SolveResult result =
            solve(mode, coeffs, variant.scenario, {}, std::move(initial));

        CoverageReport report = evaluate_region(samples, coeffs, result.phases,
                                                variant.solver.thresholds, variant.scenario);
        report.region_id = rid;
        reports.push_back(std::move(report));
        std::cout << "level " << level << ": mean SE "
                  << format_double(reports.back().mean_se_bps_hz) << " bps/Hz\n";
    }

    write_text_file(out_path, sweep_csv(setup.solver.thresholds, levels, reports));
    std::cout << "sweep: " << out_path << "\n";
    manifest.outputs = {out_path};
    finish_manifest(manifest, out_path);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Near-field beam-coverage codeword and codebook generator for XL-RIS panels"};
    app.require_subcommand(1);
    app.set_version_flag("--version", riscov::kVersion);

    const unsigned default_jobs = std::max(1u, std::thread::hardware_concurrency());

    CommonArgs common;
    std::string region_id;
    std::string mode_name = "awbcd";
    int bs_codeword = 1;
    unsigned jobs = default_jobs;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--config", common.config_path, "scenario configuration file (JSON)")
            ->required();
        cmd->add_option("--seed", common.seed, "override the configuration's RNG seed");
        cmd->add_option("--threshold", common.thresholds,
                        "SE outage threshold in bps/Hz (repeatable; overrides configuration)");
    };

    // solve
    auto* solve_cmd = app.add_subcommand("solve", "solve one codeword for a region");
    add_common(solve_cmd);
    solve_cmd->add_option("--region", region_id, "region id from the configuration")->required();
    solve_cmd->add_option("--bs-codeword", bs_codeword, "BS codeword index (1-based)");
    solve_cmd->add_option("--mode", mode_name, "solver mode: bcd or awbcd");
    std::string out_codeword = "codeword.json";
    std::string out_trace = "trace.csv";
    solve_cmd->add_option("--out-codeword", out_codeword, "codeword output file");
    solve_cmd->add_option("--out-trace", out_trace, "per-epoch trace CSV output file");

    // codebook
    auto* codebook_cmd = app.add_subcommand("codebook", "generate the full (j, k) codebook");
    add_common(codebook_cmd);
    codebook_cmd->add_option("--mode", mode_name, "solver mode: bcd or awbcd");
    codebook_cmd->add_option("--jobs", jobs, "worker threads for independent (j, k) pairs");
    std::string out_codebook = "codebook.json";
    codebook_cmd->add_option("--out", out_codebook, "codebook output file");

    // evaluate
    auto* eval_cmd = app.add_subcommand("evaluate", "evaluate a stored codeword");
    add_common(eval_cmd);
    std::string codeword_path;
    int j_select = 0, k_select = 0;
    eval_cmd->add_option("--codeword", codeword_path, "codeword or codebook file")->required();
    eval_cmd->add_option("--j", j_select, "BS codeword index to pick from a codebook");
    eval_cmd->add_option("--k", k_select, "region index to pick from a codebook");
    eval_cmd->add_option("--jobs", jobs, "worker threads for heatmap evaluation");
    std::string out_heatmap = "heatmap.csv";
    std::string out_cdf = "cdf.csv";
    std::string out_report = "report.txt";
    std::string out_svg;
    eval_cmd->add_option("--out-heatmap", out_heatmap, "room heatmap CSV output file");
    eval_cmd->add_option("--out-cdf", out_cdf, "region SE CDF CSV output file");
    eval_cmd->add_option("--out-report", out_report, "coverage report output file");
    eval_cmd->add_option("--out-svg", out_svg, "optional monochrome SVG heatmap");

    // sweep
    auto* sweep_cmd = app.add_subcommand("sweep", "re-solve one region across element counts or quantizations");
    add_common(sweep_cmd);
    std::string sweep_kind;
    std::vector<std::string> sweep_levels;
    sweep_cmd->add_option("--kind", sweep_kind, "sweep kind: elements or quantization")->required();
    sweep_cmd->add_option("--level", sweep_levels,
                          "sweep level (repeatable): element count, or bit count / 'continuous'")
        ->required();
    sweep_cmd->add_option("--region", region_id, "region id (default: first configured region)");
    sweep_cmd->add_option("--bs-codeword", bs_codeword, "BS codeword index (1-based)");
    sweep_cmd->add_option("--mode", mode_name, "solver mode: bcd or awbcd");
    std::string out_sweep = "sweep.csv";
    sweep_cmd->add_option("--out", out_sweep, "sweep CSV output file");

    CLI11_PARSE(app, argc, argv);

    try {
        if (solve_cmd->parsed())
            return cmd_solve(common, region_id, bs_codeword, mode_name, out_codeword, out_trace);
        if (codebook_cmd->parsed())
            return cmd_codebook(common, mode_name, jobs, out_codebook);
        if (eval_cmd->parsed())
            return cmd_evaluate(common, codeword_path, j_select, k_select, jobs, out_heatmap,
                                out_cdf, out_report, out_svg);
        if (sweep_cmd->parsed())
            return cmd_sweep(common, sweep_kind, sweep_levels, region_id, bs_codeword, mode_name,
                             out_sweep);
    } catch (const riscov::numeric_error& e) {
        std::cerr << "numeric error: " << e.what() << "\n";
        return 2;
    } catch (const riscov::config_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
