#include "riscov/codebook.hpp"

#include <filesystem>
#include <fstream>
#include <set>

#include "riscov/config.hpp"
#include "riscov/errors.hpp"
#include "riscov/io.hpp"
#include "riscov/metrics.hpp"
#include "test_util.hpp"

using namespace riscov;

namespace {

struct TinySetup {
    ScenarioConfig scenario;
    std::vector<PanelSpec> panels;
    BsArray bs;
    std::vector<Region> regions;
};

TinySetup tiny_setup(Quantization quant) {
    TinySetup s;
    s.scenario.max_epochs = 3;
    s.scenario.rng_seed = 11;
    s.scenario.quantization = quant;

    PanelSpec panel;
    panel.center = {0.0, 10.0, 3.5};
    panel.rows = 4;
    panel.cols = 4;
    panel.spacing = s.scenario.wavelength() / 2.0;
    s.panels = {panel};

    s.bs.antenna_positions = {{-5.0, -5.0, 10.0}};
    s.bs.codebook = {{{1.0, 0.0}}};

    Region near;
    near.id = "near";
    near.shape = Shape{Rectangle{9.0, 11.0, 9.0, 11.0}};
    near.sample_step = 0.5;
    Region far;
    far.id = "far";
    far.shape = Shape{Rectangle{13.0, 15.0, 12.0, 14.0}};
    far.sample_step = 0.5;
    s.regions = {near, far};
    return s;
}

void test_pair_seed() {
    const auto s11 = derive_pair_seed(1, 1, 1);
    CHECK(s11 == derive_pair_seed(1, 1, 1));
    std::set<std::uint64_t> seen;
    for (int j = 1; j <= 4; ++j)
        for (int k = 1; k <= 4; ++k) seen.insert(derive_pair_seed(1, j, k));
    CHECK(seen.size() == 16);
    CHECK(derive_pair_seed(1, 1, 2) != derive_pair_seed(2, 1, 2));
}

void test_generate_and_determinism() {
    const TinySetup s = tiny_setup(Quantization::bits(2));

    const Codebook book =
        generate_codebook(s.scenario, s.panels, s.bs, s.regions, SolverMode::awbcd, 1);
    CHECK(book.codewords.size() == 2);
    CHECK(book.codewords[0].j == 1 && book.codewords[0].k == 1);
    CHECK(book.codewords[1].j == 1 && book.codewords[1].k == 2);
    for (const auto& cw : book.codewords) {
        CHECK(cw.num_elements() == 16);
        CHECK(cw.epochs == 3);
        for (auto level : cw.levels) CHECK(level < 4u);
        CHECK(cw.seed == derive_pair_seed(s.scenario.rng_seed, cw.j, cw.k));
    }

    // jobs do not change the bytes
    const Codebook parallel =
        generate_codebook(s.scenario, s.panels, s.bs, s.regions, SolverMode::awbcd, 4);
    CHECK(codebook_to_json(book) == codebook_to_json(parallel));

    // and neither does a rerun
    const Codebook again =
        generate_codebook(s.scenario, s.panels, s.bs, s.regions, SolverMode::awbcd, 2);
    CHECK(codebook_to_json(book) == codebook_to_json(again));

    // explicit pair list
    const std::vector<std::pair<int, int>> pairs{{1, 2}};
    const Codebook partial = generate_codebook(s.scenario, s.panels, s.bs, s.regions,
                                               SolverMode::awbcd, 1, pairs);
    CHECK(partial.codewords.size() == 1);
    CHECK(partial.codewords[0].k == 2);
    // same pair -> same phases as in the full book
    CHECK(partial.codewords[0].levels == book.codewords[1].levels);

    const std::vector<std::pair<int, int>> bad{{2, 1}};
    CHECK_THROWS(generate_codebook(s.scenario, s.panels, s.bs, s.regions, SolverMode::awbcd, 1,
                                   bad),
                 config_error);
}

void test_roundtrip() {
    TinySetup s = tiny_setup(Quantization::continuous());
    Region sector;
    sector.id = "wedge";
    sector.shape = Shape{Sector{8.0, 10.5, -0.4, 0.4, {0.0, 10.0}}};
    sector.sample_step = 0.25;
    s.regions.push_back(sector);
    const Codebook book =
        generate_codebook(s.scenario, s.panels, s.bs, s.regions, SolverMode::bcd, 2);

    const auto dir = std::filesystem::path("codebook_test_out");
    std::filesystem::create_directories(dir);
    const auto path = dir / "book.json";
    save_codebook(book, path);
    const Codebook loaded = load_codebook(path);
    CHECK(codebook_to_json(loaded) == codebook_to_json(book));
    CHECK(loaded.scenario_digest == book.scenario_digest);
    CHECK(loaded.codewords.size() == 3);
    CHECK(loaded.codewords[0].phases == book.codewords[0].phases);
    CHECK(loaded.scenario.max_epochs == book.scenario.max_epochs);
    CHECK(std::holds_alternative<Sector>(loaded.regions[2].shape.value));

    // truncated file fails to parse
    const std::string text = read_text_file(path);
    write_text_file(dir / "trunc.json", text.substr(0, text.size() / 2));
    CHECK_THROWS(load_codebook(dir / "trunc.json"), config_error);
    CHECK_THROWS(load_codebook(dir / "missing.json"), config_error);

    // out-of-range stored level is rejected
    const TinySetup sq = tiny_setup(Quantization::bits(2));
    const Codebook qbook =
        generate_codebook(sq.scenario, sq.panels, sq.bs, sq.regions, SolverMode::bcd, 1);
    std::string qtext = codebook_to_json(qbook);
    const auto pos = qtext.find("\"levels\": [");
    CHECK(pos != std::string::npos);
    qtext.insert(pos + std::string("\"levels\": [").size(), "9,");
    write_text_file(dir / "badlevel.json", qtext);
    CHECK_THROWS(load_codebook(dir / "badlevel.json"), config_error);
}

void test_self_containment() {
    // a loaded codebook carries everything needed to re-evaluate coverage
    const TinySetup s = tiny_setup(Quantization::bits(3));
    const Codebook book =
        generate_codebook(s.scenario, s.panels, s.bs, s.regions, SolverMode::awbcd, 1);
    const std::string text = codebook_to_json(book);
    const Codebook loaded = codebook_from_json(text);

    const ElementLayout layout = build_layout(loaded.panels, loaded.bs);
    const RisCodeword& cw = loaded.find(1, 2);
    const Region& region = loaded.regions[static_cast<std::size_t>(cw.k - 1)];
    const SamplePointSet samples = sample_region(region, loaded.scenario.w_initial);
    const EffectiveCoefficients coeffs =
        effective_coeffs(layout, loaded.bs, cw.j, samples, loaded.scenario);
    const auto report = evaluate_region(samples, coeffs, cw.to_profile(),
                                        std::vector<double>{1.0}, loaded.scenario);
    CHECK(std::isfinite(report.mean_se_bps_hz));
    CHECK(report.mean_se_bps_hz > 0.0);

    // identical to evaluating with the original in-memory objects
    const ElementLayout layout0 = build_layout(s.panels, s.bs);
    const SamplePointSet samples0 =
        sample_region(s.regions[1], s.scenario.w_initial);
    const EffectiveCoefficients coeffs0 =
        effective_coeffs(layout0, s.bs, 1, samples0, s.scenario);
    const auto report0 = evaluate_region(samples0, coeffs0, book.find(1, 2).to_profile(),
                                         std::vector<double>{1.0}, s.scenario);
    CHECK(report.mean_se_bps_hz == report0.mean_se_bps_hz);
}

void test_three_regions_uniform_bs() {
    // one uniform BS codeword across three regions -> three codewords
    TinySetup s = tiny_setup(Quantization::continuous());
    s.bs = default_bs(s.scenario); // (1/sqrt(3))[1,1,1] over the antenna triple
    Region third;
    third.id = "west";
    third.shape = Shape{Rectangle{5.0, 7.0, 9.0, 11.0}};
    third.sample_step = 0.5;
    s.regions.push_back(third);
    const Codebook book =
        generate_codebook(s.scenario, s.panels, s.bs, s.regions, SolverMode::awbcd, 2);
    CHECK(book.codewords.size() == 3);
    for (int k = 1; k <= 3; ++k) CHECK(book.find(1, k).k == k);
}

void test_find_and_errors() {
    const TinySetup s = tiny_setup(Quantization::continuous());
    const Codebook book =
        generate_codebook(s.scenario, s.panels, s.bs, s.regions, SolverMode::awbcd, 1);
    CHECK(book.find(1, 1).k == 1);
    CHECK_THROWS(book.find(3, 1), config_error);
    CHECK_THROWS(generate_codebook(s.scenario, s.panels, s.bs, {}, SolverMode::awbcd, 1),
                 config_error);
}

} // namespace

int main() {
    test_pair_seed();
    test_generate_and_determinism();
    test_roundtrip();
    test_self_containment();
    test_three_regions_uniform_bs();
    test_find_and_errors();
    return testutil::summary("test_codebook");
}
