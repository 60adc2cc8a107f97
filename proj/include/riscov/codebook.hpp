#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "riscov/geometry.hpp"
#include "riscov/scenario.hpp"
#include "riscov/solver.hpp"

namespace riscov {

/// One RIS phase profile solved for (BS codeword j, region k), both
/// 1-based. Discrete profiles store exact level indices; continuous ones
/// store radians.
struct RisCodeword {
    int j{1};
    int k{1};
    std::uint64_t seed{0}; // the derived per-pair seed actually used
    int epochs{0};
    SolverMode mode{SolverMode::awbcd};
    Quantization quant{};
    std::vector<double> phases;         // continuous alphabets
    std::vector<std::uint32_t> levels;  // discrete alphabets

    std::size_t num_elements() const {
        return quant.is_continuous() ? phases.size() : levels.size();
    }
    PhaseProfile to_profile() const;
    static RisCodeword from_profile(const PhaseProfile& profile, int j, int k,
                                    std::uint64_t seed, int epochs, SolverMode mode);
    std::string label() const; // "j=1,k=2"
};

/// A full codebook plus everything needed to re-evaluate it: scenario
/// constants, panel layout, region definitions and the BS codebook.
struct Codebook {
    std::string scenario_digest;
    ScenarioConfig scenario;
    Quantization quant{};
    std::vector<PanelSpec> panels;
    std::vector<Region> regions;
    BsArray bs;
    std::vector<RisCodeword> codewords; // sorted by (j, k)

    const RisCodeword& find(int j, int k) const;
};

/// Stable per-pair seed; depends only on (base, j, k), so adding regions or
/// BS codewords never changes existing codewords' initializations.
/// derive_pair_seed(b, j, k) = s(s(b ^ j*0x9E3779B97F4A7C15) ^ k*0xC2B2AE3D27D4EB4F)
/// with s the splitmix64 finalizer.
std::uint64_t derive_pair_seed(std::uint64_t base_seed, int j, int k);

using CodebookProgressFn = std::function<void(const RisCodeword&, double final_mean_se)>;

/// Solve every requested (BS codeword, region) pair. `pairs` empty means
/// the full cross product. Pairs are independent and run on up to `jobs`
/// worker threads; the result is identical at any parallelism level.
Codebook generate_codebook(const ScenarioConfig& scenario, const std::vector<PanelSpec>& panels,
                           const BsArray& bs, const std::vector<Region>& regions, SolverMode mode,
                           unsigned jobs = 1, std::span<const std::pair<int, int>> pairs = {},
                           const CodebookProgressFn& progress = {});

/// Serialization to/from the codebook JSON document (fixed key order,
/// byte-reproducible; save writes exactly the bytes of codebook_to_json).
std::string codebook_to_json(const Codebook& book);
Codebook codebook_from_json(std::string_view text);
void save_codebook(const Codebook& book, const std::filesystem::path& path);
Codebook load_codebook(const std::filesystem::path& path);

} // namespace riscov
