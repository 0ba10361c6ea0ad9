#pragma once

#include "sfdlog/artifacts.hpp"
#include "sfdlog/pipeline.hpp"

#include <filesystem>
#include <optional>
#include <ostream>
#include <random>
#include <string>
#include <vector>

namespace sfdlog {

/// Independent stream per stage, derived from the global seed.
std::mt19937_64 stage_rng(std::uint64_t seed, const std::string& stage);

struct WorkdirLayout {
    std::filesystem::path root;

    std::filesystem::path params() const { return root / "params.txt"; }
    std::filesystem::path relations() const { return root / "relations.txt"; }
    std::filesystem::path matrix() const { return root / "matrix.txt"; }
    std::filesystem::path logs() const { return root / "logs.txt"; }
    std::filesystem::path tree() const { return root / "descent.txt"; }
    std::filesystem::path solution() const { return root / "solution.txt"; }
    std::filesystem::path report() const { return root / "report.txt"; }
};

struct StageTiming {
    std::string name;
    bool cached = false;
    double seconds = 0;
};

/// Reuses artifacts whose recorded inputs match; rebuilds and rewrites the rest.
Instance load_or_build(const PipelineConfig& config, const WorkdirLayout& dir, std::vector<StageTiming>* stages,
                       std::ostream* progress = nullptr);

/// Instance from explicit artifact files; later stages are optional.
Instance load_instance_files(const std::filesystem::path& params,
                             const std::optional<std::filesystem::path>& relations = std::nullopt,
                             const std::optional<std::filesystem::path>& logs = std::nullopt);

/// Inputs that determine the selection; the seed is not among them.
std::string canonical_config(const PipelineConfig& config);

struct RunOptions {
    PipelineConfig config;
    std::filesystem::path workdir = ".";
    std::vector<std::string> targets;
    std::optional<std::string> base;
    bool allUnits = false; // solve every unit and compare with the brute-force oracle
    unsigned randomTargets = 0;
    std::ostream* progress = nullptr;
};

struct RunReport {
    std::vector<StageTiming> stages;
    std::string text; // report.txt contents
    std::vector<SolutionRecord> solutions;
    std::size_t verified = 0, mismatches = 0;
};

RunReport run_pipeline(const RunOptions& options);

std::string describe_instance(const Instance& inst);

} // namespace sfdlog
