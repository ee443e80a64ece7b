#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "leo/config_io.hpp"
#include "leo/engine.hpp"

namespace leo {

struct SweepPoint {
    std::vector<std::pair<std::string, std::string>> labels;  // swept key -> value
    ScenarioConfig config;
    Allocator allocator = Allocator::mmral;
};

struct ExperimentPreset {
    std::string name;
    std::string description;
    std::vector<std::string> swept;  // label columns, in order
    std::vector<SweepPoint> points;
    std::vector<std::uint64_t> seeds;
    Scale scale = Scale::desk;
};

const std::vector<std::string>& preset_names();

// Expands a named sweep on top of `base` (scale defaults plus any file and
// flag overrides). Returns nullopt for unknown names; throws ConfigError if a
// point is invalid or breaks the desk caps.
std::optional<ExperimentPreset> make_preset(std::string_view name, Scale scale, const ScenarioConfig& base);

struct PointResult {
    std::vector<double> mean_total;  // per seed
    std::vector<double> outage;      // per seed
    std::vector<std::string> run_files;
};

struct PresetOptions {
    int jobs = 1;
    std::ostream* log = nullptr;
};

// Runs every point x seed, writing runs/<point>_s<seed>.csv and summary.csv
// under out_dir. Throws std::runtime_error naming the failing point.
std::vector<PointResult> run_preset(const ExperimentPreset& preset, const std::filesystem::path& out_dir,
                                    const PresetOptions& options = {});

std::string point_id(std::size_t index);

}  // namespace leo
