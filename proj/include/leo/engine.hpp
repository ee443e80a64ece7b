#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "leo/action_space.hpp"
#include "leo/bandit.hpp"
#include "leo/channel.hpp"
#include "leo/config.hpp"
#include "leo/geometry.hpp"

namespace leo {

// mmral learns power, beams and channels with one micro-agent each. The
// remaining kinds are baselines: `random` draws uniform arms without learning;
// the rest learn a subset of resources and pin the others to catalog anchors
// (full beam set, round-robin channels, maximum power).
enum class Allocator {
    mmral,
    random,
    power_only,               // power learned; full beams, round-robin channels
    channel_only,             // channels learned; full beams, max power
    power_channel,            // power x channel learned jointly; full beams
    beam_channel,             // beam x channel learned jointly; max power
    full_power_beam_channel,  // beam and channel agents; max power
};

std::string_view to_string(Allocator kind);
// Throws std::invalid_argument for unknown names.
Allocator parse_allocator(std::string_view name);
const std::vector<Allocator>& all_allocators();
const std::vector<Allocator>& ablation_allocators();

// One learner of a satellite. Each arm maps to the catalog components the
// agent controls; uncontrolled components stay at anchor index 0.
struct Agent {
    BanditTable table;
    bool power = false;
    bool beam = false;
    bool channel = false;
    std::vector<ArmTriple> choices;
};

struct IterationMetrics {
    std::int64_t t = 0;
    Eigen::VectorXd per_leo;   // bit/s
    double total = 0.0;        // bit/s
    Eigen::VectorXd per_user;  // bit/s
    std::vector<std::uint8_t> outage;
    double outage_rate = 0.0;
    std::vector<ArmTriple> arms;  // per satellite
    double epsilon = 0.0;
};

struct Summary {
    std::int64_t window = 0;
    double mean_total = 0.0;             // bit/s over the trailing window
    double outage_probability = 0.0;     // users whose windowed mean rate is below threshold
    double mean_instant_outage = 0.0;    // per-iteration outage rate averaged over the window
    Eigen::VectorXd mean_per_user;
};

// Trailing window used for converged statistics: last max(500, T/10) iterations.
std::int64_t summary_window(std::int64_t iterations);

Summary summarize(const std::vector<IterationMetrics>& series, double outage_threshold_bps);

class Simulation {
public:
    explicit Simulation(ScenarioConfig config, Allocator kind = Allocator::mmral);

    const ScenarioConfig& config() const { return config_; }
    Allocator kind() const { return kind_; }
    const NetworkSnapshot& initial_snapshot() const { return initial_; }
    const ArmCatalog& catalog() const { return catalog_; }
    const std::vector<std::vector<Agent>>& agents() const { return agents_; }
    const std::vector<MacroTable>& macro_tables() const { return macro_; }

    // One allocation/feedback round at iteration t (t >= 1): propagate, let
    // every satellite's agents select against last round's tables, evaluate the
    // joint policy once, then feed back R_n and R_tot.
    IterationMetrics run_iteration(std::int64_t t);

private:
    ScenarioConfig config_;
    Allocator kind_;
    NetworkSnapshot initial_;
    ArmCatalog catalog_;
    std::vector<std::vector<Agent>> agents_;
    std::vector<std::vector<Rng>> rngs_;
    std::vector<MacroTable> macro_;
    AllocationPolicy policy_;
    bool learning_ = true;
    double epsilon_ = 0.0;
};

struct SimulationResult {
    ScenarioConfig config;
    Allocator kind = Allocator::mmral;
    ArmCatalog catalog;
    std::vector<IterationMetrics> series;
    std::vector<std::vector<Agent>> agents;
    std::vector<MacroTable> macro_tables;
    Summary summary;
};

SimulationResult run_simulation(const ScenarioConfig& config, Allocator kind = Allocator::mmral);
SimulationResult run_baseline(const ScenarioConfig& config, std::string_view kind);

// Metrics stream: t, R_tot_bps, R_1_bps..R_N_bps, outage_rate, epsilon, then
// power/beam/channel arm indices for every satellite.
void write_metrics_csv(std::ostream& out, const std::vector<IterationMetrics>& series, int num_sats);
// Final micro tables followed by the macro tables, in the bandit dump format.
void write_tables_csv(std::ostream& out, const SimulationResult& result);

}  // namespace leo
