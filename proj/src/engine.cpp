#include "leo/engine.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "leo/csv.hpp"

namespace leo {
namespace {

struct KindInfo {
    Allocator kind;
    std::string_view name;
};

constexpr KindInfo kKinds[] = {
    {Allocator::mmral, "mmral"},
    {Allocator::random, "random"},
    {Allocator::power_only, "power_only"},
    {Allocator::channel_only, "channel_only"},
    {Allocator::power_channel, "power_channel"},
    {Allocator::beam_channel, "beam_channel"},
    {Allocator::full_power_beam_channel, "full_power_beam_channel"},
};

bool uses_full_beams(Allocator kind) {
    return kind == Allocator::power_only || kind == Allocator::channel_only || kind == Allocator::power_channel;
}

Agent single_agent(const std::string& label, int arms, double gamma, bool power, bool beam, bool channel) {
    Agent agent{BanditTable(label, arms, gamma), power, beam, channel, {}};
    for (int a = 0; a < arms; ++a) {
        ArmTriple t;
        if (power) t.power = a;
        if (beam) t.beam = a;
        if (channel) t.channel = a;
        agent.choices.push_back(t);
    }
    return agent;
}

// Joint agent over pairs drawn from two pools. The all-anchor pair comes
// first; the product is sampled down to `cap` pairs when it is larger.
std::vector<std::pair<int, int>> joint_pairs(int first, int second, int cap, std::uint64_t seed) {
    std::vector<std::pair<int, int>> pairs;
    const auto product = static_cast<std::uint64_t>(first) * static_cast<std::uint64_t>(second);
    if (product <= static_cast<std::uint64_t>(cap)) {
        for (int a = 0; a < first; ++a)
            for (int b = 0; b < second; ++b) pairs.emplace_back(a, b);
        return pairs;
    }
    auto rng = make_rng(seed, stream::catalog, 4);
    std::set<std::pair<int, int>> picked;
    while (picked.size() + 1 < static_cast<std::size_t>(cap)) {
        const int a = static_cast<int>(uniform_index(rng, static_cast<std::size_t>(first)));
        const int b = static_cast<int>(uniform_index(rng, static_cast<std::size_t>(second)));
        if (a == 0 && b == 0) continue;
        picked.emplace(a, b);
    }
    pairs.emplace_back(0, 0);
    pairs.insert(pairs.end(), picked.begin(), picked.end());
    return pairs;
}

std::vector<Agent> make_agents(Allocator kind, int n, const ArmCatalog& catalog, const ScenarioConfig& config) {
    const std::string prefix = "leo" + std::to_string(n + 1) + "/";
    const double g = config.gamma_micro;
    const int powers = static_cast<int>(catalog.power.size());
    const int beams = static_cast<int>(catalog.beam.size());
    const int channels = static_cast<int>(catalog.channel.size());

    std::vector<Agent> agents;
    switch (kind) {
        case Allocator::mmral:
        case Allocator::random:
            agents.push_back(single_agent(prefix + "power", powers, g, true, false, false));
            agents.push_back(single_agent(prefix + "beam", beams, g, false, true, false));
            agents.push_back(single_agent(prefix + "channel", channels, g, false, false, true));
            break;
        case Allocator::power_only:
            agents.push_back(single_agent(prefix + "power", powers, g, true, false, false));
            break;
        case Allocator::channel_only:
            agents.push_back(single_agent(prefix + "channel", channels, g, false, false, true));
            break;
        case Allocator::full_power_beam_channel:
            agents.push_back(single_agent(prefix + "beam", beams, g, false, true, false));
            agents.push_back(single_agent(prefix + "channel", channels, g, false, false, true));
            break;
        case Allocator::power_channel:
        case Allocator::beam_channel: {
            const bool with_power = kind == Allocator::power_channel;
            const auto pairs = joint_pairs(with_power ? powers : beams, channels, config.joint_arm_cap, config.seed);
            Agent agent{BanditTable(prefix + (with_power ? "power+channel" : "beam+channel"),
                                    static_cast<int>(pairs.size()), g),
                        with_power, !with_power, true, {}};
            for (const auto& [a, c] : pairs) {
                ArmTriple t;
                (with_power ? t.power : t.beam) = a;
                t.channel = c;
                agent.choices.push_back(t);
            }
            agents.push_back(std::move(agent));
            break;
        }
    }
    return agents;
}

std::string summarize_choice(const Agent& agent, const ArmTriple& t, const ArmCatalog& catalog) {
    std::string out;
    auto add = [&](const char* name, const std::string& text) {
        if (!out.empty()) out += " | ";
        out += name;
        out += ": ";
        out += text;
    };
    if (agent.power) add("power_dbm", describe_power_arm(catalog.power[t.power]));
    if (agent.beam) add("cells", describe_beam_arm(catalog.beam[t.beam]));
    if (agent.channel) add("slots", describe_channel_arm(catalog.channel[t.channel]));
    return out;
}

}  // namespace

std::string_view to_string(Allocator kind) {
    for (const auto& k : kKinds)
        if (k.kind == kind) return k.name;
    return "unknown";
}

Allocator parse_allocator(std::string_view name) {
    for (const auto& k : kKinds)
        if (k.name == name) return k.kind;
    throw std::invalid_argument("unknown allocator '" + std::string(name) + "'");
}

const std::vector<Allocator>& all_allocators() {
    static const std::vector<Allocator> kinds = [] {
        std::vector<Allocator> out;
        for (const auto& k : kKinds) out.push_back(k.kind);
        return out;
    }();
    return kinds;
}

const std::vector<Allocator>& ablation_allocators() {
    static const std::vector<Allocator> kinds{Allocator::power_only, Allocator::channel_only, Allocator::power_channel,
                                              Allocator::beam_channel, Allocator::full_power_beam_channel};
    return kinds;
}

std::int64_t summary_window(std::int64_t iterations) {
    return std::min(iterations, std::max<std::int64_t>(500, iterations / 10));
}

Summary summarize(const std::vector<IterationMetrics>& series, double outage_threshold_bps) {
    Summary summary;
    const auto total = static_cast<std::int64_t>(series.size());
    summary.window = summary_window(total);
    if (summary.window == 0) return summary;

    const Eigen::Index users = series.back().per_user.size();
    summary.mean_per_user = Eigen::VectorXd::Zero(users);
    for (std::int64_t i = total - summary.window; i < total; ++i) {
        const auto& m = series[static_cast<std::size_t>(i)];
        summary.mean_total += m.total;
        summary.mean_instant_outage += m.outage_rate;
        summary.mean_per_user += m.per_user;
    }
    const double w = static_cast<double>(summary.window);
    summary.mean_total /= w;
    summary.mean_instant_outage /= w;
    summary.mean_per_user /= w;
    if (users > 0) {
        const auto below = (summary.mean_per_user.array() < outage_threshold_bps).count();
        summary.outage_probability = static_cast<double>(below) / static_cast<double>(users);
    }
    return summary;
}

Simulation::Simulation(ScenarioConfig config, Allocator kind) : config_(std::move(config)), kind_(kind) {
    if (uses_full_beams(kind_)) config_.beam_mode = BeamMode::full;
    validate(config_);
    initial_ = build_constellation(config_);
    catalog_ = build_catalog(config_, config_.seed);
    learning_ = kind_ != Allocator::random;
    epsilon_ = kind_ == Allocator::random ? 1.0 : config_.epsilon;

    const int N = config_.num_satellites;
    for (int n = 0; n < N; ++n) {
        agents_.push_back(make_agents(kind_, n, catalog_, config_));
        std::vector<Rng> rngs;
        for (std::size_t a = 0; a < agents_.back().size(); ++a) rngs.push_back(make_rng(config_.seed, stream::agent, n, a));
        rngs_.push_back(std::move(rngs));
        macro_.emplace_back("leo" + std::to_string(n + 1) + "/macro", config_.gamma_macro);
    }
    policy_ = AllocationPolicy(N, catalog_.cells, config_.num_users, config_.sub_channels);
}

IterationMetrics Simulation::run_iteration(std::int64_t t) {
    const int N = config_.num_satellites;
    const NetworkSnapshot snapshot = snapshot_at(initial_, config_, t);

    // Selection for every satellite reads the tables as they stood at the end
    // of the previous iteration.
    IterationMetrics metrics;
    metrics.t = t;
    metrics.epsilon = epsilon_;
    metrics.arms.assign(N, ArmTriple{});
    std::vector<std::vector<int>> chosen(N);
    for (int n = 0; n < N; ++n) {
        for (std::size_t a = 0; a < agents_[n].size(); ++a) {
            const Agent& agent = agents_[n][a];
            const int arm = select(agent.table, epsilon_, rngs_[n][a]);
            chosen[n].push_back(arm);
            const ArmTriple& c = agent.choices[arm];
            if (agent.power) metrics.arms[n].power = c.power;
            if (agent.beam) metrics.arms[n].beam = c.beam;
            if (agent.channel) metrics.arms[n].channel = c.channel;
        }
    }

    for (int n = 0; n < N; ++n) decode_into(policy_, n, metrics.arms[n], snapshot, catalog_);
    const LinkEnvironment env(snapshot, config_);
    RateReport report = rates(env, policy_);

    if (learning_) {
        for (int n = 0; n < N; ++n) {
            const double own = report.per_leo[n] * config_.reward_scale;
            for (std::size_t a = 0; a < agents_[n].size(); ++a) update_micro(agents_[n][a].table, chosen[n][a], own);
            update_macro(macro_[n], metrics.arms[n], report.total * config_.reward_scale);
        }
    }

    metrics.per_leo = std::move(report.per_leo);
    metrics.total = report.total;
    metrics.per_user = std::move(report.per_user);
    metrics.outage.resize(static_cast<std::size_t>(metrics.per_user.size()));
    int below = 0;
    for (Eigen::Index u = 0; u < metrics.per_user.size(); ++u) {
        metrics.outage[u] = metrics.per_user[u] < config_.outage_threshold_bps;
        below += metrics.outage[u];
    }
    metrics.outage_rate = metrics.per_user.size() > 0 ? static_cast<double>(below) / metrics.per_user.size() : 0.0;
    return metrics;
}

SimulationResult run_simulation(const ScenarioConfig& config, Allocator kind) {
    Simulation sim(config, kind);
    SimulationResult result;
    result.series.reserve(static_cast<std::size_t>(config.iterations));
    for (std::int64_t t = 1; t <= config.iterations; ++t) {
        try {
            result.series.push_back(sim.run_iteration(t));
        } catch (const std::exception& e) {
            throw std::runtime_error("iteration " + std::to_string(t) + ": " + e.what());
        }
    }
    result.config = sim.config();
    result.kind = kind;
    result.catalog = sim.catalog();
    result.agents = sim.agents();
    result.macro_tables = sim.macro_tables();
    result.summary = summarize(result.series, result.config.outage_threshold_bps);
    return result;
}

SimulationResult run_baseline(const ScenarioConfig& config, std::string_view kind) {
    const Allocator parsed = parse_allocator(kind);
    if (parsed == Allocator::mmral) throw std::invalid_argument("run_baseline: 'mmral' is not a baseline");
    return run_simulation(config, parsed);
}

void write_metrics_csv(std::ostream& out, const std::vector<IterationMetrics>& series, int num_sats) {
    out << "t,R_tot_bps";
    for (int n = 1; n <= num_sats; ++n) out << ",R_" << n << "_bps";
    out << ",outage_rate,epsilon";
    for (int n = 1; n <= num_sats; ++n) out << ",arm_" << n << "_power,arm_" << n << "_beam,arm_" << n << "_channel";
    out << '\n';
    for (const auto& m : series) {
        out << m.t << ',' << format_double(m.total);
        for (int n = 0; n < num_sats; ++n) out << ',' << format_double(m.per_leo[n]);
        out << ',' << format_double(m.outage_rate) << ',' << format_double(m.epsilon);
        for (int n = 0; n < num_sats; ++n) out << ',' << m.arms[n].power << ',' << m.arms[n].beam << ',' << m.arms[n].channel;
        out << '\n';
    }
}

void write_tables_csv(std::ostream& out, const SimulationResult& result) {
    std::vector<const BanditTable*> tables;
    std::vector<std::vector<std::string>> summaries;
    for (const auto& per_sat : result.agents) {
        for (const auto& agent : per_sat) {
            tables.push_back(&agent.table);
            std::vector<std::string> rows;
            for (const auto& choice : agent.choices) rows.push_back(summarize_choice(agent, choice, result.catalog));
            summaries.push_back(std::move(rows));
        }
    }
    write_table_csv(out, tables, summaries, true);
    std::vector<const MacroTable*> macro;
    for (const auto& table : result.macro_tables) macro.push_back(&table);
    write_macro_csv(out, macro, false);
}

}  // namespace leo
