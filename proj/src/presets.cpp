#include "leo/presets.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "leo/csv.hpp"

namespace leo {
namespace {

using Setter = std::function<void(SweepPoint&)>;

struct Axis {
    std::string key;
    std::vector<std::pair<std::string, Setter>> values;
};

Axis numeric_axis(const std::string& key, const std::vector<double>& values) {
    Axis axis{key, {}};
    for (double v : values) {
        const std::string text = format_double(v);
        axis.values.emplace_back(text, [key, text](SweepPoint& p) { apply_override(p.config, key, text); });
    }
    return axis;
}

Axis text_axis(const std::string& key, const std::vector<std::string>& values) {
    Axis axis{key, {}};
    for (const auto& v : values) {
        axis.values.emplace_back(v, [key, v](SweepPoint& p) { apply_override(p.config, key, v); });
    }
    return axis;
}

Axis allocator_axis(const std::vector<Allocator>& kinds) {
    Axis axis{"allocator", {}};
    for (Allocator k : kinds) {
        axis.values.emplace_back(std::string(to_string(k)), [k](SweepPoint& p) { p.allocator = k; });
    }
    return axis;
}

// Cartesian product, last axis fastest.
std::vector<SweepPoint> expand(const ScenarioConfig& base, const std::vector<Axis>& axes) {
    std::vector<SweepPoint> points{SweepPoint{{}, base, Allocator::mmral}};
    for (const auto& axis : axes) {
        std::vector<SweepPoint> next;
        for (const auto& p : points) {
            for (const auto& [text, set] : axis.values) {
                SweepPoint q = p;
                if (axis.key != "allocator") q.labels.emplace_back(axis.key, text);
                set(q);
                next.push_back(std::move(q));
            }
        }
        points = std::move(next);
    }
    return points;
}

void check_desk_caps(const ScenarioConfig& c) {
    if (c.num_satellites > 4) throw ConfigError("desk scale caps num_satellites at 4");
    if (c.num_users > 60) throw ConfigError("desk scale caps num_users at 60");
    if (c.iterations > 5000) throw ConfigError("desk scale caps iterations at 5000");
}

double mean_of(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return v.empty() ? 0.0 : s / static_cast<double>(v.size());
}

double std_of(const std::vector<double>& v) {
    if (v.size() < 2) return 0.0;
    const double m = mean_of(v);
    double s = 0.0;
    for (double x : v) s += (x - m) * (x - m);
    return std::sqrt(s / static_cast<double>(v.size() - 1));
}

}  // namespace

const std::vector<std::string>& preset_names() {
    static const std::vector<std::string> names{"fig3-epsilon",  "fig4-height",    "fig4-users",
                                                "fig5-topology", "fig6-baselines", "table3-outage"};
    return names;
}

std::string point_id(std::size_t index) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "p%03zu", index);
    return buf;
}

std::optional<ExperimentPreset> make_preset(std::string_view name, Scale scale, const ScenarioConfig& base) {
    const bool desk = scale == Scale::desk;
    const std::vector<double> radii{30, 50, 100, 150};
    const std::vector<double> users =
        desk ? std::vector<double>{10, 20, 30, 40, 50} : std::vector<double>{50, 100, 150, 200, 250};
    const Axis beam_axis = text_axis("beam_mode", {"BA", "NBA"});

    ExperimentPreset preset;
    preset.name = std::string(name);
    preset.scale = scale;
    preset.seeds = {1, 2, 3, 4, 5};
    std::vector<Axis> axes;

    if (name == "fig3-epsilon") {
        preset.description = "trailing throughput versus exploration rate";
        axes = {numeric_axis("epsilon", {0.2, 0.5, 0.8})};
    } else if (name == "fig4-height") {
        preset.description = "throughput versus altitude and beam radius, BA and NBA";
        axes = {numeric_axis("beam_radius_km", radii), numeric_axis("altitude_km", {600, 800, 1000, 1200, 1500}),
                beam_axis};
    } else if (name == "fig4-users") {
        preset.description = "throughput versus user count and beam radius, BA and NBA";
        axes = {numeric_axis("beam_radius_km", radii), numeric_axis("num_users", users), beam_axis};
    } else if (name == "table3-outage") {
        preset.description = "outage probability over beam radius x users x BA/NBA";
        axes = {numeric_axis("beam_radius_km", radii), numeric_axis("num_users", users), beam_axis};
    } else if (name == "fig5-topology") {
        preset.description = "homogeneous versus heterogeneous orbits, near and far spacing";
        axes = {numeric_axis("num_satellites", desk ? std::vector<double>{2, 4} : std::vector<double>{2, 4, 6, 8}),
                text_axis("topology", {"homogeneous", "heterogeneous"}),
                numeric_axis("inter_sat_distance_km", {250, 500})};
    } else if (name == "fig6-baselines") {
        preset.description = "proposed learner against random and ablation baselines";
        axes = {numeric_axis("num_users", desk ? std::vector<double>{20, 40} : users), allocator_axis(all_allocators())};
    } else {
        return std::nullopt;
    }

    for (const auto& axis : axes) {
        if (axis.key != "allocator") preset.swept.push_back(axis.key);
    }
    preset.points = expand(base, axes);
    for (std::size_t i = 0; i < preset.points.size(); ++i) {
        const auto& c = preset.points[i].config;
        try {
            validate(c);
            if (desk) check_desk_caps(c);
        } catch (const ConfigError& e) {
            throw ConfigError(preset.name + " " + point_id(i) + ": " + e.what());
        }
    }
    return preset;
}

std::vector<PointResult> run_preset(const ExperimentPreset& preset, const std::filesystem::path& out_dir,
                                    const PresetOptions& options) {
    const std::size_t n_seeds = preset.seeds.size();
    const std::size_t n_jobs = preset.points.size() * n_seeds;
    std::vector<PointResult> results(preset.points.size());
    for (auto& r : results) {
        r.mean_total.resize(n_seeds);
        r.outage.resize(n_seeds);
        r.run_files.resize(n_seeds);
    }

    std::filesystem::create_directories(out_dir / "runs");

    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::mutex mutex;
    std::string failure;

    auto worker = [&] {
        for (;;) {
            const std::size_t job = next.fetch_add(1);
            if (job >= n_jobs || failed) return;
            const std::size_t p = job / n_seeds;
            const std::size_t k = job % n_seeds;
            const SweepPoint& point = preset.points[p];
            ScenarioConfig config = point.config;
            config.seed = preset.seeds[k];
            const std::string file = "runs/" + point_id(p) + "_s" + std::to_string(config.seed) + ".csv";
            try {
                const SimulationResult result = run_simulation(config, point.allocator);
                std::ofstream out(out_dir / file);
                if (!out) throw std::runtime_error("cannot write " + file);
                write_metrics_csv(out, result.series, config.num_satellites);
                results[p].mean_total[k] = result.summary.mean_total;
                results[p].outage[k] = result.summary.outage_probability;
                results[p].run_files[k] = file;
                if (options.log) {
                    std::lock_guard lock(mutex);
                    *options.log << preset.name << ' ' << point_id(p) << " seed " << config.seed
                                 << " R_tot=" << format_double(result.summary.mean_total) << '\n';
                }
            } catch (const std::exception& e) {
                std::lock_guard lock(mutex);
                if (!failed) {
                    failed = true;
                    std::string where = point_id(p);
                    for (const auto& [key, value] : point.labels) where += " " + key + "=" + value;
                    where += " allocator=" + std::string(to_string(point.allocator));
                    failure = "sweep point " + where + " seed " + std::to_string(config.seed) + ": " + e.what();
                }
                return;
            }
        }
    };

    const int threads = std::max(1, options.jobs);
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    if (failed) throw std::runtime_error(failure);

    std::ofstream summary(out_dir / "summary.csv");
    if (!summary) throw std::runtime_error("cannot write summary.csv");
    summary << "point";
    for (const auto& key : preset.swept) summary << ',' << key;
    summary << ",allocator,seeds,mean_R_tot_bps,std_R_tot_bps,outage_probability,std_outage,runs\n";
    for (std::size_t p = 0; p < preset.points.size(); ++p) {
        const auto& point = preset.points[p];
        const auto& r = results[p];
        summary << point_id(p);
        for (const auto& [key, value] : point.labels) summary << ',' << csv_field(value);
        std::string runs;
        for (const auto& f : r.run_files) runs += (runs.empty() ? "" : ";") + f;
        summary << ',' << to_string(point.allocator) << ',' << n_seeds << ',' << format_double(mean_of(r.mean_total))
                << ',' << format_double(std_of(r.mean_total)) << ',' << format_double(mean_of(r.outage)) << ','
                << format_double(std_of(r.outage)) << ',' << csv_field(runs) << '\n';
    }
    return results;
}

}  // namespace leo
