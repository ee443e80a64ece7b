#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "leo/action_space.hpp"
#include "leo/config_io.hpp"
#include "leo/csv.hpp"
#include "leo/engine.hpp"
#include "leo/presets.hpp"

namespace fs = std::filesystem;

namespace {

struct CommonOptions {
    std::string config;
    std::string scale = "desk";
    std::optional<std::uint64_t> seed;
    std::optional<double> epsilon;
    std::optional<int> iterations;
    std::vector<std::string> sets;
};

void add_common(CLI::App* app, CommonOptions& o) {
    app->add_option("--config", o.config, "key = value scenario file")->envname("LEOSIM_CONFIG");
    app->add_option("--scale", o.scale, "default parameter set")
        ->check(CLI::IsMember({"desk", "full"}))
        ->envname("LEOSIM_SCALE");
    app->add_option("--seed", o.seed, "scenario seed")->envname("LEOSIM_SEED");
    app->add_option("--epsilon", o.epsilon, "exploration rate")->envname("LEOSIM_EPSILON");
    app->add_option("--iterations", o.iterations, "number of allocation rounds")->envname("LEOSIM_ITERATIONS");
    app->add_option("--set", o.sets, "extra key=value override (repeatable)");
}

leo::ScenarioConfig resolve(const CommonOptions& o) {
    std::vector<leo::Override> overrides;
    for (const auto& s : o.sets) {
        const auto eq = s.find('=');
        if (eq == std::string::npos) throw leo::ConfigError("--set expects key=value, got '" + s + "'");
        overrides.emplace_back(s.substr(0, eq), s.substr(eq + 1));
    }
    if (o.seed) overrides.emplace_back("seed", std::to_string(*o.seed));
    if (o.epsilon) overrides.emplace_back("epsilon", leo::format_double(*o.epsilon));
    if (o.iterations) overrides.emplace_back("iterations", std::to_string(*o.iterations));
    std::optional<fs::path> file;
    if (!o.config.empty()) file = o.config;
    return leo::resolve_config(leo::parse_scale(o.scale), file, overrides);
}

void print_summary(std::ostream& out, const leo::SimulationResult& r) {
    out << "allocator " << leo::to_string(r.kind) << '\n'
        << "window " << r.summary.window << '\n'
        << "mean_R_tot_bps " << leo::format_double(r.summary.mean_total) << '\n'
        << "outage_probability " << leo::format_double(r.summary.outage_probability) << '\n'
        << "mean_instant_outage " << leo::format_double(r.summary.mean_instant_outage) << '\n';
}

int cmd_run(const CommonOptions& o, const std::string& allocator, const std::string& out_dir) {
    const leo::ScenarioConfig config = resolve(o);
    const leo::SimulationResult result = leo::run_simulation(config, leo::parse_allocator(allocator));
    if (out_dir.empty()) {
        leo::write_metrics_csv(std::cout, result.series, config.num_satellites);
        print_summary(std::cerr, result);
        return 0;
    }
    fs::create_directories(out_dir);
    std::ofstream metrics(fs::path(out_dir) / "metrics.csv");
    leo::write_metrics_csv(metrics, result.series, config.num_satellites);
    std::ofstream tables(fs::path(out_dir) / "tables.csv");
    leo::write_tables_csv(tables, result);
    std::ofstream resolved(fs::path(out_dir) / "config.ini");
    leo::write_config(resolved, config);
    print_summary(std::cout, result);
    return 0;
}

int cmd_preset(const CommonOptions& o, const std::string& name, const std::string& out_dir,
               const std::vector<std::uint64_t>& seeds, int jobs, bool quiet) {
    const auto& names = leo::preset_names();
    if (std::find(names.begin(), names.end(), name) == names.end()) {
        std::cerr << "unknown preset: " << name << '\n';
        return 2;
    }
    const leo::ScenarioConfig base = resolve(o);
    auto preset = leo::make_preset(name, leo::parse_scale(o.scale), base);
    if (!seeds.empty()) {
        preset->seeds = seeds;
    } else if (o.seed) {
        preset->seeds = {*o.seed};
    }
    leo::PresetOptions options;
    options.jobs = jobs;
    options.log = quiet ? nullptr : &std::cerr;
    const fs::path dir = out_dir.empty() ? fs::path(name) : fs::path(out_dir);
    leo::run_preset(*preset, dir, options);
    std::cout << (dir / "summary.csv").string() << '\n';
    return 0;
}

int cmd_validate(const CommonOptions& o) {
    const leo::ScenarioConfig config = resolve(o);
    leo::write_config(std::cout, config);
    std::cerr << "config ok\n";
    return 0;
}

int cmd_dump_catalog(const CommonOptions& o, const std::string& allocator) {
    leo::ScenarioConfig config = resolve(o);
    const leo::Simulation sim(config, leo::parse_allocator(allocator));
    const leo::ArmCatalog& c = sim.catalog();
    std::cout << "resource,index,summary\n";
    for (std::size_t i = 0; i < c.power.size(); ++i) {
        std::cout << "power," << i << ',' << leo::csv_field(leo::describe_power_arm(c.power[i])) << '\n';
    }
    for (std::size_t i = 0; i < c.beam.size(); ++i) {
        std::cout << "beam," << i << ',' << leo::csv_field(leo::describe_beam_arm(c.beam[i])) << '\n';
    }
    for (std::size_t i = 0; i < c.channel.size(); ++i) {
        std::cout << "channel," << i << ',' << leo::csv_field(leo::describe_channel_arm(c.channel[i])) << '\n';
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Multi-satellite beam, power and sub-channel allocation simulator"};
    app.require_subcommand(1);

    CommonOptions run_opts, preset_opts, validate_opts, dump_opts;
    std::string run_allocator = "mmral", dump_allocator = "mmral";
    std::string run_out, preset_out, preset_name;
    std::vector<std::uint64_t> preset_seeds;
    int jobs = 1;
    bool quiet = false;

    auto* run = app.add_subcommand("run", "run one scenario and emit metrics");
    add_common(run, run_opts);
    run->add_option("--allocator", run_allocator, "mmral, random or an ablation")->envname("LEOSIM_ALLOCATOR");
    run->add_option("--out", run_out, "output directory (stdout if omitted)")->envname("LEOSIM_OUT");

    auto* preset = app.add_subcommand("preset", "run a named sweep");
    add_common(preset, preset_opts);
    preset->add_option("name", preset_name, "preset name")->required();
    preset->add_option("--out", preset_out, "output directory (default: preset name)")->envname("LEOSIM_OUT");
    preset->add_option("--seeds", preset_seeds, "seed list")->delimiter(',');
    preset->add_option("--jobs", jobs, "worker threads")->envname("LEOSIM_JOBS");
    preset->add_flag("--quiet", quiet, "no per-run progress");

    auto* check = app.add_subcommand("validate", "check a config and print the merged values");
    add_common(check, validate_opts);

    auto* dump = app.add_subcommand("dump-catalog", "list the arm catalog");
    add_common(dump, dump_opts);
    dump->add_option("--allocator", dump_allocator, "allocator")->envname("LEOSIM_ALLOCATOR");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*run) return cmd_run(run_opts, run_allocator, run_out);
        if (*preset) return cmd_preset(preset_opts, preset_name, preset_out, preset_seeds, jobs, quiet);
        if (*check) return cmd_validate(validate_opts);
        if (*dump) return cmd_dump_catalog(dump_opts, dump_allocator);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
