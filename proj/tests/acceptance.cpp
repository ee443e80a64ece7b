// One PASS/FAIL line per acceptance criterion. Exit status is non-zero when
// any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "leo/action_space.hpp"
#include "leo/bandit.hpp"
#include "leo/channel.hpp"
#include "leo/config_io.hpp"
#include "leo/engine.hpp"
#include "oracle.hpp"

using namespace leo;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

const std::vector<std::uint64_t> kSeeds{1, 2, 3, 4, 5};

std::string fmt(double v, int digits = 4) {
    std::ostringstream s;
    s.precision(digits);
    s << v;
    return s.str();
}

ScenarioConfig desk() {
    ScenarioConfig c = defaults_for(Scale::desk);
    c.iterations = 5000;
    return c;
}

struct SeedRuns {
    std::vector<double> total;
    std::vector<double> outage;
};

SeedRuns run_seeds(ScenarioConfig c, Allocator kind = Allocator::mmral) {
    SeedRuns r;
    for (auto seed : kSeeds) {
        c.seed = seed;
        const Summary s = run_simulation(c, kind).summary;
        r.total.push_back(s.mean_total);
        r.outage.push_back(s.outage_probability);
    }
    return r;
}

int count_if_pairs(const std::vector<double>& a, const std::vector<double>& b,
                   const std::function<bool(double, double)>& pred) {
    int k = 0;
    for (std::size_t i = 0; i < a.size(); ++i) k += pred(a[i], b[i]);
    return k;
}

double mean(const std::vector<double>& v) { return std::accumulate(v.begin(), v.end(), 0.0) / v.size(); }

Outcome equation_oracles() {
    double worst = 0.0;
    int instances = 0;
    for (std::uint64_t seed = 1; seed <= 120; ++seed) {
        const ScenarioConfig cfg = fixtures::small_config(seed);
        const auto snap = build_constellation(cfg);
        const LinkEnvironment env(snap, cfg);
        // Alternate hand-rolled random policies with decoded bandit arms.
        AllocationPolicy pol = fixtures::random_policy(cfg, snap, seed);
        if (seed % 2 == 0) {
            const ArmCatalog cat = build_catalog(cfg, seed);
            std::mt19937_64 g(seed);
            pol = decode(fixtures::random_arms(cat, cfg.num_satellites, g), snap, cat, cfg);
        }
        const oracle::Net ref{snap, cfg, pol};
        for (int n = 0; n < cfg.num_satellites; ++n)
            for (int m = 0; m < cfg.cells_per_sat; ++m)
                for (int u = 0; u < cfg.num_users; ++u)
                    for (int s = 0; s < cfg.sub_channels; ++s)
                        worst = std::max(worst, oracle::rel_err(sinr(env, pol, n, m, u, s), ref.sinr(n, m, u, s)));
        const RateReport rep = rates(env, pol);
        worst = std::max(worst, oracle::rel_err(rep.total, ref.total()));
        const auto per = ref.per_leo();
        for (int n = 0; n < cfg.num_satellites; ++n) worst = std::max(worst, oracle::rel_err(rep.per_leo[n], per[n]));
        ++instances;
    }
    return {worst <= 1e-9, std::to_string(instances) + " instances, worst relative error " + fmt(worst, 3)};
}

Outcome beam_gain_checks() {
    const ScenarioConfig cfg;
    const BeamPattern pat = BeamPattern::from_config(cfg);
    const double gt = db_to_linear(cfg.tx_gain_dbi);
    const double psi = 0.05;
    const bool peak = beam_gain(psi, psi, pat) == gt;
    const double null_theta = psi + std::asin(3.8317 / pat.ka);
    const double at_null = beam_gain(null_theta, psi, pat);
    const double cont = std::max(std::abs(beam_gain(psi + 1e-8, psi, pat) - gt), std::abs(beam_gain(psi - 1e-8, psi, pat) - gt));
    const bool ok = peak && at_null < 1e-6 * gt && cont < 1e-6 * gt;
    return {ok, "peak exact " + std::string(peak ? "yes" : "no") + ", null/G_t " + fmt(at_null / gt, 3) +
                    ", continuity/G_t " + fmt(cont / gt, 3)};
}

Outcome constraint_soundness() {
    int checked = 0, bad = 0;
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
        const ScenarioConfig cfg = fixtures::small_config(seed);
        const auto snap = build_constellation(cfg);
        const ArmCatalog cat = build_catalog(cfg, seed);
        std::mt19937_64 g(seed * 31);
        for (int i = 0; i < 100; ++i) {
            bad += !validate_policy(decode(fixtures::random_arms(cat, cfg.num_satellites, g), snap, cat, cfg), cfg).empty();
            ++checked;
        }
    }

    // Injected faults on a valid desk policy.
    const ScenarioConfig cfg = desk();
    const auto snap = build_constellation(cfg);
    const ArmCatalog cat = build_catalog(cfg, 1);
    const AllocationPolicy base = decode(std::vector<ArmTriple>(cfg.num_satellites), snap, cat, cfg);
    auto has = [](const std::vector<Violation>& v, const std::string& c, const std::vector<int>& idx) {
        for (const auto& x : v)
            if (x.constraint == c && x.index == idx) return true;
        return false;
    };

    // Sub-channel 0 of satellite 1 handed to a second beam.
    AllocationPolicy dbl = base;
    int owner = -1;
    for (int m = 0; m < cfg.cells_per_sat; ++m)
        if (dbl.rho(1, m, 0)) owner = m;
    const int other = owner == 0 ? 1 : 0;
    dbl.rho(1, other, 0) = 1;
    const bool c4 = owner >= 0 && has(validate_policy(dbl, cfg), "C4", {1, 0});

    // Over-budget power on the first served link of satellite 2.
    AllocationPolicy hot = base;
    bool c2 = false, c1 = false;
    for (int m = 0; m < cfg.cells_per_sat && !c2; ++m)
        for (int u = 0; u < cfg.num_users && !c2; ++u)
            for (int s = 0; s < cfg.sub_channels && !c2; ++s)
                if (hot.phi(2, m, u) && hot.rho(2, m, s)) {
                    hot.power(2, m, u, s) += cfg.p_leo_w();
                    const auto v = validate_policy(hot, cfg);
                    c2 = has(v, "C2", {2, m});
                    c1 = has(v, "C1", {2});
                }

    const bool ok = bad == 0 && checked >= 10000 && c4 && c1 && c2;
    return {ok, std::to_string(checked) + " decoded policies, " + std::to_string(bad) + " invalid; injected C4 " +
                    (c4 ? "caught" : "missed") + ", C1 " + (c1 ? "caught" : "missed") + ", C2 " +
                    (c2 ? "caught" : "missed")};
}

Outcome bandit_arithmetic() {
    bool ok = true;
    BanditTable first("a", 3, 0.15);
    update_micro(first, 1, 10.0);
    ok &= first.value(1) == 10.0;

    BanditTable hand("b", 3, 0.15);
    hand.set_value(0, 2.0);
    hand.set_count(0, 3);
    hand.set_value(1, 3.0);
    hand.set_count(1, 1);
    update_micro(hand, 0, 6.0);
    ok &= std::abs(hand.value(0) - 3.5375) <= 1e-12;

    MacroTable macro("m", 0.15);
    update_macro(macro, {0, 0, 0}, 10.0);
    ok &= macro.entry({0, 0, 0}).value == 10.0;
    update_macro(macro, {1, 0, 0}, 4.0);
    ok &= std::abs(macro.entry({1, 0, 0}).value - (4.0 + 0.15 * 10.0)) <= 1e-12;

    BanditTable tie("c", 3, 0.15);
    tie.set_value(0, 5.0);
    tie.set_value(1, 9.0);
    tie.set_value(2, 9.0);
    Rng rng = make_rng(1, 0);
    bool greedy = true;
    for (int i = 0; i < 1000; ++i) greedy &= select(tie, 0.0, rng) == 1;
    ok &= greedy;

    const int draws = 100000, arms = 10;
    BanditTable flat("d", arms, 0.15);
    flat.set_value(4, 1e9);
    std::vector<int> hits(arms, 0);
    for (int i = 0; i < draws; ++i) ++hits[select(flat, 1.0, rng)];
    const double p = 1.0 / arms, sigma = std::sqrt(draws * p * (1 - p));
    double worst = 0.0;
    for (int h : hits) worst = std::max(worst, std::abs(h - draws * p) / sigma);
    ok &= worst <= 3.0;
    return {ok, "hand cases " + std::string(ok ? "match" : "differ") + ", greedy tie-break " +
                    (greedy ? "low index" : "wrong") + ", uniform max deviation " + fmt(worst, 3) + " sigma"};
}

Outcome epsilon_ordering() {
    ScenarioConfig lo = desk(), hi = desk();
    lo.epsilon = 0.2;
    hi.epsilon = 0.8;
    const SeedRuns a = run_seeds(lo), b = run_seeds(hi);
    const int wins = count_if_pairs(a.total, b.total, [](double x, double y) { return x > y; });
    const double gain = mean(a.total) / mean(b.total) - 1.0;
    return {wins >= 4 && gain >= 0.10, "eps=0.2 beats eps=0.8 in " + std::to_string(wins) + "/5 seeds, mean " +
                                           fmt(mean(a.total) / 1e9) + " vs " + fmt(mean(b.total) / 1e9) +
                                           " Gbit/s (+" + fmt(100 * gain, 3) + "%)"};
}

// Outage and throughput grid over beam radius, users and beam mode.
struct BeamGrid {
    std::vector<double> radii{30, 50, 100, 150};
    std::vector<int> users{10, 20, 30, 40, 50};
    std::map<std::tuple<double, int, BeamMode>, SeedRuns> runs;

    const SeedRuns& at(double br, int u, BeamMode mode) {
        const auto key = std::make_tuple(br, u, mode);
        auto it = runs.find(key);
        if (it != runs.end()) return it->second;
        ScenarioConfig c = desk();
        c.beam_radius_km = br;
        c.num_users = u;
        c.beam_mode = mode;
        return runs[key] = run_seeds(c);
    }
};

Outcome beam_allocation_throughput(BeamGrid& grid) {
    bool ok = true;
    std::string detail;
    for (double br : {30.0, 50.0}) {
        const SeedRuns& ba = grid.at(br, 30, BeamMode::allocate);
        const SeedRuns& nba = grid.at(br, 30, BeamMode::full);
        const int wins = count_if_pairs(ba.total, nba.total, [](double x, double y) { return x >= y; });
        ok &= wins >= 4;
        detail += (detail.empty() ? "" : "; ") + std::string("BR=") + fmt(br) + " BA>=NBA " + std::to_string(wins) +
                  "/5, ratio " + fmt(mean(ba.total) / mean(nba.total), 3);
    }
    return {ok, detail};
}

Outcome outage_ordering(BeamGrid& grid) {
    int cells = 0, cells_ok = 0;
    int trends = 0, trends_ok = 0;
    for (int u : grid.users) {
        double prev = -1.0;
        bool mono = true;
        for (double br : grid.radii) {
            const SeedRuns& ba = grid.at(br, u, BeamMode::allocate);
            const SeedRuns& nba = grid.at(br, u, BeamMode::full);
            const int wins = count_if_pairs(ba.outage, nba.outage, [](double x, double y) { return x <= y; });
            ++cells;
            cells_ok += wins >= 4;
            const double m = mean(ba.outage);
            mono &= m >= prev;
            prev = m;
        }
        ++trends;
        trends_ok += mono;
    }
    return {cells_ok == cells && trends_ok == trends,
            "BA<=NBA outage in " + std::to_string(cells_ok) + "/" + std::to_string(cells) +
                " cells; BA outage non-decreasing in BR for " + std::to_string(trends_ok) + "/" +
                std::to_string(trends) + " user counts"};
}

Outcome topology_ordering() {
    int checks = 0, checks_ok = 0;
    std::string failed;
    for (int n : {2, 4}) {
        std::map<std::pair<OrbitTopology, double>, SeedRuns> r;
        for (auto topo : {OrbitTopology::homogeneous, OrbitTopology::heterogeneous})
            for (double spacing : {250.0, 500.0}) {
                ScenarioConfig c = desk();
                c.num_satellites = n;
                c.topology = topo;
                c.inter_sat_distance_km = spacing;
                r[{topo, spacing}] = run_seeds(c);
            }
        auto ge = [&](const SeedRuns& a, const SeedRuns& b, const std::string& what) {
            const int wins = count_if_pairs(a.total, b.total, [](double x, double y) { return x >= y; });
            ++checks;
            if (wins >= 4) {
                ++checks_ok;
            } else {
                failed += " N=" + std::to_string(n) + " " + what + " " + std::to_string(wins) + "/5;";
            }
        };
        for (double spacing : {250.0, 500.0})
            ge(r[{OrbitTopology::heterogeneous, spacing}], r[{OrbitTopology::homogeneous, spacing}],
               "het>=homo@" + fmt(spacing));
        for (auto topo : {OrbitTopology::homogeneous, OrbitTopology::heterogeneous})
            ge(r[{topo, 250.0}], r[{topo, 500.0}], std::string("near>=far ") + std::string(to_string(topo)));
    }
    return {checks_ok == checks,
            std::to_string(checks_ok) + "/" + std::to_string(checks) + " comparisons hold" +
                (failed.empty() ? "" : "; failing:" + failed)};
}

Outcome baseline_ordering() {
    bool ok = true;
    std::string detail;
    for (int u : {20, 40}) {
        ScenarioConfig c = desk();
        c.num_users = u;
        const SeedRuns ours = run_seeds(c, Allocator::mmral);
        const SeedRuns rnd = run_seeds(c, Allocator::random);
        const int beat_random = count_if_pairs(ours.total, rnd.total, [](double x, double y) { return x > y; });
        ok &= beat_random == 5;
        detail += (detail.empty() ? "" : "; ") + std::string("U=") + std::to_string(u) + " vs random " +
                  std::to_string(beat_random) + "/5";
        for (Allocator a : ablation_allocators()) {
            const SeedRuns other = run_seeds(c, a);
            const int wins = count_if_pairs(ours.total, other.total, [](double x, double y) { return x >= y; });
            ok &= wins >= 4;
            detail += ", " + std::string(to_string(a)) + " " + std::to_string(wins) + "/5";
        }
    }
    return {ok, detail};
}

Outcome determinism() {
    auto csv = [](const ScenarioConfig& c, Allocator kind) {
        const SimulationResult r = run_simulation(c, kind);
        std::ostringstream out;
        write_metrics_csv(out, r.series, r.config.num_satellites);
        return out.str();
    };
    ScenarioConfig c = desk();
    c.iterations = 1000;
    bool ok = true;
    int runs = 0;
    for (Allocator kind : all_allocators()) {
        for (std::uint64_t seed : {3ull, 11ull}) {
            c.seed = seed;
            ok &= csv(c, kind) == csv(c, kind);
            ++runs;
        }
    }
    return {ok, std::to_string(runs) + " repeated runs " + (ok ? "byte-identical" : "differ")};
}

}  // namespace

int main() {
    BeamGrid grid;
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"equation oracles", equation_oracles},
        {"beam gain", beam_gain_checks},
        {"constraint soundness", constraint_soundness},
        {"bandit arithmetic", bandit_arithmetic},
        {"exploration rate ordering", epsilon_ordering},
        {"beam allocation throughput", [&] { return beam_allocation_throughput(grid); }},
        {"outage ordering", [&] { return outage_ordering(grid); }},
        {"orbit topology ordering", topology_ordering},
        {"baseline ordering", baseline_ordering},
        {"determinism", determinism},
    };
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        failures += !o.pass;
        std::printf("%s criterion %zu (%s): %s [%.1fs]\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                    o.detail.c_str(), secs);
        std::fflush(stdout);
    }
    return failures == 0 ? 0 : 1;
}
