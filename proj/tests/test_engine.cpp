#include <doctest.h>

#include <sstream>

#include "fixtures.hpp"
#include "leo/engine.hpp"
#include "oracle.hpp"

using namespace leo;

namespace {

ScenarioConfig tiny(int iterations) {
    ScenarioConfig c = desk_scale(ScenarioConfig{});
    c.num_users = 12;
    c.iterations = iterations;
    return c;
}

std::string metrics_text(const SimulationResult& r) {
    std::ostringstream out;
    write_metrics_csv(out, r.series, r.config.num_satellites);
    write_tables_csv(out, r);
    return out.str();
}

}  // namespace

TEST_CASE("runs are reproducible") {
    const ScenarioConfig c = tiny(60);
    CHECK(metrics_text(run_simulation(c)) == metrics_text(run_simulation(c)));
    ScenarioConfig other = c;
    other.seed = 2;
    CHECK(metrics_text(run_simulation(c)) != metrics_text(run_simulation(other)));
}

TEST_CASE("zero iterations") {
    const auto r = run_simulation(tiny(0));
    CHECK(r.series.empty());
    CHECK(r.summary.window == 0);
    CHECK(r.summary.mean_total == 0.0);
}

TEST_CASE("one fully exploring iteration") {
    ScenarioConfig c = tiny(1);
    c.epsilon = 1.0;
    const auto r = run_simulation(c);
    REQUIRE(r.series.size() == 1);
    CHECK(r.series[0].t == 1);
    for (const auto& agents : r.agents) {
        for (const auto& a : agents) CHECK(a.table.total_updates() == 1);
    }
    for (const auto& m : r.macro_tables) CHECK(m.total_updates() == 1);
}

TEST_CASE("recorded arms replay to the recorded rates") {
    for (Allocator kind : {Allocator::mmral, Allocator::random, Allocator::channel_only}) {
        ScenarioConfig c = tiny(25);
        c.inter_sat_distance_km = 150.0;
        c.doppler_compensation = 0.5;
        const auto r = run_simulation(c, kind);
        const auto initial = build_constellation(r.config);
        for (const auto& m : r.series) {
            const auto snap = snapshot_at(initial, r.config, m.t);
            const auto pol = decode(m.arms, snap, r.catalog, r.config);
            CHECK(validate_policy(pol, r.config).empty());
            const oracle::Net net{snap, r.config, pol};
            CHECK(oracle::rel_err(net.total(), m.total) <= 1e-9);
            double sum = 0.0;
            for (Eigen::Index n = 0; n < m.per_leo.size(); ++n) sum += m.per_leo[n];
            CHECK(oracle::rel_err(sum, m.total) <= 1e-12);
        }
    }
}

TEST_CASE("outage bookkeeping") {
    ScenarioConfig c = tiny(40);
    c.outage_threshold_bps = 0.0;
    const auto r = run_simulation(c);
    CHECK(r.summary.outage_probability == 0.0);
    for (const auto& m : r.series) CHECK(m.outage_rate == 0.0);

    c.outage_threshold_bps = 1e15;
    const auto all = run_simulation(c);
    CHECK(all.summary.outage_probability == 1.0);
}

TEST_CASE("summary window") {
    CHECK(summary_window(0) == 0);
    CHECK(summary_window(100) == 100);
    CHECK(summary_window(5000) == 500);
    CHECK(summary_window(20000) == 2000);

    std::vector<IterationMetrics> s(3);
    for (int i = 0; i < 3; ++i) {
        s[i].total = i + 1.0;
        s[i].per_user = Eigen::VectorXd::Constant(2, 10.0 * (i + 1));
        s[i].outage_rate = i == 0 ? 1.0 : 0.0;
    }
    const Summary sum = summarize(s, 15.0);
    CHECK(sum.mean_total == doctest::Approx(2.0));
    CHECK(sum.mean_instant_outage == doctest::Approx(1.0 / 3.0));
    CHECK(sum.outage_probability == 0.0);  // windowed means are 20
}

TEST_CASE("baselines") {
    const ScenarioConfig c = tiny(10);
    CHECK_THROWS_AS(run_baseline(c, "mmral"), std::invalid_argument);
    CHECK_THROWS_AS(run_baseline(c, "oracle"), std::invalid_argument);
    CHECK_THROWS_AS(parse_allocator("nope"), std::invalid_argument);
    for (Allocator a : all_allocators()) CHECK(parse_allocator(to_string(a)) == a);

    const auto r = run_baseline(c, "random");
    CHECK(r.kind == Allocator::random);
    CHECK(r.series.size() == 10);
    for (const auto& agents : r.agents)
        for (const auto& a : agents) CHECK(a.table.total_updates() == 0);
}

TEST_CASE("full-beam allocators light every cell") {
    const auto r = run_simulation(tiny(5), Allocator::channel_only);
    CHECK(r.config.beam_mode == BeamMode::full);
    for (const auto& m : r.series)
        for (const auto& a : m.arms) CHECK(a.power == 0);
}
