#include <doctest.h>

#include <cmath>
#include <sstream>

#include "leo/bandit.hpp"

using namespace leo;

TEST_CASE("micro update arithmetic") {
    SUBCASE("first pull takes the reward") {
        BanditTable t("leo1/power", 4, 0.15);
        update_micro(t, 2, 10.0);
        CHECK(t.value(2) == 10.0);
        CHECK(t.count(2) == 1);
    }
    SUBCASE("hand-computed case") {
        BanditTable t("x", 3, 0.15);
        t.set_value(0, 2.0);
        t.set_count(0, 3);
        t.set_value(1, 3.0);
        t.set_count(1, 1);
        update_micro(t, 0, 6.0);
        CHECK(std::abs(t.value(0) - 3.5375) <= 1e-12);
        CHECK(t.count(0) == 4);
    }
    SUBCASE("gamma zero adds reward over count") {
        BanditTable t("x", 2, 0.0);
        t.set_value(1, 4.0);
        t.set_count(1, 1);
        update_micro(t, 1, 6.0);
        CHECK(t.value(1) == doctest::Approx(4.0 + 6.0 / 2.0));
    }
    SUBCASE("max is read before the write and includes the arm") {
        BanditTable t("x", 2, 0.5);
        t.set_value(0, 10.0);
        t.set_count(0, 1);
        update_micro(t, 0, 1.0);
        // best = 10 = own value, so the gamma term vanishes.
        CHECK(t.value(0) == doctest::Approx(10.0 + 1.0 / 2.0));
    }
    SUBCASE("count conservation") {
        BanditTable t("x", 5, 0.15);
        for (int i = 0; i < 100; ++i) update_micro(t, i % 5, 1.0);
        std::int64_t sum = 0;
        for (auto c : t.counts()) sum += c;
        CHECK(sum == 100);
        CHECK(t.total_updates() == 100);
    }
    SUBCASE("straight re-evaluation") {
        Rng rng = make_rng(9, 0);
        BanditTable t("x", 6, 0.15);
        std::vector<double> v(6, 0.0);
        std::vector<std::int64_t> n(6, 0);
        for (int i = 0; i < 1000; ++i) {
            const int a = static_cast<int>(uniform_index(rng, 6));
            const double r = uniform01(rng) * 5.0;
            const double best = *std::max_element(v.begin(), v.end());
            ++n[a];
            v[a] = v[a] + (1.0 / n[a]) * (r + 0.15 * (best - v[a]));
            update_micro(t, a, r);
            CHECK(std::abs(t.value(a) - v[a]) <= 1e-12 * std::max(1.0, std::abs(v[a])));
        }
    }
}

TEST_CASE("macro update") {
    MacroTable m("leo1/macro", 0.15);
    update_macro(m, ArmTriple{1, 2, 3}, 20.0);
    CHECK(m.entry({1, 2, 3}).value == 20.0);
    CHECK(m.entry({1, 2, 3}).count == 1);
    update_macro(m, ArmTriple{0, 2, 3}, 5.0);
    CHECK(m.entry({1, 2, 3}).value == 20.0);
    // best read before the write: 20; new entry starts at 0.
    CHECK(m.entry({0, 2, 3}).value == doctest::Approx(5.0 + 0.15 * 20.0));
    CHECK(m.entries().size() == 2);
    CHECK(m.total_updates() == 2);
}

TEST_CASE("selection") {
    SUBCASE("greedy tie-break is the lowest index") {
        BanditTable t("x", 3, 0.15);
        t.set_value(0, 5.0);
        t.set_value(1, 9.0);
        t.set_value(2, 9.0);
        Rng rng = make_rng(1, 0);
        for (int i = 0; i < 100; ++i) CHECK(select(t, 0.0, rng) == 1);
    }
    SUBCASE("argmax is scale invariant") {
        BanditTable t("x", 4, 0.15);
        const double vals[] = {0.3, 1.7, 1.2, -4.0};
        BanditTable s("y", 4, 0.15);
        for (int i = 0; i < 4; ++i) {
            t.set_value(i, vals[i]);
            s.set_value(i, vals[i] * 1e9);
        }
        Rng rng = make_rng(1, 0);
        CHECK(select(t, 0.0, rng) == select(s, 0.0, rng));
    }
    SUBCASE("full exploration is uniform") {
        const int arms = 10;
        const int draws = 100000;
        BanditTable t("x", arms, 0.15);
        t.set_value(3, 100.0);
        Rng rng = make_rng(2024, 0);
        std::vector<int> hits(arms, 0);
        for (int i = 0; i < draws; ++i) ++hits[select(t, 1.0, rng)];
        const double p = 1.0 / arms;
        const double sigma = std::sqrt(draws * p * (1 - p));
        for (int h : hits) CHECK(std::abs(h - draws * p) <= 3.0 * sigma);
    }
    SUBCASE("empty table") {
        BanditTable t("empty", 0, 0.15);
        Rng rng = make_rng(1, 0);
        CHECK_THROWS_AS(select(t, 0.5, rng), std::invalid_argument);
    }
}

TEST_CASE("under uniform pulls the richest arm ranks first") {
    // The update accumulates reward over pulls, so only equal-count
    // comparisons rank arms by mean reward.
    const std::vector<double> mean{0.1, 0.5, 0.3, 0.9, 0.2, 0.4, 0.6, 0.05, 0.7, 0.35};
    BanditTable t("x", 10, 0.15);
    Rng rng = make_rng(3, 0);
    for (int round = 0; round < 1000; ++round) {
        for (int a = 0; a < 10; ++a) update_micro(t, a, mean[a] + 0.1 * (uniform01(rng) - 0.5));
    }
    CHECK(t.best_arm() == 3);
    CHECK(select(t, 0.0, rng) == 3);
    for (int a = 0; a < 10; ++a) CHECK(t.count(a) == 1000);
}

TEST_CASE("table dump") {
    BanditTable t("leo1/beam", 2, 0.15);
    update_micro(t, 1, 0.5);
    std::ostringstream out;
    write_table_csv(out, {&t}, {{"a", "b,c"}});
    CHECK(out.str() == "agent,arm,summary,value,count\nleo1/beam,0,a,0,0\nleo1/beam,1,\"b,c\",0.5,1\n");
}
