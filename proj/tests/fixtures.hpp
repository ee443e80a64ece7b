#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "leo/action_space.hpp"
#include "leo/channel.hpp"
#include "leo/config.hpp"
#include "leo/geometry.hpp"

namespace fixtures {

// Small scenario with overlapping footprints so every interference term is
// exercised. N*M*U*S stays at or below 200.
inline leo::ScenarioConfig small_config(std::uint64_t seed) {
    std::mt19937_64 g(seed * 7919 + 13);
    auto pick = [&](std::initializer_list<int> xs) { return *(xs.begin() + g() % xs.size()); };
    leo::ScenarioConfig c;
    for (;;) {
        c.num_satellites = pick({1, 2, 2, 3});
        c.cells_per_sat = pick({1, 3, 4, 7});
        c.max_illuminated = 1 + static_cast<int>(g() % c.cells_per_sat);
        c.sub_channels = c.max_illuminated + static_cast<int>(g() % 3);
        c.num_users = pick({2, 3, 4, 6});
        if (c.num_satellites * c.cells_per_sat * c.num_users * c.sub_channels <= 200) break;
    }
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    c.altitude_km = 500.0 + 1000.0 * unit(g);
    c.beam_radius_km = 20.0 + 40.0 * unit(g);
    c.inter_sat_distance_km = 40.0 + 120.0 * unit(g);
    c.topology = g() % 2 ? leo::OrbitTopology::homogeneous : leo::OrbitTopology::heterogeneous;
    c.doppler_compensation = pick({0, 1, 2}) == 0 ? 0.0 : (g() % 2 ? 1e-12 : 0.5);
    c.clutter_db = 3.0 * unit(g);
    c.seed = seed;
    return c;
}

// Random policy honoring C3 and C4: each sub-channel goes to at most one
// beam per satellite, each user to at most one beam, random positive power.
inline leo::AllocationPolicy random_policy(const leo::ScenarioConfig& c, const leo::NetworkSnapshot& snap,
                                           std::uint64_t seed) {
    std::mt19937_64 g(seed ^ 0x9e3779b97f4a7c15ULL);
    std::uniform_real_distribution<double> watts(0.01, 2.0);
    const int N = c.num_satellites, M = c.cells_per_sat, U = c.num_users, S = c.sub_channels;
    leo::AllocationPolicy p(N, M, U, S);
    for (int n = 0; n < N; ++n) {
        for (int s = 0; s < S; ++s) {
            if (g() % 4 == 0) continue;
            p.rho(n, static_cast<int>(g() % M), s) = 1;
        }
    }
    for (int u = 0; u < U; ++u) {
        const int k = snap.serving_cell[u];
        if (k < 0 || g() % 5 == 0) continue;
        const int n = k / M, m = k % M;
        p.phi(n, m, u) = 1;
        for (int s = 0; s < S; ++s) {
            if (p.rho(n, m, s)) p.power(n, m, u, s) = watts(g);
        }
    }
    return p;
}

inline std::vector<leo::ArmTriple> random_arms(const leo::ArmCatalog& cat, int sats, std::mt19937_64& g) {
    std::vector<leo::ArmTriple> arms(sats);
    for (auto& a : arms) {
        a.power = static_cast<int>(g() % cat.power.size());
        a.beam = static_cast<int>(g() % cat.beam.size());
        a.channel = static_cast<int>(g() % cat.channel.size());
    }
    return arms;
}

}  // namespace fixtures
