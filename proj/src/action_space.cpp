#include "leo/action_space.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>
#include <sstream>

#include "leo/random.hpp"

namespace leo {
namespace {

constexpr std::uint64_t kSaturated = std::numeric_limits<std::uint64_t>::max();

std::vector<std::vector<int>> all_subsets(int n, int k) {
    std::vector<std::vector<int>> out;
    std::vector<int> pick(k);
    std::iota(pick.begin(), pick.end(), 0);
    while (true) {
        out.push_back(pick);
        int i = k - 1;
        while (i >= 0 && pick[i] == n - k + i) --i;
        if (i < 0) break;
        ++pick[i];
        for (int j = i + 1; j < k; ++j) pick[j] = pick[j - 1] + 1;
    }
    return out;
}

std::vector<int> random_subset(Rng& rng, int n, int k) {
    std::vector<int> pool(n);
    std::iota(pool.begin(), pool.end(), 0);
    for (int i = 0; i < k; ++i) {
        const auto j = i + static_cast<int>(uniform_index(rng, static_cast<std::size_t>(n - i)));
        std::swap(pool[i], pool[j]);
    }
    pool.resize(k);
    std::sort(pool.begin(), pool.end());
    return pool;
}

std::vector<int> composition_from_cuts(const std::vector<int>& cuts, int total) {
    std::vector<int> sizes;
    int previous = 0;
    for (int c : cuts) {
        sizes.push_back(c + 1 - previous);
        previous = c + 1;
    }
    sizes.push_back(total - previous);
    return sizes;
}

ChannelArm channel_arm_from_sizes(const std::vector<int>& sizes) {
    ChannelArm arm;
    for (int slot = 0; slot < static_cast<int>(sizes.size()); ++slot) arm.slot_of.insert(arm.slot_of.end(), sizes[slot], slot);
    return arm;
}

std::vector<BeamArm> build_beam_arms(const ScenarioConfig& config, std::uint64_t seed) {
    const int M = config.cells_per_sat;
    std::vector<BeamArm> arms;
    if (config.beam_mode == BeamMode::full) {
        BeamArm all;
        all.cells.resize(M);
        std::iota(all.cells.begin(), all.cells.end(), 0);
        arms.push_back(all);
        return arms;
    }
    const int L = config.max_illuminated;
    const auto cap = static_cast<std::uint64_t>(config.beam_arm_cap);
    if (binomial(M, L) <= cap) {
        for (auto& cells : all_subsets(M, L)) arms.push_back({std::move(cells)});
        return arms;
    }
    auto rng = make_rng(seed, stream::catalog, 1);
    std::set<std::vector<int>> picked;
    while (picked.size() < cap) picked.insert(random_subset(rng, M, L));
    for (const auto& cells : picked) arms.push_back({cells});
    return arms;
}

std::vector<ChannelArm> build_channel_arms(const ScenarioConfig& config, std::uint64_t seed) {
    const int S = config.sub_channels;
    const int slots = config.beam_slots();
    const auto cap = static_cast<std::uint64_t>(config.channel_arm_cap);

    ChannelArm round_robin;
    for (int s = 0; s < S; ++s) round_robin.slot_of.push_back(s % slots);

    std::vector<ChannelArm> arms{round_robin};
    auto push_unique = [&](ChannelArm arm) {
        if (arm.slot_of != round_robin.slot_of) arms.push_back(std::move(arm));
    };

    const std::uint64_t count = binomial(S - 1, slots - 1);
    if (count < cap) {
        for (const auto& sizes : contiguous_compositions(S, slots)) push_unique(channel_arm_from_sizes(sizes));
        return arms;
    }
    auto rng = make_rng(seed, stream::catalog, 2);
    std::set<std::vector<int>> picked;
    while (picked.size() + 1 < cap) {
        auto cuts = random_subset(rng, S - 1, slots - 1);
        auto sizes = composition_from_cuts(cuts, S);
        if (channel_arm_from_sizes(sizes).slot_of == round_robin.slot_of) continue;
        picked.insert(std::move(sizes));
    }
    for (const auto& sizes : picked) arms.push_back(channel_arm_from_sizes(sizes));
    return arms;
}

std::vector<PowerArm> build_power_arms(const ScenarioConfig& config, std::uint64_t seed) {
    const int slots = config.beam_slots();
    const double p_beam = config.p_beam_w();
    const double budget = config.p_leo_w() * (1.0 + 1e-12);

    std::vector<double> levels;
    for (double step : config.power_steps_db) levels.push_back(p_beam * std::pow(10.0, -step / 10.0));
    std::sort(levels.begin(), levels.end(), std::greater<>());
    levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
    if (config.power_allow_off) levels.push_back(0.0);
    const int options = static_cast<int>(levels.size());

    auto to_arm = [&](const std::vector<int>& digits) {
        PowerArm arm;
        for (int d : digits) arm.watts.push_back(levels[d]);
        return arm;
    };
    auto feasible = [&](const std::vector<int>& digits) {
        double total = 0.0;
        for (int d : digits) total += levels[d];
        return total <= budget;
    };

    // Highest uniform level within the per-LEO budget.
    std::vector<int> anchor;
    for (int d = 0; d < options; ++d) {
        std::vector<int> uniform(slots, d);
        if (levels[d] > 0.0 && feasible(uniform)) {
            anchor = uniform;
            break;
        }
    }
    if (anchor.empty()) throw ConfigError("p_leo_dbm: no power level fits every illuminated beam within the per-LEO budget");

    const auto cap = static_cast<std::uint64_t>(config.power_arm_cap);
    std::vector<PowerArm> arms{to_arm(anchor)};

    std::uint64_t total = 1;
    for (int i = 0; i < slots && total != kSaturated; ++i) {
        total = total > kSaturated / options ? kSaturated : total * options;
    }

    if (total <= cap) {
        std::vector<int> digits(slots, 0);
        for (std::uint64_t code = 0; code < total; ++code) {
            std::uint64_t rest = code;
            for (int i = slots - 1; i >= 0; --i) {
                digits[i] = static_cast<int>(rest % options);
                rest /= options;
            }
            if (digits != anchor && feasible(digits)) arms.push_back(to_arm(digits));
        }
        return arms;
    }

    auto rng = make_rng(seed, stream::catalog, 3);
    std::set<std::vector<int>> seen{anchor};
    const std::uint64_t max_attempts = 64 * cap;
    for (std::uint64_t attempt = 0; attempt < max_attempts && arms.size() < cap; ++attempt) {
        std::vector<int> digits(slots);
        for (auto& d : digits) d = static_cast<int>(uniform_index(rng, static_cast<std::size_t>(options)));
        if (!feasible(digits) || !seen.insert(digits).second) continue;
        arms.push_back(to_arm(digits));
    }
    return arms;
}

template <typename Range>
std::string join(const Range& values, char separator) {
    std::ostringstream out;
    bool first = true;
    for (const auto& v : values) {
        if (!first) out << separator;
        out << v;
        first = false;
    }
    return out.str();
}

}  // namespace

std::uint64_t binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    k = std::min(k, n - k);
    std::uint64_t result = 1;
    for (int i = 1; i <= k; ++i) {
        const std::uint64_t factor = static_cast<std::uint64_t>(n - k + i);
        if (result > kSaturated / factor) return kSaturated;
        result = result * factor / static_cast<std::uint64_t>(i);
    }
    return result;
}

std::vector<std::vector<int>> contiguous_compositions(int total, int parts) {
    std::vector<std::vector<int>> out;
    if (parts < 1 || total < parts) return out;
    if (parts == 1) return {{total}};
    for (const auto& cuts : all_subsets(total - 1, parts - 1)) out.push_back(composition_from_cuts(cuts, total));
    return out;
}

ArmCatalog build_catalog(const ScenarioConfig& config, std::uint64_t seed) {
    validate(config);
    ArmCatalog catalog;
    catalog.slots = config.beam_slots();
    catalog.cells = config.cells_per_sat;
    catalog.sub_channels = config.sub_channels;
    catalog.beam = build_beam_arms(config, seed);
    catalog.channel = build_channel_arms(config, seed);
    catalog.power = build_power_arms(config, seed);
    return catalog;
}

std::string describe_power_arm(const PowerArm& arm) {
    std::vector<std::string> parts;
    for (double w : arm.watts) {
        std::ostringstream s;
        if (w > 0.0) {
            s << watts_to_dbm(w);
        } else {
            s << "off";
        }
        parts.push_back(s.str());
    }
    return join(parts, ' ');
}

std::string describe_beam_arm(const BeamArm& arm) { return join(arm.cells, ' '); }

std::string describe_channel_arm(const ChannelArm& arm) { return join(arm.slot_of, ' '); }

void decode_into(AllocationPolicy& policy, int n, const ArmTriple& arms, const NetworkSnapshot& snapshot,
                 const ArmCatalog& catalog) {
    policy.clear_satellite(n);
    const BeamArm& beam = catalog.beam.at(arms.beam);
    const ChannelArm& channel = catalog.channel.at(arms.channel);
    const PowerArm& power = catalog.power.at(arms.power);

    std::vector<int> subs;
    std::vector<int> users;
    for (int slot = 0; slot < static_cast<int>(beam.cells.size()); ++slot) {
        const int m = beam.cells[slot];
        subs.clear();
        for (int s = 0; s < catalog.sub_channels; ++s) {
            if (channel.slot_of[s] == slot) subs.push_back(s);
        }
        if (subs.empty()) continue;
        for (int s : subs) policy.rho(n, m, s) = 1;

        users.clear();
        for (int u = 0; u < snapshot.num_users(); ++u) {
            if (snapshot.kappa(n, m, u)) users.push_back(u);
        }
        if (users.empty()) continue;

        const double per_sub = power.watts[slot] / static_cast<double>(subs.size());
        for (std::size_t j = 0; j < subs.size(); ++j) {
            const int u = users[j % users.size()];
            policy.phi(n, m, u) = 1;
            policy.power(n, m, u, subs[j]) = per_sub;
        }
    }
}

AllocationPolicy decode(const std::vector<ArmTriple>& arms, const NetworkSnapshot& snapshot,
                        const ArmCatalog& catalog, const ScenarioConfig& config) {
    AllocationPolicy policy(snapshot.num_sats(), catalog.cells, snapshot.num_users(), config.sub_channels);
    for (int n = 0; n < snapshot.num_sats(); ++n) decode_into(policy, n, arms.at(n), snapshot, catalog);
    return policy;
}

std::vector<Violation> validate_policy(const AllocationPolicy& policy, const ScenarioConfig& config) {
    const int N = policy.num_sats();
    const int M = policy.num_cells();
    const int U = policy.num_users();
    const int S = policy.num_sub_channels();
    const double leo_budget = config.p_leo_w() * (1.0 + 1e-12);
    const double beam_budget = config.p_beam_w() * (1.0 + 1e-12);

    std::vector<Violation> out;
    auto fail = [&](const char* id, std::vector<int> index, std::string detail) {
        out.push_back({id, std::move(index), std::move(detail)});
    };

    for (int n = 0; n < N; ++n) {
        double total = 0.0;
        for (int m = 0; m < M; ++m)
            for (int u = 0; u < U; ++u)
                for (int s = 0; s < S; ++s) total += policy.power(n, m, u, s);
        if (total < 0.0 || total > leo_budget) fail("C1", {n}, "per-LEO power " + std::to_string(total) + " W");
    }
    for (int n = 0; n < N; ++n) {
        for (int m = 0; m < M; ++m) {
            double total = 0.0;
            for (int u = 0; u < U; ++u)
                for (int s = 0; s < S; ++s) total += policy.power(n, m, u, s);
            if (total < 0.0 || total > beam_budget) fail("C2", {n, m}, "per-beam power " + std::to_string(total) + " W");
        }
    }
    for (int u = 0; u < U; ++u) {
        int beams = 0;
        for (int n = 0; n < N; ++n)
            for (int m = 0; m < M; ++m) beams += policy.phi(n, m, u);
        if (beams > 1) fail("C3", {u}, std::to_string(beams) + " serving beams");
    }
    for (int n = 0; n < N; ++n) {
        for (int s = 0; s < S; ++s) {
            int beams = 0;
            for (int m = 0; m < M; ++m) beams += policy.rho(n, m, s);
            if (beams > 1) fail("C4", {n, s}, "sub-channel on " + std::to_string(beams) + " beams");
        }
    }
    for (int n = 0; n < N; ++n) {
        for (int m = 0; m < M; ++m) {
            for (int u = 0; u < U; ++u) {
                if (!policy.phi(n, m, u)) continue;
                int count = 0;
                for (int s = 0; s < S; ++s) count += policy.phi(n, m, u) * policy.rho(n, m, s);
                if (count < 1 || count > S) fail("C5", {n, m, u}, std::to_string(count) + " sub-channels");
            }
        }
    }
    for (int n = 0; n < N; ++n)
        for (int m = 0; m < M; ++m)
            for (int u = 0; u < U; ++u)
                if (policy.phi(n, m, u) > 1) fail("C6", {n, m, u}, "non-binary beam indicator");
    for (int n = 0; n < N; ++n)
        for (int m = 0; m < M; ++m)
            for (int s = 0; s < S; ++s)
                if (policy.rho(n, m, s) > 1) fail("C7", {n, m, s}, "non-binary channel indicator");
    for (int n = 0; n < N; ++n) {
        for (int m = 0; m < M; ++m) {
            for (int u = 0; u < U; ++u) {
                for (int s = 0; s < S; ++s) {
                    const double p = policy.power(n, m, u, s);
                    const bool served = policy.phi(n, m, u) == 1 && policy.rho(n, m, s) == 1;
                    if (p < 0.0 || (p != 0.0 && !served)) fail("PG", {n, m, u, s}, "power on unserved link");
                }
            }
        }
    }
    return out;
}

}  // namespace leo
