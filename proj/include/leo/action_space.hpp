#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "leo/channel.hpp"
#include "leo/config.hpp"
#include "leo/geometry.hpp"

namespace leo {

// Per-slot transmit levels of the illuminated beams. Slot i is the i-th cell
// of the chosen beam arm.
struct PowerArm {
    std::vector<double> watts;  // 0 means the slot is switched off
};

// Illuminated cells, ascending.
struct BeamArm {
    std::vector<int> cells;
};

// Beam slot that each sub-channel is assigned to.
struct ChannelArm {
    std::vector<int> slot_of;
};

struct ArmTriple {
    int power = 0;
    int beam = 0;
    int channel = 0;

    auto operator<=>(const ArmTriple&) const = default;
};

// Arm pools shared by every satellite's power/beam/channel agents. Index 0 of
// the power pool is the uniform maximum feasible level and index 0 of the
// channel pool is the balanced round-robin assignment.
struct ArmCatalog {
    int slots = 0;
    int cells = 0;
    int sub_channels = 0;
    std::vector<PowerArm> power;
    std::vector<BeamArm> beam;
    std::vector<ChannelArm> channel;
};

// All compositions of `total` into `parts` positive block sizes, in
// lexicographic order.
std::vector<std::vector<int>> contiguous_compositions(int total, int parts);

std::uint64_t binomial(int n, int k);

ArmCatalog build_catalog(const ScenarioConfig& config, std::uint64_t seed);

std::string describe_power_arm(const PowerArm& arm);
std::string describe_beam_arm(const BeamArm& arm);
std::string describe_channel_arm(const ChannelArm& arm);

// Writes satellite n's share of the allocation into `policy` (previous
// contents for n are cleared). Users of an illuminated cell take its
// sub-channels round-robin by user index; users left without a sub-channel
// are not scheduled.
void decode_into(AllocationPolicy& policy, int n, const ArmTriple& arms, const NetworkSnapshot& snapshot,
                 const ArmCatalog& catalog);

AllocationPolicy decode(const std::vector<ArmTriple>& arms, const NetworkSnapshot& snapshot,
                        const ArmCatalog& catalog, const ScenarioConfig& config);

struct Violation {
    std::string constraint;  // C1..C7, or "PG" for power on an unserved link
    std::vector<int> index;
    std::string detail;
};

// Checks the per-LEO and per-beam power budgets (C1, C2), single serving
// beam per user (C3), single beam per sub-channel (C4), 1 <= sub-channels <= S
// for served pairs (C5), binary indicators (C6, C7), and that power appears
// only on served links (PG). An empty result means the policy is valid.
std::vector<Violation> validate_policy(const AllocationPolicy& policy, const ScenarioConfig& config);

}  // namespace leo
