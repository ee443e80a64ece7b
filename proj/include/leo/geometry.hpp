#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "leo/config.hpp"

namespace leo {

class GeometryError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct SatelliteState {
    Eigen::Vector3d position;  // m
    Eigen::Vector3d velocity;  // m/s
    int orbit_plane = 0;
};

struct UserState {
    Eigen::Vector3d position;  // m, on the ground
    Eigen::Vector3d velocity;  // m/s, tangent to the ground
};

inline constexpr int kUnassigned = -1;

// Positions of every satellite, user and beam cell at one instant, plus the
// user-to-cell map. Cell (n, m) is stored at flat index n * cells_per_sat + m.
struct NetworkSnapshot {
    double time_s = 0.0;
    int cells_per_sat = 0;
    std::vector<SatelliteState> sats;
    std::vector<UserState> users;
    std::vector<Eigen::Vector3d> cell_centers;  // ground points
    std::vector<Eigen::Vector3d> boresights;    // unit vectors from satellite to cell center
    std::vector<int> serving_cell;              // per user: flat cell index or kUnassigned

    int num_sats() const { return static_cast<int>(sats.size()); }
    int num_users() const { return static_cast<int>(users.size()); }
    int cell_index(int n, int m) const { return n * cells_per_sat + m; }

    // kappa[n, m, u]
    bool kappa(int n, int m, int u) const { return serving_cell[u] == cell_index(n, m); }
};

// Hexagonal cell-center offsets (along-track, cross-track) in meters, ring by
// ring starting from the center cell. Neighbouring centers are `pitch` apart.
std::vector<Eigen::Vector2d> hex_offsets(int count, double pitch);

double cell_pitch_m(const ScenarioConfig& config);

NetworkSnapshot build_constellation(const ScenarioConfig& config);

// Advances every satellite and user by dt seconds and recomputes boresights and
// the user-to-cell map. Earth-fixed cells keep their ground centers; otherwise
// the cell layout moves with its satellite. Planar mode moves in straight lines;
// spherical mode rotates along great circles.
NetworkSnapshot propagate(const NetworkSnapshot& snapshot, const ScenarioConfig& config, double dt_s);

// Snapshot at iteration t, i.e. t * time_step_s after `initial`.
NetworkSnapshot snapshot_at(const NetworkSnapshot& initial, const ScenarioConfig& config, std::int64_t t);

double off_boresight_angle(const NetworkSnapshot& snapshot, int n, int m, int u);
double slant_distance(const NetworkSnapshot& snapshot, int n, int m, int u);

// Magnitude of the range rate between satellite n and user u.
double relative_velocity(const NetworkSnapshot& snapshot, int n, int u);

// Angle between two directions, in [0, pi].
double angle_between(const Eigen::Vector3d& a, const Eigen::Vector3d& b);

}  // namespace leo
