#include "leo/geometry.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <random>
#include <string>

#include "leo/random.hpp"

namespace leo {
namespace {

using Eigen::Vector2d;
using Eigen::Vector3d;

struct TangentFrame {
    Vector3d origin;  // ground point
    Vector3d up;
    Vector3d e1;
    Vector3d e2;
};

Vector3d any_tangent(const Vector3d& up) {
    Vector3d east = Vector3d::UnitZ().cross(up);
    if (east.norm() < 1e-9) east = Vector3d::UnitY().cross(up);
    return east.normalized();
}

Vector3d nadir_point(const Vector3d& position, GeometryMode mode) {
    if (mode == GeometryMode::planar) return {position.x(), position.y(), 0.0};
    return kEarthRadius * position.normalized();
}

Vector3d up_at(const Vector3d& ground, GeometryMode mode) {
    return mode == GeometryMode::planar ? Vector3d::UnitZ() : ground.normalized();
}

// Frame at a satellite's nadir with e1 along-track and e2 cross-track.
TangentFrame satellite_frame(const SatelliteState& sat, GeometryMode mode) {
    TangentFrame f;
    f.origin = nadir_point(sat.position, mode);
    f.up = up_at(f.origin, mode);
    Vector3d along = sat.velocity - sat.velocity.dot(f.up) * f.up;
    f.e1 = along.norm() > 0.0 ? along.normalized() : any_tangent(f.up);
    f.e2 = f.up.cross(f.e1);
    return f;
}

TangentFrame ground_frame(const Vector3d& ground, GeometryMode mode) {
    TangentFrame f;
    f.origin = ground;
    f.up = up_at(ground, mode);
    f.e1 = mode == GeometryMode::planar ? Vector3d::UnitX() : any_tangent(f.up);
    f.e2 = f.up.cross(f.e1);
    return f;
}

// Ground point reached by walking `offset` meters from the frame origin.
Vector3d ground_offset(const TangentFrame& f, const Vector2d& offset, GeometryMode mode) {
    if (mode == GeometryMode::planar) return f.origin + offset.x() * f.e1 + offset.y() * f.e2;
    const double r = offset.norm();
    if (r == 0.0) return f.origin;
    const Vector3d dir = (offset.x() * f.e1 + offset.y() * f.e2) / r;
    const double arc = r / kEarthRadius;
    return kEarthRadius * (std::cos(arc) * f.up + std::sin(arc) * dir);
}

double ground_distance(const Vector3d& a, const Vector3d& b, GeometryMode mode) {
    if (mode == GeometryMode::planar) return (a - b).norm();
    return kEarthRadius * angle_between(a, b);
}

void rotate_state(Vector3d& position, Vector3d& velocity, double dt) {
    const double speed = velocity.norm();
    if (speed == 0.0 || dt == 0.0) return;
    const Vector3d axis = position.cross(velocity).normalized();
    const Eigen::AngleAxisd rotation(speed / position.norm() * dt, axis);
    position = rotation * position;
    velocity = rotation * velocity;
}

void refresh_cells(NetworkSnapshot& snap, const ScenarioConfig& config) {
    const auto offsets = hex_offsets(config.cells_per_sat, cell_pitch_m(config));
    const int cells = config.cells_per_sat;
    snap.cells_per_sat = cells;
    snap.cell_centers.resize(static_cast<std::size_t>(snap.num_sats()) * cells);
    snap.boresights.resize(snap.cell_centers.size());
    for (int n = 0; n < snap.num_sats(); ++n) {
        const TangentFrame frame = satellite_frame(snap.sats[n], config.geometry);
        for (int m = 0; m < cells; ++m) {
            const int k = snap.cell_index(n, m);
            snap.cell_centers[k] = ground_offset(frame, offsets[m], config.geometry);
            snap.boresights[k] = (snap.cell_centers[k] - snap.sats[n].position).normalized();
        }
    }
}

void refresh_boresights(NetworkSnapshot& snap) {
    for (int n = 0; n < snap.num_sats(); ++n) {
        for (int m = 0; m < snap.cells_per_sat; ++m) {
            const int k = snap.cell_index(n, m);
            snap.boresights[k] = (snap.cell_centers[k] - snap.sats[n].position).normalized();
        }
    }
}

void refresh_assignment(NetworkSnapshot& snap, const ScenarioConfig& config) {
    const double serving = config.serving_radius_km * 1e3 * (1.0 + 1e-12);
    std::vector<Vector3d> nadirs;
    for (const auto& sat : snap.sats) nadirs.push_back(nadir_point(sat.position, config.geometry));

    snap.serving_cell.assign(snap.users.size(), kUnassigned);
    for (int u = 0; u < snap.num_users(); ++u) {
        const Vector3d& p = snap.users[u].position;
        double best = std::numeric_limits<double>::infinity();
        for (int n = 0; n < snap.num_sats(); ++n) {
            if (ground_distance(p, nadirs[n], config.geometry) > serving) continue;
            for (int m = 0; m < snap.cells_per_sat; ++m) {
                const int k = snap.cell_index(n, m);
                const double d = ground_distance(p, snap.cell_centers[k], config.geometry);
                if (d < best) {
                    best = d;
                    snap.serving_cell[u] = k;
                }
            }
        }
    }
}

// Along-track / cross-track ground offsets and orbit plane of every satellite.
struct Slot {
    Vector2d offset;
    int plane;
};

std::vector<Slot> satellite_slots(const ScenarioConfig& config) {
    const int count = config.num_satellites;
    const double d = config.inter_sat_distance_km * 1e3;
    std::vector<Slot> slots;
    if (config.topology == OrbitTopology::homogeneous) {
        for (int i = 0; i < count; ++i) slots.push_back({{i * d, 0.0}, 0});
    } else {
        // At most two satellites per plane; adjacent planes are one spacing
        // apart cross-track and staggered by one spacing along-track.
        const int planes = count == 1 ? 1 : std::max(2, (count + 1) / 2);
        for (int i = 0; i < count; ++i) {
            const int plane = i % planes;
            const int rank = i / planes;
            slots.push_back({{rank * 2.0 * d + (plane % 2) * d, plane * d}, plane});
        }
    }
    Vector2d mean = Vector2d::Zero();
    for (const auto& s : slots) mean += s.offset;
    mean /= static_cast<double>(count);
    for (auto& s : slots) s.offset -= mean;
    return slots;
}

void place_users(NetworkSnapshot& snap, const ScenarioConfig& config) {
    auto rng = make_rng(config.seed, stream::users);
    const GeometryMode mode = config.geometry;

    std::vector<Vector3d> centers;
    double radius = 0.0;
    if (config.placement == UserPlacement::cells) {
        centers = snap.cell_centers;
        radius = config.beam_radius_km * 1e3;
    } else {
        for (const auto& sat : snap.sats) centers.push_back(nadir_point(sat.position, mode));
        radius = config.serving_radius_km * 1e3;
    }

    // Uniform over the union of disks: pick a disk, a point in it, and accept
    // with probability 1 / (number of disks covering the point).
    auto covering = [&](const Vector3d& p) {
        int count = 0;
        for (const auto& c : centers) count += ground_distance(p, c, mode) <= radius * (1.0 + 1e-12);
        return std::max(count, 1);
    };

    snap.users.clear();
    while (snap.num_users() < config.num_users) {
        const auto disk = uniform_index(rng, centers.size());
        const double r = radius * std::sqrt(uniform01(rng));
        const double phi = 2.0 * kPi * uniform01(rng);
        const TangentFrame frame = ground_frame(centers[disk], mode);
        const Vector3d p = ground_offset(frame, {r * std::cos(phi), r * std::sin(phi)}, mode);
        if (uniform01(rng) * covering(p) > 1.0) continue;

        const double heading = 2.0 * kPi * uniform01(rng);
        const TangentFrame at_user = ground_frame(p, mode);
        UserState user;
        user.position = p;
        user.velocity = config.user_speed_ms * (std::cos(heading) * at_user.e1 + std::sin(heading) * at_user.e2);
        snap.users.push_back(user);
    }
}

}  // namespace

double angle_between(const Vector3d& a, const Vector3d& b) {
    return std::atan2(a.cross(b).norm(), a.dot(b));
}

double cell_pitch_m(const ScenarioConfig& config) {
    return 2.0 * config.beam_radius_km * 1e3 * (std::sqrt(3.0) / 2.0);
}

std::vector<Vector2d> hex_offsets(int count, double pitch) {
    // Corner directions of a hexagonal ring, counter-clockwise.
    std::array<Vector2d, 6> corner;
    for (int i = 0; i < 6; ++i) corner[i] = {std::cos(i * kPi / 3.0), std::sin(i * kPi / 3.0)};

    std::vector<Vector2d> out;
    out.reserve(count);
    if (count > 0) out.push_back(Vector2d::Zero());
    for (int ring = 1; static_cast<int>(out.size()) < count; ++ring) {
        for (int side = 0; side < 6 && static_cast<int>(out.size()) < count; ++side) {
            const Vector2d start = ring * pitch * corner[side];
            const Vector2d step = pitch * (corner[(side + 2) % 6]);
            for (int j = 0; j < ring && static_cast<int>(out.size()) < count; ++j) out.push_back(start + j * step);
        }
    }
    return out;
}

NetworkSnapshot build_constellation(const ScenarioConfig& config) {
    validate(config);

    const auto offsets = hex_offsets(config.cells_per_sat, cell_pitch_m(config));
    const double serving = config.serving_radius_km * 1e3;
    const double beam = config.beam_radius_km * 1e3;
    for (const auto& o : offsets) {
        if (o.norm() - beam > serving * (1.0 + 1e-12)) {
            throw ConfigError("beam_radius_km: outer cell ring at " + std::to_string(o.norm() / 1e3) +
                              " km lies entirely outside serving_radius_km " +
                              std::to_string(config.serving_radius_km));
        }
    }

    NetworkSnapshot snap;
    snap.cells_per_sat = config.cells_per_sat;
    const double h = config.altitude_km * 1e3;
    const double v = config.sat_speed_kms * 1e3;
    const TangentFrame reference = ground_frame({kEarthRadius, 0.0, 0.0}, config.geometry);
    for (const auto& slot : satellite_slots(config)) {
        SatelliteState sat;
        sat.orbit_plane = slot.plane;
        if (config.geometry == GeometryMode::planar) {
            sat.position = {slot.offset.x(), slot.offset.y(), h};
            sat.velocity = {v, 0.0, 0.0};
        } else {
            const Vector3d ground = ground_offset(reference, slot.offset, config.geometry);
            const Vector3d up = ground.normalized();
            const Vector3d east = (reference.e1 - reference.e1.dot(up) * up).normalized();
            sat.position = (kEarthRadius + h) * up;
            sat.velocity = v * east;
        }
        snap.sats.push_back(sat);
    }

    refresh_cells(snap, config);
    place_users(snap, config);
    refresh_assignment(snap, config);
    return snap;
}

NetworkSnapshot propagate(const NetworkSnapshot& snapshot, const ScenarioConfig& config, double dt_s) {
    if (dt_s == 0.0) return snapshot;
    NetworkSnapshot next = snapshot;
    next.time_s += dt_s;
    if (config.geometry == GeometryMode::planar) {
        for (auto& sat : next.sats) sat.position += sat.velocity * dt_s;
        for (auto& user : next.users) user.position += user.velocity * dt_s;
    } else {
        for (auto& sat : next.sats) rotate_state(sat.position, sat.velocity, dt_s);
        for (auto& user : next.users) rotate_state(user.position, user.velocity, dt_s);
    }
    if (config.earth_fixed_cells) {
        refresh_boresights(next);
    } else {
        refresh_cells(next, config);
    }
    refresh_assignment(next, config);
    return next;
}

NetworkSnapshot snapshot_at(const NetworkSnapshot& initial, const ScenarioConfig& config, std::int64_t t) {
    return propagate(initial, config, static_cast<double>(t) * config.time_step_s);
}

double off_boresight_angle(const NetworkSnapshot& snapshot, int n, int m, int u) {
    const Vector3d to_user = snapshot.users[u].position - snapshot.sats[n].position;
    return angle_between(snapshot.boresights[snapshot.cell_index(n, m)], to_user);
}

double slant_distance(const NetworkSnapshot& snapshot, int n, int /*m*/, int u) {
    return (snapshot.users[u].position - snapshot.sats[n].position).norm();
}

double relative_velocity(const NetworkSnapshot& snapshot, int n, int u) {
    const Vector3d r = snapshot.users[u].position - snapshot.sats[n].position;
    const double d = r.norm();
    if (d == 0.0) {
        throw GeometryError("satellite " + std::to_string(n) + " and user " + std::to_string(u) + " are co-located");
    }
    const Vector3d dv = snapshot.users[u].velocity - snapshot.sats[n].velocity;
    return std::abs(r.dot(dv)) / d;
}

}  // namespace leo
