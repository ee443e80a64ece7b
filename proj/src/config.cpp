#include "leo/config.hpp"

#include <algorithm>
#include <cmath>

#include "leo/bessel.hpp"

namespace leo {

std::string_view to_string(OrbitTopology v) {
    return v == OrbitTopology::homogeneous ? "homogeneous" : "heterogeneous";
}

std::string_view to_string(GeometryMode v) {
    return v == GeometryMode::planar ? "planar" : "spherical";
}

std::string_view to_string(UserPlacement v) {
    return v == UserPlacement::cells ? "cells" : "serving_disk";
}

std::string_view to_string(BeamMode v) {
    return v == BeamMode::allocate ? "BA" : "NBA";
}

double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }

double watts_to_dbm(double watts) { return 10.0 * std::log10(watts) + 30.0; }

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

double ScenarioConfig::theta_max() const {
    if (theta_max_rad > 0.0) return theta_max_rad;
    const double s = 3.0 * kJ1FirstRoot / (wave_number() * aperture_m());
    return std::asin(std::min(1.0, s));
}

double ScenarioConfig::p_leo_w() const { return dbm_to_watts(p_leo_dbm); }

double ScenarioConfig::p_beam_w() const { return dbm_to_watts(p_beam_dbm); }

double ScenarioConfig::noise_power_w() const {
    return dbm_to_watts(noise_psd_dbm_hz) * sub_channel_bandwidth_hz();
}

namespace {

void require(bool ok, const std::string& message) {
    if (!ok) throw ConfigError(message);
}

}  // namespace

void validate(const ScenarioConfig& c) {
    require(c.num_satellites >= 1, "num_satellites must be >= 1");
    require(c.num_users >= 0, "num_users must be >= 0");
    require(c.altitude_km > 0.0, "altitude_km must be positive");
    require(c.cells_per_sat >= 1, "cells_per_sat must be >= 1");
    require(c.max_illuminated > 0 && c.max_illuminated <= c.cells_per_sat,
            "max_illuminated out of (0, cells_per_sat]");
    require(c.sub_channels >= c.beam_slots(),
            "sub_channels must be >= number of illuminated beams (every beam needs a sub-channel)");
    require(c.beam_radius_km > 0.0, "beam_radius_km must be positive");
    require(c.inter_sat_distance_km >= 0.0, "inter_sat_distance_km must be >= 0");
    require(c.serving_radius_km > 0.0, "serving_radius_km must be positive");
    require(c.carrier_hz > 0.0, "carrier_hz must be positive");
    require(c.bandwidth_hz > 0.0, "bandwidth_hz must be positive");
    require(std::isfinite(c.p_leo_dbm), "p_leo_dbm must be finite");
    require(std::isfinite(c.p_beam_dbm), "p_beam_dbm must be finite");
    require(c.doppler_compensation >= 0.0 && c.doppler_compensation < 1.0,
            "doppler_compensation out of [0,1)");
    require(c.aperture_radius_m >= 0.0, "aperture_radius_m must be >= 0");
    require(c.theta_max_rad >= 0.0 && c.theta_max_rad <= kPi, "theta_max_rad out of [0,pi]");
    require(c.shadow_sigma_db >= 0.0, "shadow_sigma_db must be >= 0");
    require(c.sat_speed_kms >= 0.0, "sat_speed_kms must be >= 0");
    require(c.user_speed_ms >= 0.0, "user_speed_ms must be >= 0");
    require(c.time_step_s >= 0.0, "time_step_s must be >= 0");
    require(c.epsilon >= 0.0 && c.epsilon <= 1.0, "epsilon out of [0,1]");
    require(c.gamma_macro >= 0.0, "gamma_macro must be >= 0");
    require(c.gamma_micro >= 0.0, "gamma_micro must be >= 0");
    require(c.reward_scale > 0.0, "reward_scale must be positive");
    require(c.iterations >= 0, "iterations must be >= 0");
    require(c.power_arm_cap >= 1, "power_arm_cap must be >= 1");
    require(c.beam_arm_cap >= 1, "beam_arm_cap must be >= 1");
    require(c.channel_arm_cap >= 1, "channel_arm_cap must be >= 1");
    require(c.joint_arm_cap >= 1, "joint_arm_cap must be >= 1");
    require(!c.power_steps_db.empty(), "power_steps_db must not be empty");
    for (double step : c.power_steps_db) require(step >= 0.0, "power_steps_db entries must be >= 0");
    require(c.outage_threshold_bps >= 0.0, "outage_threshold_bps must be >= 0");
}

ScenarioConfig desk_scale(ScenarioConfig config) {
    config.num_satellites = 3;
    config.num_users = 30;
    config.cells_per_sat = 7;
    config.max_illuminated = 5;
    config.sub_channels = 8;
    config.iterations = 5000;
    return config;
}

}  // namespace leo
