#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace leo {

inline constexpr double kSpeedOfLight = 299792458.0;  // m/s
inline constexpr double kEarthRadius = 6371.0e3;      // m
inline constexpr double kPi = 3.14159265358979323846;

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class OrbitTopology { homogeneous, heterogeneous };
enum class GeometryMode { planar, spherical };
enum class UserPlacement { cells, serving_disk };
enum class BeamMode { allocate, full };  // BA / NBA

std::string_view to_string(OrbitTopology v);
std::string_view to_string(GeometryMode v);
std::string_view to_string(UserPlacement v);
std::string_view to_string(BeamMode v);

// Every physical, constellation and learning knob of one scenario. Defaults are
// the full-scale parameter table; desk_scale() shrinks a config for quick runs.
struct ScenarioConfig {
    // constellation
    int num_satellites = 4;
    double altitude_km = 1000.0;
    int cells_per_sat = 19;
    int max_illuminated = 15;
    double beam_radius_km = 50.0;
    double inter_sat_distance_km = 500.0;
    double serving_radius_km = 500.0;
    OrbitTopology topology = OrbitTopology::heterogeneous;
    GeometryMode geometry = GeometryMode::planar;
    UserPlacement placement = UserPlacement::cells;
    BeamMode beam_mode = BeamMode::allocate;
    bool earth_fixed_cells = true;  // false: cells travel with their satellite

    // radio
    int sub_channels = 30;
    double carrier_hz = 28.0e9;
    double bandwidth_hz = 240.0e6;
    double p_leo_dbm = 60.0;
    double p_beam_dbm = 40.0;
    double noise_psd_dbm_hz = -174.0;
    double doppler_compensation = 1.0e-12;  // eta, linear
    double tx_gain_dbi = 50.0;
    double rx_gain_dbi = 15.0;
    double aperture_radius_m = 0.0;  // 0 selects 10 wavelengths
    double theta_max_rad = 0.0;      // 0 selects three main-lobe half widths

    // pathloss surrogate terms (dB)
    double shadow_db = 0.0;
    double shadow_sigma_db = 0.0;
    double clutter_db = 0.0;
    double atmospheric_db = 0.5;
    double scintillation_db = 0.0;

    // users and motion
    int num_users = 100;
    double sat_speed_kms = 8.0;
    double user_speed_ms = 20.0;
    double time_step_s = 1.0e-3;

    // learning
    double epsilon = 0.2;
    double gamma_macro = 0.15;
    double gamma_micro = 0.15;
    double reward_scale = 1.0e-9;
    int iterations = 20000;
    int power_arm_cap = 512;
    int beam_arm_cap = 512;
    int channel_arm_cap = 512;
    int joint_arm_cap = 512;
    std::vector<double> power_steps_db{0.0, 3.0, 6.0, 10.0};  // below P_beam
    bool power_allow_off = true;

    double outage_threshold_bps = 50.0e6;
    std::uint64_t seed = 1;

    // derived quantities
    double sub_channel_bandwidth_hz() const { return bandwidth_hz / sub_channels; }
    double wavelength_m() const { return kSpeedOfLight / carrier_hz; }
    double aperture_m() const { return aperture_radius_m > 0.0 ? aperture_radius_m : 10.0 * wavelength_m(); }
    double wave_number() const { return 2.0 * kPi * carrier_hz / kSpeedOfLight; }
    double theta_max() const;
    double p_leo_w() const;
    double p_beam_w() const;
    double noise_power_w() const;
    int beam_slots() const { return beam_mode == BeamMode::full ? cells_per_sat : max_illuminated; }
};

// Throws ConfigError naming the first violated field.
void validate(const ScenarioConfig& config);

// Desk-scale overrides: three satellites, thirty users, one hexagonal ring.
ScenarioConfig desk_scale(ScenarioConfig config);

double dbm_to_watts(double dbm);
double watts_to_dbm(double watts);
double db_to_linear(double db);

}  // namespace leo
