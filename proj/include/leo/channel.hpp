#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <cstdint>
#include <vector>

#include "leo/bessel.hpp"
#include "leo/config.hpp"
#include "leo/geometry.hpp"

namespace leo {

// Aperture beam pattern: peak gain on boresight, an Airy main lobe and side
// lobes out to theta_max, nothing beyond.
struct BeamPattern {
    double peak_gain = 1.0;  // linear
    double ka = 1.0;         // wave number times aperture radius
    double theta_max = kPi;  // rad

    static BeamPattern from_config(const ScenarioConfig& config);
};

template <typename Scalar>
Scalar beam_gain(Scalar theta, Scalar psi, const BeamPattern& pattern) {
    const Scalar offset = theta - psi;
    if (offset == Scalar(0)) return Scalar(pattern.peak_gain);
    if (std::abs(offset) > Scalar(pattern.theta_max)) return Scalar(0);
    const Scalar x = Scalar(pattern.ka) * std::sin(offset);
    const Scalar ratio = bessel_j1_over_x(x);
    return Scalar(pattern.peak_gain) * Scalar(4) * ratio * ratio;
}

double beam_gain(double theta, double psi, const ScenarioConfig& config);

struct LossTerms {
    double shadow_db = 0.0;
    double clutter_db = 0.0;
    double atmospheric_db = 0.0;
    double scintillation_db = 0.0;

    static LossTerms from_config(const ScenarioConfig& config);  // mean shadowing
    double total_db() const { return shadow_db + clutter_db + atmospheric_db + scintillation_db; }
};

// Free-space loss plus the additive surrogate terms. Throws std::domain_error
// for d <= 0.
double pathloss_db(double distance_m, double frequency_hz, const LossTerms& terms);
double pathloss_db(double distance_m, double frequency_hz, const ScenarioConfig& config);

// Center frequency of sub-channel s (0-based) on the uniform grid over the band.
double sub_channel_frequency(const ScenarioConfig& config, int s);

// Decoded allocation (P, phi, rho) for the whole network.
class AllocationPolicy {
public:
    AllocationPolicy() = default;
    AllocationPolicy(int sats, int cells, int users, int sub_channels);

    int num_sats() const { return sats_; }
    int num_cells() const { return cells_; }
    int num_users() const { return users_; }
    int num_sub_channels() const { return subs_; }

    double& power(int n, int m, int u, int s) { return power_[power_index(n, m, u, s)]; }
    double power(int n, int m, int u, int s) const { return power_[power_index(n, m, u, s)]; }
    std::uint8_t& phi(int n, int m, int u) { return phi_[phi_index(n, m, u)]; }
    std::uint8_t phi(int n, int m, int u) const { return phi_[phi_index(n, m, u)]; }
    std::uint8_t& rho(int n, int m, int s) { return rho_[rho_index(n, m, s)]; }
    std::uint8_t rho(int n, int m, int s) const { return rho_[rho_index(n, m, s)]; }

    const Eigen::ArrayXd& powers() const { return power_; }

    // Clears every entry for satellite n.
    void clear_satellite(int n);

private:
    std::size_t power_index(int n, int m, int u, int s) const {
        return ((static_cast<std::size_t>(n) * cells_ + m) * users_ + u) * subs_ + s;
    }
    std::size_t phi_index(int n, int m, int u) const { return (static_cast<std::size_t>(n) * cells_ + m) * users_ + u; }
    std::size_t rho_index(int n, int m, int s) const { return (static_cast<std::size_t>(n) * cells_ + m) * subs_ + s; }

    int sats_ = 0;
    int cells_ = 0;
    int users_ = 0;
    int subs_ = 0;
    Eigen::ArrayXd power_;
    std::vector<std::uint8_t> phi_;
    std::vector<std::uint8_t> rho_;
};

// Geometry-derived link quantities for one snapshot, computed once and read
// only afterwards.
class LinkEnvironment {
public:
    LinkEnvironment(const NetworkSnapshot& snapshot, const ScenarioConfig& config);

    int num_sats() const { return sats_; }
    int num_cells() const { return cells_; }
    int num_users() const { return users_; }
    int num_sub_channels() const { return subs_; }

    // Transmit gain of beam (n, m) toward user u, linear.
    double tx_gain(int n, int m, int u) const { return tx_gain_(n * cells_ + m, u); }
    // Channel gain H[n, m, u, s]; independent of m.
    double channel_gain(int n, int /*m*/, int u, int s) const {
        return channel_[(static_cast<std::size_t>(n) * users_ + u) * subs_ + s];
    }
    double radial_speed(int n, int u) const { return radial_speed_(n, u); }
    double frequency(int s) const { return freqs_[s]; }
    double rx_gain() const { return rx_gain_; }
    double noise_power() const { return noise_; }
    double eta() const { return eta_; }
    double sub_channel_bandwidth() const { return sub_bw_; }
    double bandwidth() const { return bw_; }

private:
    int sats_ = 0;
    int cells_ = 0;
    int users_ = 0;
    int subs_ = 0;
    Eigen::MatrixXd tx_gain_;
    std::vector<double> channel_;
    Eigen::MatrixXd radial_speed_;
    Eigen::VectorXd freqs_;
    double rx_gain_ = 1.0;
    double noise_ = 0.0;
    double eta_ = 0.0;
    double sub_bw_ = 0.0;
    double bw_ = 0.0;
};

double interference_ibi(const LinkEnvironment& env, const AllocationPolicy& policy, int n, int m, int u, int s);
double interference_isi(const LinkEnvironment& env, const AllocationPolicy& policy, int n, int m, int u, int s);
double interference_doppler(const LinkEnvironment& env, const AllocationPolicy& policy, int n, int m, int u, int s);

// Zero for links that are not served (phi or rho unset).
double sinr(const LinkEnvironment& env, const AllocationPolicy& policy, int n, int m, int u, int s);

struct RateReport {
    Eigen::VectorXd per_leo;   // bit/s
    double total = 0.0;        // bit/s
    Eigen::VectorXd per_user;  // bit/s
};

// Network-wide throughput. Interference sums are factored through per-beam
// power totals so cost scales with the number of served links.
RateReport rates(const LinkEnvironment& env, const AllocationPolicy& policy);

}  // namespace leo
