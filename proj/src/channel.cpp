#include "leo/channel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "leo/random.hpp"

namespace leo {

BeamPattern BeamPattern::from_config(const ScenarioConfig& config) {
    return {db_to_linear(config.tx_gain_dbi), config.wave_number() * config.aperture_m(), config.theta_max()};
}

double beam_gain(double theta, double psi, const ScenarioConfig& config) {
    return beam_gain(theta, psi, BeamPattern::from_config(config));
}

LossTerms LossTerms::from_config(const ScenarioConfig& config) {
    return {config.shadow_db, config.clutter_db, config.atmospheric_db, config.scintillation_db};
}

double pathloss_db(double distance_m, double frequency_hz, const LossTerms& terms) {
    if (!(distance_m > 0.0)) throw std::domain_error("pathloss_db: distance must be positive, got " + std::to_string(distance_m));
    return 20.0 * std::log10(4.0 * kPi * distance_m * frequency_hz / kSpeedOfLight) + terms.total_db();
}

double pathloss_db(double distance_m, double frequency_hz, const ScenarioConfig& config) {
    return pathloss_db(distance_m, frequency_hz, LossTerms::from_config(config));
}

double sub_channel_frequency(const ScenarioConfig& config, int s) {
    const double ws = config.sub_channel_bandwidth_hz();
    return config.carrier_hz - config.bandwidth_hz / 2.0 + (s + 0.5) * ws;
}

AllocationPolicy::AllocationPolicy(int sats, int cells, int users, int sub_channels)
    : sats_(sats),
      cells_(cells),
      users_(users),
      subs_(sub_channels),
      power_(Eigen::ArrayXd::Zero(static_cast<Eigen::Index>(sats) * cells * users * sub_channels)),
      phi_(static_cast<std::size_t>(sats) * cells * users, 0),
      rho_(static_cast<std::size_t>(sats) * cells * sub_channels, 0) {}

void AllocationPolicy::clear_satellite(int n) {
    const auto per_sat_power = static_cast<Eigen::Index>(cells_) * users_ * subs_;
    power_.segment(n * per_sat_power, per_sat_power).setZero();
    const auto per_sat_phi = static_cast<std::size_t>(cells_) * users_;
    std::fill_n(phi_.begin() + n * per_sat_phi, per_sat_phi, 0);
    const auto per_sat_rho = static_cast<std::size_t>(cells_) * subs_;
    std::fill_n(rho_.begin() + n * per_sat_rho, per_sat_rho, 0);
}

LinkEnvironment::LinkEnvironment(const NetworkSnapshot& snapshot, const ScenarioConfig& config)
    : sats_(snapshot.num_sats()),
      cells_(snapshot.cells_per_sat),
      users_(snapshot.num_users()),
      subs_(config.sub_channels),
      tx_gain_(sats_ * cells_, users_),
      channel_(static_cast<std::size_t>(sats_) * users_ * subs_),
      radial_speed_(sats_, users_),
      freqs_(subs_),
      rx_gain_(db_to_linear(config.rx_gain_dbi)),
      noise_(config.noise_power_w()),
      eta_(config.doppler_compensation),
      sub_bw_(config.sub_channel_bandwidth_hz()),
      bw_(config.bandwidth_hz) {
    const BeamPattern pattern = BeamPattern::from_config(config);
    for (int s = 0; s < subs_; ++s) freqs_[s] = sub_channel_frequency(config, s);

    for (int n = 0; n < sats_; ++n) {
        for (int m = 0; m < cells_; ++m) {
            for (int u = 0; u < users_; ++u) {
                tx_gain_(n * cells_ + m, u) = beam_gain(off_boresight_angle(snapshot, n, m, u), 0.0, pattern);
            }
        }
    }

    const LossTerms mean_terms = LossTerms::from_config(config);
    for (int n = 0; n < sats_; ++n) {
        for (int u = 0; u < users_; ++u) {
            LossTerms terms = mean_terms;
            if (config.shadow_sigma_db > 0.0) {
                auto rng = make_rng(config.seed, stream::shadowing, n, u);
                terms.shadow_db += config.shadow_sigma_db * standard_normal(rng);
            }
            const double d = slant_distance(snapshot, n, 0, u);
            for (int s = 0; s < subs_; ++s) {
                channel_[(static_cast<std::size_t>(n) * users_ + u) * subs_ + s] =
                    std::pow(10.0, -pathloss_db(d, freqs_[s], terms) / 10.0);
            }
            radial_speed_(n, u) = relative_velocity(snapshot, n, u);
        }
    }
}

namespace {

// Interference at victim (n, m, u, s) from satellite `from`, summed over its
// beams and users u' != u. The victim's own beam is skipped; beam indices on
// other satellites name different beams, so none are skipped there.
double interference_from(const LinkEnvironment& env, const AllocationPolicy& policy, int from, int n, int m, int u,
                         int s) {
    double sum = 0.0;
    for (int mp = 0; mp < env.num_cells(); ++mp) {
        if ((from == n && mp == m) || !policy.rho(from, mp, s)) continue;
        const double gain = env.tx_gain(from, mp, u);
        for (int up = 0; up < env.num_users(); ++up) {
            if (up == u || !policy.phi(from, mp, up)) continue;
            sum += policy.power(from, mp, up, s) * gain;
        }
    }
    return sum * env.rx_gain() * env.channel_gain(n, m, u, s);
}

double doppler_prefactor(const LinkEnvironment& env, int n, int u, int s) {
    const double S = env.num_sub_channels();
    const double shift = env.frequency(s) * env.radial_speed(n, u) * S * S / (kSpeedOfLight * env.bandwidth());
    return shift * shift / (2.0 * S);
}

}  // namespace

double interference_ibi(const LinkEnvironment& env, const AllocationPolicy& policy, int n, int m, int u, int s) {
    return interference_from(env, policy, n, n, m, u, s);
}

double interference_isi(const LinkEnvironment& env, const AllocationPolicy& policy, int n, int m, int u, int s) {
    double sum = 0.0;
    for (int np = 0; np < env.num_sats(); ++np) {
        if (np != n) sum += interference_from(env, policy, np, n, m, u, s);
    }
    return sum;
}

double interference_doppler(const LinkEnvironment& env, const AllocationPolicy& policy, int n, int m, int u, int s) {
    const int S = env.num_sub_channels();
    double sum = 0.0;
    for (int s1 = 0; s1 < S; ++s1) {
        for (int s2 = 0; s2 < S; ++s2) {
            if (s2 == s1) continue;
            const double gap = s2 - s1;
            sum += policy.power(n, m, u, s2) / (gap * gap);
        }
    }
    return doppler_prefactor(env, n, u, s) * sum;
}

double sinr(const LinkEnvironment& env, const AllocationPolicy& policy, int n, int m, int u, int s) {
    if (!policy.phi(n, m, u) || !policy.rho(n, m, s)) return 0.0;
    const double signal =
        policy.power(n, m, u, s) * env.tx_gain(n, m, u) * env.rx_gain() * env.channel_gain(n, m, u, s);
    const double denominator = interference_ibi(env, policy, n, m, u, s) + interference_isi(env, policy, n, m, u, s) +
                               env.eta() * interference_doppler(env, policy, n, m, u, s) + env.noise_power();
    return signal / denominator;
}

RateReport rates(const LinkEnvironment& env, const AllocationPolicy& policy) {
    const int N = env.num_sats();
    const int M = env.num_cells();
    const int U = env.num_users();
    const int S = env.num_sub_channels();

    RateReport report;
    report.per_leo = Eigen::VectorXd::Zero(N);
    report.per_user = Eigen::VectorXd::Zero(U);

    // Power radiated by beam (n, m) on sub-channel s, over served users only.
    Eigen::MatrixXd beam_power = Eigen::MatrixXd::Zero(N * M, S);
    for (int n = 0; n < N; ++n) {
        for (int m = 0; m < M; ++m) {
            for (int s = 0; s < S; ++s) {
                if (!policy.rho(n, m, s)) continue;
                double total = 0.0;
                for (int u = 0; u < U; ++u) {
                    if (policy.phi(n, m, u)) total += policy.power(n, m, u, s);
                }
                beam_power(n * M + m, s) = total;
            }
        }
    }

    // Sum over s1 != s2 of 1 / (s2 - s1)^2 for each s2.
    Eigen::VectorXd doppler_weight = Eigen::VectorXd::Zero(S);
    for (int s2 = 0; s2 < S; ++s2) {
        for (int s1 = 0; s1 < S; ++s1) {
            if (s1 != s2) doppler_weight[s2] += 1.0 / ((s2 - s1) * static_cast<double>(s2 - s1));
        }
    }

    const double ws = env.sub_channel_bandwidth();
    for (int n = 0; n < N; ++n) {
        for (int m = 0; m < M; ++m) {
            for (int u = 0; u < U; ++u) {
                if (!policy.phi(n, m, u)) continue;
                double doppler_sum = 0.0;
                for (int s = 0; s < S; ++s) doppler_sum += policy.power(n, m, u, s) * doppler_weight[s];

                for (int s = 0; s < S; ++s) {
                    const double p = policy.power(n, m, u, s);
                    if (!policy.rho(n, m, s) || p == 0.0) continue;
                    double radiated = 0.0;
                    for (int np = 0; np < N; ++np) {
                        for (int mp = 0; mp < M; ++mp) {
                            if (np == n && mp == m) continue;
                            double beam = beam_power(np * M + mp, s);
                            if (beam == 0.0) continue;
                            if (policy.rho(np, mp, s) && policy.phi(np, mp, u)) beam -= policy.power(np, mp, u, s);
                            radiated += beam * env.tx_gain(np, mp, u);
                        }
                    }
                    const double h = env.channel_gain(n, m, u, s);
                    const double interference = radiated * env.rx_gain() * h;
                    const double doppler = doppler_prefactor(env, n, u, s) * doppler_sum;
                    const double gamma = p * env.tx_gain(n, m, u) * env.rx_gain() * h /
                                         (interference + env.eta() * doppler + env.noise_power());
                    const double rate = ws * std::log2(1.0 + gamma);
                    report.per_leo[n] += rate;
                    report.per_user[u] += rate;
                }
            }
        }
    }
    report.total = report.per_leo.sum();
    return report;
}

}  // namespace leo
