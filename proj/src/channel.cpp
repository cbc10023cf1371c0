#include "uavcollect/channel.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <string>

#include "uavcollect/errors.hpp"

namespace uavcollect {

double los_probability(double r_m, double height_m, const ChannelParams& p) {
    const double elevation_deg = r_m <= 0.0 ? 90.0 : std::atan(height_m / r_m) * 180.0 / std::numbers::pi;
    return 1.0 / (1.0 + p.a * std::exp(-p.b * (elevation_deg - p.a)));
}

double expected_gain(double r_m, double height_m, const ChannelParams& p) {
    const double plos = los_probability(r_m, height_m, p);
    const double d2 = height_m * height_m + r_m * r_m;
    const double mixture = plos + (1.0 - plos) * p.kappa;
    return mixture * p.beta0 * std::pow(d2, -0.5 * p.alpha);
}

double expected_path_loss_g2u(double r_m, const ChannelParams& p) { return expected_gain(r_m, p.uav_height_m, p); }

double snr_g2u(double r_m, const ChannelParams& p) { return p.p_sensor_w * expected_path_loss_g2u(r_m, p) / p.noise_w; }

double snr_u2u(double d_m, const ChannelParams& p) {
    if (!(d_m > 0.0)) throw InvalidArgument("snr_u2u: distance must be positive");
    return p.p_uav_w * p.beta0 / (p.noise_w * d_m * d_m);
}

double snr_u2b(double r_m, double bs_height_m, const ChannelParams& p) {
    return p.p_uav_w * expected_gain(r_m, p.uav_height_m - bs_height_m, p) / p.noise_w;
}

namespace {

// Largest r with snr(r) >= threshold, for snr strictly decreasing in r.
double invert_decreasing(const std::function<double(double)>& snr, double threshold, const char* link) {
    if (!(snr(0.0) > threshold))
        throw InfeasibleConfiguration(std::string(link) + " SNR threshold is not met even at zero range");
    double lo = 0.0;
    double hi = 1.0;
    while (snr(hi) >= threshold) {
        lo = hi;
        hi *= 2.0;
        if (hi > 1e12) throw InfeasibleConfiguration(std::string(link) + " coverage radius is unbounded");
    }
    for (int it = 0; it < 200 && (hi - lo) > 1e-9 * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (snr(mid) >= threshold)
            lo = mid;
        else
            hi = mid;
    }
    return lo;
}

} // namespace

CoverageRadii coverage_radii(const ChannelParams& p, double bs_height_m) {
    validate_params(p);
    CoverageRadii r;
    r.r_u2u_m = std::sqrt(p.p_uav_w * p.beta0 / (p.noise_w * p.snr_th_u2u.linear()));
    r.r_g2u_m = invert_decreasing([&](double x) { return snr_g2u(x, p); }, p.snr_th_g2u.linear(), "sensor-UAV");
    r.r_u2b_m = invert_decreasing([&](double x) { return snr_u2b(x, bs_height_m, p); }, p.snr_th_u2b.linear(),
                                  "UAV-BS");
    return r;
}

CoverageRadii coverage_radii(const Scenario& s) { return coverage_radii(s.params, s.bs_height_m); }

double full_band_rate(double r_m, const ChannelParams& p) { return p.bandwidth_hz * std::log2(1.0 + snr_g2u(r_m, p)); }

namespace {

// Per-member full-band upload time rho_n = Q_n / (B log2(1 + snr)).
std::vector<double> upload_times(std::span<const SensorNode> cluster, Point cp, const ChannelParams& p,
                                 double r_g2u_m) {
    if (cluster.empty()) throw InvalidArgument("cluster must not be empty");
    std::vector<double> rho;
    rho.reserve(cluster.size());
    for (const auto& n : cluster) {
        const double r = distance(n.position, cp);
        if (r > r_g2u_m)
            throw CoverageViolation("sensor " + std::to_string(n.id) + " is " + std::to_string(r) +
                                    " m from its collection point, beyond r_g2u " + std::to_string(r_g2u_m));
        rho.push_back(n.data_bits / full_band_rate(r, p));
    }
    return rho;
}

} // namespace

std::vector<double> optimal_bandwidth_shares(std::span<const SensorNode> cluster, Point cp, const ChannelParams& p,
                                             double r_g2u_m) {
    auto rho = upload_times(cluster, cp, p, r_g2u_m);
    double total = 0.0;
    for (double v : rho) total += v;
    for (double& v : rho) v /= total;
    return rho;
}

double min_hover_time(std::span<const SensorNode> cluster, Point cp, const ChannelParams& p, double r_g2u_m) {
    const auto rho = upload_times(cluster, cp, p, r_g2u_m);
    double total = 0.0;
    for (double v : rho) total += v;
    return total;
}

double hover_time_with_shares(std::span<const SensorNode> cluster, Point cp, std::span<const double> shares,
                              const ChannelParams& p) {
    if (shares.size() != cluster.size()) throw InvalidArgument("one share per cluster member is required");
    double worst = 0.0;
    for (std::size_t i = 0; i < cluster.size(); ++i) {
        const double rate = shares[i] * full_band_rate(distance(cluster[i].position, cp), p);
        worst = std::max(worst, cluster[i].data_bits / rate);
    }
    return worst;
}

} // namespace uavcollect
