#pragma once

#include <span>
#include <vector>

#include "uavcollect/geometry.hpp"
#include "uavcollect/model.hpp"

namespace uavcollect {

/// Maximum horizontal link distances that still meet each SNR threshold.
struct CoverageRadii {
    double r_g2u_m = 0.0;   // sensor -> UAV
    double r_u2u_m = 0.0;   // UAV -> UAV
    double r_u2b_m = 0.0;   // UAV -> BS
};

/// Probability of line of sight between a ground node and a node `height`
/// above it at horizontal range r. Elevation is taken as 90 degrees at r = 0.
double los_probability(double r_m, double height_m, const ChannelParams& p);

/// Expected linear gain (LoS/NLoS mixture) at horizontal range r for a link
/// spanning the given vertical separation.
double expected_gain(double r_m, double height_m, const ChannelParams& p);

/// Sensor -> UAV expected gain at the UAV altitude.
double expected_path_loss_g2u(double r_m, const ChannelParams& p);

double snr_g2u(double r_m, const ChannelParams& p);

/// Pure LoS UAV -> UAV SNR. Throws InvalidArgument for d <= 0.
double snr_u2u(double d_m, const ChannelParams& p);

/// UAV -> BS SNR: the sensor-link model with the UAV transmitting at p_uav_w
/// over an effective height of uav_height_m - bs_height_m.
double snr_u2b(double r_m, double bs_height_m, const ChannelParams& p);

/// Throws InfeasibleConfiguration when a threshold is not met even at r = 0.
CoverageRadii coverage_radii(const ChannelParams& p, double bs_height_m);
CoverageRadii coverage_radii(const Scenario& s);

/// Shannon rate density B*log2(1 + SNR) for a sensor at range r, bits/s at full band.
double full_band_rate(double r_m, const ChannelParams& p);

/// Bandwidth split that makes every member finish uploading at the same time.
/// Throws CoverageViolation if a member lies beyond r_g2u_m of the CP.
std::vector<double> optimal_bandwidth_shares(std::span<const SensorNode> cluster, Point cp,
                                             const ChannelParams& p, double r_g2u_m);

/// Minimum hover time at `cp` to collect every member's data, in seconds.
double min_hover_time(std::span<const SensorNode> cluster, Point cp, const ChannelParams& p, double r_g2u_m);

/// Hover time needed under an arbitrary share vector (max of member upload times).
double hover_time_with_shares(std::span<const SensorNode> cluster, Point cp, std::span<const double> shares,
                              const ChannelParams& p);

} // namespace uavcollect
