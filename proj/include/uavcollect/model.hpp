#pragma once

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "uavcollect/geometry.hpp"

namespace uavcollect {

/// A power ratio that is specified in dB but used linearly. The linear value
/// is computed once, at construction.
class Decibel {
public:
    Decibel() = default;
    static Decibel from_db(double db);

    double db() const noexcept { return db_; }
    double linear() const noexcept { return linear_; }

    friend bool operator==(const Decibel& a, const Decibel& b) { return a.db_ == b.db_; }

private:
    double db_ = 0.0;
    double linear_ = 1.0;
};

inline double dbm_to_watts(double dbm) { return 1e-3 * std::pow(10.0, dbm / 10.0); }

/// Radio environment and link budget. Defaults are the suburban setting used
/// for the reference experiments.
struct ChannelParams {
    double a = 4.88;               // LoS model, environment dependent
    double b = 0.43;
    double kappa = 0.2;            // extra NLoS attenuation, in (0, 1)
    double alpha = 2.0;            // path-loss exponent
    double beta0 = 1.42e-4;        // linear gain at 1 m (-38.5 dB, 2 GHz free space)
    double uav_height_m = 100.0;
    double bandwidth_hz = 2e6;
    double p_sensor_w = 0.05;
    double p_uav_w = 0.1;
    double noise_w = 1e-14;        // -110 dBm
    Decibel snr_th_g2u = Decibel::from_db(20.0);
    Decibel snr_th_u2u = Decibel::from_db(19.5);
    Decibel snr_th_u2b = Decibel::from_db(13.0);

    friend bool operator==(const ChannelParams&, const ChannelParams&) = default;
};

struct SensorNode {
    std::int64_t id = 0;
    Point position;
    double data_bits = 0.0;

    friend bool operator==(const SensorNode&, const SensorNode&) = default;
};

/// The immutable problem instance.
struct Scenario {
    double region_width_m = 0.0;
    double region_height_m = 0.0;
    Point bs_position;
    double bs_height_m = 20.0;
    std::vector<SensorNode> sensors;
    ChannelParams params;
    std::int64_t n_th = 60;        // max sensors per cluster
    double v_max_mps = 30.0;
    double d_safe_m = 30.0;
    std::uint64_t rng_seed = 0;

    std::vector<Point> sensor_positions() const;

    friend bool operator==(const Scenario&, const Scenario&) = default;
};

/// Throws ValidationError naming the first violated invariant.
void validate_scenario(const Scenario& s);
void validate_params(const ChannelParams& p);

/// Uniform i.i.d. sensors over [0, width] x [0, height], BS at the origin
/// corner, identical data per sensor. Pure in (arguments, seed).
Scenario generate_scenario(double width_m, double height_m, std::int64_t n_sensors, double data_bits,
                           const ChannelParams& params, std::uint64_t seed);

// JSON instance format. Lengths in meters, powers in watts, SNR thresholds in dB.
std::string scenario_to_json(const Scenario& s);
Scenario scenario_from_json(const std::string& text);
void save_scenario(const Scenario& s, const std::filesystem::path& path);
Scenario load_scenario(const std::filesystem::path& path);

/// Applies a partial override document (same keys as the "channel" object of
/// a scenario, plus the scalar mission keys) on top of `base`.
void apply_overrides(Scenario& base, const std::string& json_text);

} // namespace uavcollect
