#pragma once

#include <cstdint>

#include "uavcollect/model.hpp"
#include "uavcollect/random.hpp"

namespace uavcollect::testing {

/// Paper-scale instance: 8 km square, 1000 sensors of 10 Mbit each.
inline Scenario paper_scenario(std::uint64_t seed, std::int64_t sensors = 1000) {
    return generate_scenario(8000.0, 8000.0, sensors, 1e7, ChannelParams{}, seed);
}

/// Random feasible instance of varying size and density.
inline Scenario random_scenario(Rng& rng, std::uint64_t seed) {
    const double side = rng.uniform(1000.0, 9000.0);
    const auto n = static_cast<std::int64_t>(20 + rng.below(800));
    return generate_scenario(side, side, n, rng.uniform(1e6, 2e7), ChannelParams{}, seed);
}

inline Point random_point(Rng& rng, double lo, double hi) { return {rng.uniform(lo, hi), rng.uniform(lo, hi)}; }

} // namespace uavcollect::testing
