#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "uavcollect/model.hpp"
#include "uavcollect/pipeline.hpp"

namespace uavcollect {

enum class SweepAxis { Sensors, SnrG2uDb };

std::string_view axis_name(SweepAxis a);
SweepAxis parse_axis(std::string_view name);

struct SweepConfig {
    SweepAxis axis = SweepAxis::Sensors;
    std::vector<double> values;
    std::size_t seeds = 10;
    std::uint64_t first_seed = 1;     // seed i of a cell is first_seed + i
    double size_m = 8000.0;
    std::int64_t sensors = 1000;      // used when the axis is not the sensor count
    double data_bits = 1e7;
    Scenario base;                    // channel and mission parameters; sensors ignored
    std::size_t workers = 0;          // 0: hardware concurrency
};

struct SweepRow {
    double axis_value = 0.0;
    std::uint64_t seed = 0;
    Algorithm algorithm = Algorithm::Pmtp;
    double completion_s = 0.0;
    double lower_bound_s = 0.0;
    double flight_s = 0.0;
    double hover_s = 0.0;
    bool valid = false;
};

/// The scenario of one sweep cell.
Scenario sweep_scenario(const SweepConfig& cfg, double axis_value, std::uint64_t seed);

/// Runs every (value, seed) cell on a worker pool. Rows come back ordered by
/// value, then seed, then algorithm. A cell that throws is rethrown here.
std::vector<SweepRow> run_sweep(const SweepConfig& cfg);

/// Columns: axis_value, seed, algo, completion_s, lower_bound_s, flight_s, hover_s.
std::string sweep_csv(const std::vector<SweepRow>& rows);

/// Worker count from UAVCOLLECT_WORKERS, or 0 when unset or unparsable.
std::size_t workers_from_env();

} // namespace uavcollect
