#include "uavcollect/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <sstream>
#include <thread>

#include "uavcollect/errors.hpp"

namespace uavcollect {

std::string_view axis_name(SweepAxis a) { return a == SweepAxis::Sensors ? "sensors" : "snr-g2u-db"; }

SweepAxis parse_axis(std::string_view name) {
    if (name == "sensors") return SweepAxis::Sensors;
    if (name == "snr-g2u-db") return SweepAxis::SnrG2uDb;
    throw InvalidArgument("unknown sweep axis '" + std::string(name) + "' (valid: sensors, snr-g2u-db)");
}

Scenario sweep_scenario(const SweepConfig& cfg, double axis_value, std::uint64_t seed) {
    ChannelParams params = cfg.base.params;
    std::int64_t n = cfg.sensors;
    if (cfg.axis == SweepAxis::Sensors)
        n = static_cast<std::int64_t>(std::llround(axis_value));
    else
        params.snr_th_g2u = Decibel::from_db(axis_value);
    Scenario s = generate_scenario(cfg.size_m, cfg.size_m, n, cfg.data_bits, params, seed);
    s.bs_height_m = cfg.base.bs_height_m;
    s.n_th = cfg.base.n_th;
    s.v_max_mps = cfg.base.v_max_mps;
    s.d_safe_m = cfg.base.d_safe_m;
    return s;
}

std::vector<SweepRow> run_sweep(const SweepConfig& cfg) {
    const std::size_t n_algo = std::size(kAllAlgorithms);
    const std::size_t cells = cfg.values.size() * cfg.seeds;
    std::vector<SweepRow> rows(cells * n_algo);
    std::vector<std::exception_ptr> errors(cells);

    auto run_cell = [&](std::size_t c) {
        const double v = cfg.values[c / cfg.seeds];
        const std::uint64_t seed = cfg.first_seed + c % cfg.seeds;
        try {
            const Scenario sc = sweep_scenario(cfg, v, seed);
            const Prepared prep = prepare(sc);
            for (std::size_t a = 0; a < n_algo; ++a) {
                const PlanOutcome out = run_planner(sc, prep, kAllAlgorithms[a]);
                rows[c * n_algo + a] = SweepRow{v,
                                                seed,
                                                kAllAlgorithms[a],
                                                out.timing.completion_s,
                                                out.lower_bound_s,
                                                out.timing.flight_s,
                                                out.timing.hover_s,
                                                out.validation.all_passed()};
            }
        } catch (...) {
            errors[c] = std::current_exception();
        }
    };

    std::size_t workers = cfg.workers ? cfg.workers : std::max(1u, std::thread::hardware_concurrency());
    workers = std::min(workers, std::max<std::size_t>(cells, 1));
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (std::size_t c; (c = next.fetch_add(1)) < cells;) run_cell(c);
        });
    pool.clear();

    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    return rows;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
    std::ostringstream os;
    os << "axis_value,seed,algo,completion_s,lower_bound_s,flight_s,hover_s\n";
    char buf[256];
    for (const auto& r : rows) {
        std::snprintf(buf, sizeof buf, "%.17g,%llu,%s,%.17g,%.17g,%.17g,%.17g\n", r.axis_value,
                      static_cast<unsigned long long>(r.seed), std::string(algorithm_name(r.algorithm)).c_str(),
                      r.completion_s, r.lower_bound_s, r.flight_s, r.hover_s);
        os << buf;
    }
    return os.str();
}

std::size_t workers_from_env() {
    const char* v = std::getenv("UAVCOLLECT_WORKERS");
    if (!v) return 0;
    char* end = nullptr;
    const unsigned long n = std::strtoul(v, &end, 10);
    return end != v && *end == '\0' ? n : 0;
}

} // namespace uavcollect
