#include "uavcollect/cli.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "uavcollect/errors.hpp"
#include "uavcollect/model.hpp"
#include "uavcollect/pipeline.hpp"
#include "uavcollect/sweep.hpp"

namespace uavcollect {

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InvalidArgument("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f || !(f << text)) throw InvalidArgument("cannot write " + path);
}

struct GenerateArgs {
    std::int64_t sensors = 0;
    double size = 8000.0;
    std::uint64_t seed = 1;
    double bits = 1e7;
    std::string config, output;
};

struct PlanArgs {
    std::string scenario, algo = "pmtp", config, output;
};

struct SweepArgs {
    std::string axis, config, output;
    std::vector<double> values;
    std::size_t seeds = 10;
    std::uint64_t seed = 1;
    std::int64_t sensors = 1000;
    double size = 8000.0, bits = 1e7;
};

int cmd_generate(const GenerateArgs& a, std::ostream& out) {
    Scenario s = generate_scenario(a.size, a.size, a.sensors, a.bits, ChannelParams{}, a.seed);
    if (!a.config.empty()) apply_overrides(s, read_file(a.config));
    validate_scenario(s);
    write_file(a.output, scenario_to_json(s));
    out << "wrote " << a.output << " (" << s.sensors.size() << " sensors)\n";
    return kExitOk;
}

int cmd_plan(const PlanArgs& a, std::ostream& out, std::ostream& err) {
    const Algorithm algo = parse_algorithm(a.algo);
    Scenario s = scenario_from_json(read_file(a.scenario));
    if (!a.config.empty()) apply_overrides(s, read_file(a.config));
    const Prepared prep = prepare(s);
    const PlanOutcome res = run_planner(s, prep, algo);
    const std::string report = report_json(s, prep, res);
    if (!a.output.empty()) {
        write_file(a.output + ".plan.csv", plan_csv(res.plan));
        write_file(a.output + ".report.json", report);
        write_file(a.output + ".clusters.csv", clusters_csv(s, prep.clusters));
        write_file(a.output + ".cps.csv", cp_csv(prep.clusters, prep.topology));
    }
    out << report;
    if (!res.validation.all_passed()) {
        for (const auto& c : res.validation.checks)
            for (const auto& f : c.failures) err << c.name << ": " << f << '\n';
        return kExitValidation;
    }
    if (res.below_bound) {
        err << "completion is below the lower bound\n";
        return kExitValidation;
    }
    return kExitOk;
}

int cmd_sweep(const SweepArgs& a, std::ostream& out) {
    SweepConfig cfg;
    cfg.axis = parse_axis(a.axis);
    cfg.values = a.values;
    cfg.seeds = a.seeds;
    cfg.first_seed = a.seed;
    cfg.sensors = a.sensors;
    cfg.size_m = a.size;
    cfg.data_bits = a.bits;
    if (!a.config.empty()) {
        cfg.base = generate_scenario(a.size, a.size, 1, a.bits, ChannelParams{}, 0);
        apply_overrides(cfg.base, read_file(a.config));
    }
    cfg.workers = workers_from_env();
    const auto rows = run_sweep(cfg);
    const std::string csv = sweep_csv(rows);
    if (a.output.empty())
        out << csv;
    else
        write_file(a.output, csv);
    for (const auto& r : rows)
        if (!r.valid) return kExitValidation;
    return kExitOk;
}

} // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Multi-UAV data collection planner"};
    app.require_subcommand(1);

    GenerateArgs ga;
    auto* gen = app.add_subcommand("generate", "Generate a random scenario file");
    gen->add_option("--sensors", ga.sensors, "Number of sensors")->required()->check(CLI::PositiveNumber);
    gen->add_option("--size", ga.size, "Side of the square region, meters")->check(CLI::PositiveNumber);
    gen->add_option("--seed", ga.seed, "Random seed");
    gen->add_option("--bits", ga.bits, "Data per sensor, bits")->check(CLI::PositiveNumber);
    gen->add_option("--config", ga.config, "JSON parameter overrides");
    gen->add_option("-o,--output", ga.output, "Scenario file to write")->required();

    PlanArgs pa;
    auto* plan = app.add_subcommand("plan", "Cluster, plan, validate and evaluate one scenario");
    plan->add_option("scenario", pa.scenario, "Scenario JSON file")->required();
    plan->add_option("--algo", pa.algo, "Planner")->check(CLI::IsMember({"pmtp", "ttp", "cstp"}));
    plan->add_option("--config", pa.config, "JSON parameter overrides");
    plan->add_option("-o,--output", pa.output, "Output prefix for plan/report/cluster files");

    SweepArgs sa;
    auto* sweep = app.add_subcommand("sweep", "Completion time of every planner over a parameter range");
    sweep->add_option("--axis", sa.axis, "Swept parameter")->required()->check(CLI::IsMember({"sensors", "snr-g2u-db"}));
    sweep->add_option("--values", sa.values, "Comma-separated axis values")->required()->delimiter(',');
    sweep->add_option("--seeds", sa.seeds, "Seeds per value")->check(CLI::PositiveNumber);
    sweep->add_option("--seed", sa.seed, "First seed");
    sweep->add_option("--sensors", sa.sensors, "Sensor count when not swept")->check(CLI::PositiveNumber);
    sweep->add_option("--size", sa.size, "Side of the square region, meters")->check(CLI::PositiveNumber);
    sweep->add_option("--bits", sa.bits, "Data per sensor, bits")->check(CLI::PositiveNumber);
    sweep->add_option("--config", sa.config, "JSON parameter overrides");
    sweep->add_option("-o,--output", sa.output, "CSV file (default: stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << e.what() << '\n';
        if (e.get_name() == "RequiredError" || e.get_name() == "ValidationError") err << app.help();
        return kExitUsage;
    }

    try {
        if (*gen) return cmd_generate(ga, out);
        if (*plan) return cmd_plan(pa, out, err);
        return cmd_sweep(sa, out);
    } catch (const InfeasibleConfiguration& e) {
        err << "infeasible: " << e.what() << '\n';
        return kExitInfeasible;
    } catch (const ValidationError& e) {
        err << "invalid scenario: " << e.what() << '\n';
        return kExitValidation;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }
}

} // namespace uavcollect
