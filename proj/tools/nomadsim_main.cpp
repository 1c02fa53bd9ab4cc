#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include "nomadsim/engine.hpp"
#include "nomadsim/report.hpp"
#include "nomadsim/scenario.hpp"
#include "nomadsim/scenario_json.hpp"
#include "nomadsim/trace.hpp"

#include <CLI11.hpp>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;  // invalid input or failed run
constexpr int kExitError = 2;    // I/O or internal error
constexpr int kExitUsage = 64;

std::string resolve_out_dir(const std::string& cli_value) {
    if (!cli_value.empty()) return cli_value;
    if (const char* env = std::getenv("NOMADSIM_OUT"); env && *env) return env;
    return {};
}

void print_violations(const nomadsim::ValidationResult& result) {
    for (const auto& v : result.violations) {
        std::cerr << nomadsim::violation_kind_name(v.kind) << " " << v.entity << ": " << v.detail
                  << "\n";
    }
}

// A duration override shortens the horizon after the fact, so the windows are
// clipped the way the generator would have clipped them.
void clip_flows_to_duration(nomadsim::ScenarioConfig& cfg) {
    std::vector<nomadsim::FlowSpec> kept;
    for (auto& f : cfg.flows) {
        if (f.active.start_s >= cfg.duration_s) continue;
        f.active.end_s = std::min(f.active.end_s, cfg.duration_s);
        kept.push_back(f);
    }
    cfg.flows = std::move(kept);
}

int cmd_run(const std::string& scenario_path, std::optional<std::uint64_t> seed,
            const std::string& strategy, const std::string& out_opt,
            std::optional<double> duration_s, std::optional<double> tick_ms) {
    const std::string out_dir = resolve_out_dir(out_opt);
    if (out_dir.empty()) {
        std::cerr << "run: no output directory; pass --out or set NOMADSIM_OUT\n";
        return kExitUsage;
    }

    nomadsim::ScenarioConfig cfg;
    try {
        cfg = nomadsim::load_scenario(scenario_path);
    } catch (const nomadsim::ScenarioParseError& e) {
        std::cerr << "run: " << e.what() << "\n";
        return kExitFailure;
    }

    if (seed) cfg.seed = *seed;
    if (!strategy.empty()) {
        const auto parsed = nomadsim::strategy_from_name(strategy);
        if (!parsed) {
            std::cerr << "run: unknown strategy '" << strategy << "'\n";
            return kExitUsage;
        }
        cfg.strategy = *parsed;
    }
    if (tick_ms) cfg.sim.tick_s = *tick_ms / 1000.0;
    if (duration_s) {
        cfg.duration_s = *duration_s;
        clip_flows_to_duration(cfg);
    }

    auto validated = nomadsim::validate_scenario(cfg);
    if (!validated.ok()) {
        print_violations(validated);
        return kExitFailure;
    }

    auto [trace, report] = nomadsim::run(*validated.scenario);
    nomadsim::write_outputs(report, trace, out_dir);

    std::cout << "scenario " << trace.header.scenario_hash << " seed " << trace.header.seed
              << " strategy " << trace.header.strategy << "\n"
              << "flows " << report.flows.size() << " pass_ratio " << report.pass_ratio
              << " migrations " << report.handovers.size() << " notifications "
              << report.notification_count << "\n"
              << "outputs in " << out_dir << "\n";
    return kExitOk;
}

int cmd_gen(const std::string& template_name, const std::string& out_file, int harvesters,
            double field_size_m, double trailer_capacity_s, double depot_distance_m,
            bool remote_control, int rollers, double site_length_m, double tanker_distance_km,
            double duration_s, std::uint64_t seed) {
    nomadsim::ScenarioConfig cfg;
    try {
        if (template_name == "agricultural") {
            nomadsim::AgriculturalParams p;
            p.harvesters = harvesters;
            p.field_size_m = field_size_m;
            p.trailer_capacity_s = trailer_capacity_s;
            p.depot_distance_m = depot_distance_m;
            p.remote_control = remote_control;
            p.duration_s = duration_s;
            p.seed = seed;
            cfg = nomadsim::agricultural_cycle(p);
        } else if (template_name == "construction") {
            nomadsim::ConstructionParams p;
            p.rollers = rollers;
            p.site_length_m = site_length_m;
            p.tanker_distance_km = tanker_distance_km;
            p.duration_s = duration_s;
            p.seed = seed;
            cfg = nomadsim::construction_cycle(p);
        } else {
            std::cerr << "gen: unknown template '" << template_name << "'\n";
            return kExitUsage;
        }
    } catch (const nomadsim::InvalidParams& e) {
        std::cerr << "gen: " << e.what() << "\n";
        return kExitFailure;
    }

    nomadsim::save_scenario(cfg, out_file);
    std::cout << "wrote " << out_file << " (" << nomadsim::scenario_hash(cfg) << ")\n";
    return kExitOk;
}

int cmd_report(const std::string& trace_path, const std::string& out_opt) {
    const std::string out_dir = resolve_out_dir(out_opt);
    if (out_dir.empty()) {
        std::cerr << "report: no output directory; pass --out or set NOMADSIM_OUT\n";
        return kExitUsage;
    }
    nomadsim::EventTrace trace;
    try {
        trace = nomadsim::load_trace(trace_path);
    } catch (const nomadsim::MalformedTrace& e) {
        std::cerr << "report: " << e.what() << "\n";
        return kExitFailure;
    }
    const nomadsim::SimReport report = nomadsim::evaluate_qos(trace);
    nomadsim::OutputFormats formats;
    formats.trace_jsonl = false;  // the trace is the input, no point copying it
    nomadsim::write_outputs(report, trace, out_dir, formats);
    std::cout << "flows " << report.flows.size() << " pass_ratio " << report.pass_ratio
              << "\noutputs in " << out_dir << "\n";
    return kExitOk;
}

int cmd_validate(const std::string& scenario_path) {
    nomadsim::ScenarioConfig cfg;
    try {
        cfg = nomadsim::load_scenario(scenario_path);
    } catch (const nomadsim::ScenarioParseError& e) {
        std::cerr << "validate: " << e.what() << "\n";
        return kExitFailure;
    }
    auto result = nomadsim::validate_scenario(cfg);
    if (!result.ok()) {
        print_violations(result);
        return kExitFailure;
    }
    std::cout << "valid " << nomadsim::scenario_hash(result.scenario->config) << "\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"nomadsim: nomadic private 5G network simulator"};
    app.require_subcommand(1);

    std::string scenario_path;
    std::string strategy;
    std::string out_path;
    std::uint64_t seed_value = 0;
    double duration_value = 0.0;
    double tick_value = 0.0;

    auto* run_cmd = app.add_subcommand("run", "Simulate a scenario and write the outputs");
    run_cmd->add_option("--scenario", scenario_path, "Scenario JSON file")->required();
    auto* seed_opt = run_cmd->add_option("--seed", seed_value, "Override the scenario seed");
    run_cmd->add_option("--strategy", strategy, "island, trustzone or private");
    run_cmd->add_option("--out", out_path, "Output directory (or NOMADSIM_OUT)");
    auto* dur_opt = run_cmd->add_option("--duration-s", duration_value, "Shorten the horizon");
    auto* tick_opt = run_cmd->add_option("--tick-ms", tick_value, "Simulation tick in ms");

    std::string template_name;
    std::string gen_out;
    int harvesters = 2;
    double field_size_m = 500.0;
    double trailer_capacity_s = 300.0;
    double depot_distance_m = 2000.0;
    bool remote_control = false;
    int rollers = 2;
    double site_length_m = 100.0;
    double tanker_distance_km = 5.0;
    double gen_duration_s = 1800.0;
    std::uint64_t gen_seed = 1;

    auto* gen_cmd = app.add_subcommand("gen", "Generate a scenario from a template");
    gen_cmd->add_option("--template", template_name, "agricultural or construction")->required();
    gen_cmd->add_option("--out", gen_out, "Scenario file to write")->required();
    gen_cmd->add_option("--harvesters", harvesters, "Working harvesters (agricultural)");
    gen_cmd->add_option("--field-size-m", field_size_m, "Sweep width (agricultural)");
    gen_cmd->add_option("--trailer-capacity-s", trailer_capacity_s,
                        "Seconds until the trailer is full (agricultural)");
    gen_cmd->add_option("--depot-distance-m", depot_distance_m,
                        "Depot to field distance (agricultural)");
    gen_cmd->add_flag("--remote-control", remote_control,
                      "Keep the teleoperation flow on (agricultural)");
    gen_cmd->add_option("--rollers", rollers, "Roller count (construction)");
    gen_cmd->add_option("--site-length-m", site_length_m, "Compaction lane length (construction)");
    gen_cmd->add_option("--tanker-distance-km", tanker_distance_km,
                        "Water tanker distance (construction)");
    gen_cmd->add_option("--duration-s", gen_duration_s, "Scenario horizon");
    gen_cmd->add_option("--seed", gen_seed, "Scenario seed");

    std::string trace_path;
    std::string report_out;
    auto* report_cmd = app.add_subcommand("report", "Score an existing trace");
    report_cmd->add_option("--trace", trace_path, "trace.jsonl file")->required();
    report_cmd->add_option("--out", report_out, "Output directory (or NOMADSIM_OUT)");

    std::string validate_path;
    auto* validate_cmd = app.add_subcommand("validate", "Check a scenario file");
    validate_cmd->add_option("--scenario", validate_path, "Scenario JSON file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (*run_cmd) {
            return cmd_run(scenario_path,
                           *seed_opt ? std::optional<std::uint64_t>(seed_value) : std::nullopt,
                           strategy, out_path,
                           *dur_opt ? std::optional<double>(duration_value) : std::nullopt,
                           *tick_opt ? std::optional<double>(tick_value) : std::nullopt);
        }
        if (*gen_cmd) {
            return cmd_gen(template_name, gen_out, harvesters, field_size_m, trailer_capacity_s,
                           depot_distance_m, remote_control, rollers, site_length_m,
                           tanker_distance_km, gen_duration_s, gen_seed);
        }
        if (*report_cmd) {
            return cmd_report(trace_path, report_out);
        }
        if (*validate_cmd) {
            return cmd_validate(validate_path);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    }
    return kExitUsage;
}
