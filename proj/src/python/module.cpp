#include <pybind11/pybind11.h>

#include <string>

#include "nomadsim/engine.hpp"
#include "nomadsim/placement.hpp"
#include "nomadsim/report.hpp"
#include "nomadsim/scenario.hpp"
#include "nomadsim/scenario_json.hpp"
#include "nomadsim/trace.hpp"

#include <json.hpp>

namespace py = pybind11;
using nlohmann::json;
using namespace nomadsim;

namespace {

json requirement_to_json(const UseCaseRequirement& r) {
    return {{"id", r.id},
            {"scope", scope_name(r.scope)},
            {"range_m", r.range_m ? json(*r.range_m) : json()},
            {"throughput_mbps", r.throughput_mbps},
            {"latency_ms", r.latency_ms},
            {"application", r.application}};
}

std::vector<VnfSpec> parse_vnfs(const std::string& vnfs_json) {
    const json doc = json::parse(vnfs_json);
    if (!doc.is_array()) throw std::invalid_argument("vnfs must be a JSON array");
    std::vector<VnfSpec> out;
    for (const auto& v : doc) {
        VnfSpec spec;
        spec.id = v.at("id").get<std::string>();
        const std::string cls = v.value("class", std::string("other"));
        const auto parsed = vnf_class_from_name(cls);
        if (!parsed) throw std::invalid_argument("unknown vnf class: " + cls);
        spec.cls = *parsed;
        spec.impl_cost = v.at("impl_cost").get<double>();
        spec.opp_cost = v.at("opp_cost").get<double>();
        spec.weight = v.value("weight", 1.0);
        out.push_back(std::move(spec));
    }
    return out;
}

json plan_to_json(const PlacementPlan& plan) {
    return {{"strategy", strategy_name(plan.strategy)},
            {"local", plan.local},
            {"remote", plan.remote},
            {"total_cost", plan.total_cost}};
}

std::string plan_json(const std::string& strategy, const std::string& vnfs_json, double p) {
    const auto parsed = strategy_from_name(strategy);
    if (!parsed) throw std::invalid_argument("unknown strategy: " + strategy);
    const auto catalog = parse_vnfs(vnfs_json);
    return plan_to_json(plan_for(*parsed, catalog, OutageProbability(p))).dump();
}

std::string brute_force_json(const std::string& vnfs_json, double p) {
    const auto catalog = parse_vnfs(vnfs_json);
    return plan_to_json(brute_force_plan(catalog, OutageProbability(p))).dump();
}

std::string requirement_catalog_json() {
    json rows = json::array();
    for (const auto& r : requirement_catalog()) rows.push_back(requirement_to_json(r));
    return rows.dump();
}

std::string default_rats_json() {
    json rows = json::array();
    for (const auto& r : default_rat_catalog()) {
        rows.push_back({{"name", r.name},
                        {"max_range_m", r.max_range_m},
                        {"capacity_mbps", r.capacity_mbps},
                        {"base_latency_ms", r.base_latency_ms},
                        {"requires_los", r.requires_los},
                        {"point_to_point", r.point_to_point},
                        {"weather_sensitive", r.weather_sensitive}});
    }
    return rows.dump();
}

std::string validate_json(const std::string& scenario_json) {
    const ScenarioConfig cfg = scenario_from_json(json::parse(scenario_json));
    const ValidationResult result = validate_scenario(cfg);
    if (!result.ok()) {
        json violations = json::array();
        for (const auto& v : result.violations) {
            violations.push_back({{"kind", violation_kind_name(v.kind)},
                                  {"entity", v.entity},
                                  {"detail", v.detail}});
        }
        return json{{"ok", false}, {"violations", violations}}.dump();
    }
    return json{{"ok", true},
                {"violations", json::array()},
                {"hash", scenario_hash(result.scenario->config)},
                {"scenario", scenario_to_json(result.scenario->config)}}
        .dump();
}

std::string generate_json(const std::string& template_name, const std::string& params_json) {
    const json params = json::parse(params_json);
    ScenarioConfig cfg;
    if (template_name == "agricultural") {
        AgriculturalParams p;
        p.harvesters = params.value("harvesters", p.harvesters);
        p.field_size_m = params.value("field_size_m", p.field_size_m);
        p.trailer_capacity_s = params.value("trailer_capacity_s", p.trailer_capacity_s);
        p.depot_distance_m = params.value("depot_distance_m", p.depot_distance_m);
        p.remote_control = params.value("remote_control", p.remote_control);
        p.duration_s = params.value("duration_s", p.duration_s);
        p.seed = params.value("seed", p.seed);
        cfg = agricultural_cycle(p);
    } else if (template_name == "construction") {
        ConstructionParams p;
        p.rollers = params.value("rollers", p.rollers);
        p.site_length_m = params.value("site_length_m", p.site_length_m);
        p.tanker_distance_km = params.value("tanker_distance_km", p.tanker_distance_km);
        p.duration_s = params.value("duration_s", p.duration_s);
        p.seed = params.value("seed", p.seed);
        cfg = construction_cycle(p);
    } else {
        throw std::invalid_argument("unknown template: " + template_name);
    }
    return scenario_to_json(cfg).dump();
}

py::tuple run_json(const std::string& scenario_json) {
    const ScenarioConfig cfg = scenario_from_json(json::parse(scenario_json));
    ValidationResult result = validate_scenario(cfg);
    if (!result.ok()) {
        std::string msg = "invalid scenario:";
        for (const auto& v : result.violations) {
            msg += std::string(" [") + violation_kind_name(v.kind) + " " + v.entity + ": " +
                   v.detail + "]";
        }
        throw std::invalid_argument(msg);
    }
    auto [trace, report] = run(*result.scenario);
    return py::make_tuple(trace_to_jsonl(trace), report_to_json(report).dump());
}

std::string report_from_trace_json(const std::string& trace_jsonl) {
    const EventTrace trace = trace_from_jsonl(trace_jsonl);
    return report_to_json(evaluate_qos(trace)).dump();
}

std::string hash_json(const std::string& scenario_json) {
    return scenario_hash(scenario_from_json(json::parse(scenario_json)));
}

}  // namespace

PYBIND11_MODULE(_nomadsim, m) {
    m.doc() = "Simulation core; all payloads are JSON strings";
    m.def("requirement_catalog_json", &requirement_catalog_json,
          "Use case requirement rows as a JSON array");
    m.def("default_rats_json", &default_rats_json, "Built-in RAT catalog as a JSON array");
    m.def("plan_json", &plan_json, py::arg("strategy"), py::arg("vnfs_json"), py::arg("p"),
          "Placement plan for a strategy at outage probability p");
    m.def("brute_force_json", &brute_force_json, py::arg("vnfs_json"), py::arg("p"),
          "Exhaustive minimum-cost placement plan");
    m.def("validate_json", &validate_json, py::arg("scenario_json"),
          "Validation verdict with violations or the normalized scenario");
    m.def("generate_json", &generate_json, py::arg("template_name"), py::arg("params_json"),
          "Scenario from a named template");
    m.def("run_json", &run_json, py::arg("scenario_json"),
          "Simulate; returns (trace_jsonl, report_json)");
    m.def("report_from_trace_json", &report_from_trace_json, py::arg("trace_jsonl"),
          "Score an existing trace");
    m.def("hash_json", &hash_json, py::arg("scenario_json"), "Canonical scenario content hash");
}
