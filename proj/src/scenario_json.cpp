#include "nomadsim/scenario_json.hpp"

#include <cmath>
#include <fstream>
#include <set>

#include "nomadsim/util.hpp"

namespace nomadsim {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) {
    throw ScenarioParseError(path + ": " + what);
}

const json& member(const json& obj, const std::string& path, const std::string& key) {
    auto it = obj.find(key);
    if (it == obj.end()) fail(path, "missing required key '" + key + "'");
    return *it;
}

void reject_unknown_keys(const json& obj, const std::string& path,
                         const std::set<std::string>& allowed) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        if (!allowed.count(it.key())) fail(path, "unknown key '" + it.key() + "'");
    }
}

const json& as_object(const json& v, const std::string& path) {
    if (!v.is_object()) fail(path, "expected an object");
    return v;
}

const json& as_array(const json& v, const std::string& path) {
    if (!v.is_array()) fail(path, "expected an array");
    return v;
}

double as_number(const json& v, const std::string& path) {
    if (!v.is_number()) fail(path, "expected a number");
    return v.get<double>();
}

std::int64_t as_integer(const json& v, const std::string& path) {
    if (!v.is_number_integer()) fail(path, "expected an integer");
    return v.get<std::int64_t>();
}

std::uint64_t as_unsigned(const json& v, const std::string& path) {
    if (!v.is_number_unsigned()) fail(path, "expected a non-negative integer");
    return v.get<std::uint64_t>();
}

std::string as_string(const json& v, const std::string& path) {
    if (!v.is_string()) fail(path, "expected a string");
    return v.get<std::string>();
}

bool as_bool(const json& v, const std::string& path) {
    if (!v.is_boolean()) fail(path, "expected a boolean");
    return v.get<bool>();
}

Interval parse_interval(const json& v, const std::string& path) {
    const json& obj = as_object(v, path);
    reject_unknown_keys(obj, path, {"start_s", "end_s"});
    return {as_number(member(obj, path, "start_s"), path + ".start_s"),
            as_number(member(obj, path, "end_s"), path + ".end_s")};
}

json interval_to_json(const Interval& iv) {
    return {{"start_s", iv.start_s}, {"end_s", iv.end_s}};
}

VehicleSpec parse_vehicle(const json& v, const std::string& path) {
    const json& obj = as_object(v, path);
    reject_unknown_keys(obj, path,
                        {"id", "rats", "mmw_antennas", "backhaul_radio", "roles",
                         "backhaul_capacity_mbps"});
    VehicleSpec out;
    out.id = as_string(member(obj, path, "id"), path + ".id");
    for (const auto& r : as_array(member(obj, path, "rats"), path + ".rats")) {
        out.rats.push_back(as_string(r, path + ".rats[]"));
    }
    out.mmw_antennas = 0;
    if (obj.contains("mmw_antennas")) {
        out.mmw_antennas = static_cast<int>(as_integer(obj["mmw_antennas"], path + ".mmw_antennas"));
    }
    out.has_backhaul_radio =
        obj.contains("backhaul_radio") && as_bool(obj["backhaul_radio"], path + ".backhaul_radio");
    if (obj.contains("roles")) {
        for (const auto& r : as_array(obj["roles"], path + ".roles")) {
            const std::string name = as_string(r, path + ".roles[]");
            auto role = role_from_name(name);
            if (!role) fail(path + ".roles", "unknown role '" + name + "'");
            out.initial_roles.insert(*role);
        }
    }
    if (obj.contains("backhaul_capacity_mbps")) {
        out.backhaul_capacity_mbps =
            as_number(obj["backhaul_capacity_mbps"], path + ".backhaul_capacity_mbps");
    }
    return out;
}

json vehicle_to_json(const VehicleSpec& v) {
    json roles = json::array();
    for (Role r : v.initial_roles) roles.push_back(role_name(r));
    json out{{"id", v.id},
             {"rats", v.rats},
             {"mmw_antennas", v.mmw_antennas},
             {"backhaul_radio", v.has_backhaul_radio},
             {"roles", roles}};
    if (v.backhaul_capacity_mbps) out["backhaul_capacity_mbps"] = *v.backhaul_capacity_mbps;
    return out;
}

MobilityTrace parse_trace(const json& v, const std::string& path) {
    const json& obj = as_object(v, path);
    reject_unknown_keys(obj, path, {"vehicle", "waypoints"});
    MobilityTrace out;
    out.vehicle = as_string(member(obj, path, "vehicle"), path + ".vehicle");
    for (const auto& w : as_array(member(obj, path, "waypoints"), path + ".waypoints")) {
        const std::string wp = path + ".waypoints[]";
        const json& wo = as_object(w, wp);
        reject_unknown_keys(wo, wp, {"t", "x", "y"});
        out.waypoints.push_back({as_number(member(wo, wp, "t"), wp + ".t"),
                                 {as_number(member(wo, wp, "x"), wp + ".x"),
                                  as_number(member(wo, wp, "y"), wp + ".y")}});
    }
    return out;
}

json trace_to_json(const MobilityTrace& tr) {
    json wps = json::array();
    for (const auto& w : tr.waypoints) {
        wps.push_back({{"t", w.t_s}, {"x", w.pos.x_m}, {"y", w.pos.y_m}});
    }
    return {{"vehicle", tr.vehicle}, {"waypoints", wps}};
}

FlowSpec parse_flow(const json& v, const std::string& path) {
    const json& obj = as_object(v, path);
    reject_unknown_keys(obj, path,
                        {"id", "src", "dst", "use_case", "demand_mbps", "start_s", "end_s"});
    FlowSpec out;
    out.id = as_string(member(obj, path, "id"), path + ".id");
    out.src = as_string(member(obj, path, "src"), path + ".src");
    out.dst = as_string(member(obj, path, "dst"), path + ".dst");
    out.use_case = as_string(member(obj, path, "use_case"), path + ".use_case");
    out.demand_mbps = as_number(member(obj, path, "demand_mbps"), path + ".demand_mbps");
    out.active = {as_number(member(obj, path, "start_s"), path + ".start_s"),
                  as_number(member(obj, path, "end_s"), path + ".end_s")};
    return out;
}

json flow_to_json(const FlowSpec& f) {
    return {{"id", f.id},          {"src", f.src},
            {"dst", f.dst},        {"use_case", f.use_case},
            {"demand_mbps", f.demand_mbps}, {"start_s", f.active.start_s},
            {"end_s", f.active.end_s}};
}

RatSpec parse_rat(const json& v, const std::string& path) {
    const json& obj = as_object(v, path);
    reject_unknown_keys(obj, path,
                        {"name", "max_range_m", "capacity_mbps", "base_latency_ms",
                         "requires_los", "point_to_point", "weather_sensitive"});
    RatSpec out;
    out.name = as_string(member(obj, path, "name"), path + ".name");
    out.max_range_m = as_number(member(obj, path, "max_range_m"), path + ".max_range_m");
    out.capacity_mbps = as_number(member(obj, path, "capacity_mbps"), path + ".capacity_mbps");
    out.base_latency_ms =
        as_number(member(obj, path, "base_latency_ms"), path + ".base_latency_ms");
    out.requires_los =
        obj.contains("requires_los") && as_bool(obj["requires_los"], path + ".requires_los");
    out.point_to_point =
        obj.contains("point_to_point") && as_bool(obj["point_to_point"], path + ".point_to_point");
    out.weather_sensitive = obj.contains("weather_sensitive") &&
                            as_bool(obj["weather_sensitive"], path + ".weather_sensitive");
    return out;
}

json rat_to_json(const RatSpec& r) {
    return {{"name", r.name},
            {"max_range_m", r.max_range_m},
            {"capacity_mbps", r.capacity_mbps},
            {"base_latency_ms", r.base_latency_ms},
            {"requires_los", r.requires_los},
            {"point_to_point", r.point_to_point},
            {"weather_sensitive", r.weather_sensitive}};
}

VnfSpec parse_vnf(const json& v, const std::string& path) {
    const json& obj = as_object(v, path);
    reject_unknown_keys(obj, path, {"id", "class", "impl_cost", "opp_cost", "weight"});
    VnfSpec out;
    out.id = as_string(member(obj, path, "id"), path + ".id");
    const std::string cls = as_string(member(obj, path, "class"), path + ".class");
    auto parsed = vnf_class_from_name(cls);
    if (!parsed) fail(path + ".class", "unknown vnf class '" + cls + "'");
    out.cls = *parsed;
    out.impl_cost = as_number(member(obj, path, "impl_cost"), path + ".impl_cost");
    out.opp_cost = as_number(member(obj, path, "opp_cost"), path + ".opp_cost");
    out.weight = obj.contains("weight") ? as_number(obj["weight"], path + ".weight") : 1.0;
    return out;
}

json vnf_to_json(const VnfSpec& v) {
    return {{"id", v.id},
            {"class", vnf_class_name(v.cls)},
            {"impl_cost", v.impl_cost},
            {"opp_cost", v.opp_cost},
            {"weight", v.weight}};
}

EnvironmentState parse_environment(const json& v, const std::string& path) {
    const json& obj = as_object(v, path);
    reject_unknown_keys(obj, path, {"blockages", "heavy_rain", "backhaul_outages"});
    EnvironmentState out;
    if (obj.contains("blockages")) {
        for (const auto& b : as_array(obj["blockages"], path + ".blockages")) {
            const std::string bp = path + ".blockages[]";
            const json& bo = as_object(b, bp);
            reject_unknown_keys(bo, bp, {"a", "b", "start_s", "end_s"});
            out.blockages.push_back({as_string(member(bo, bp, "a"), bp + ".a"),
                                     as_string(member(bo, bp, "b"), bp + ".b"),
                                     {as_number(member(bo, bp, "start_s"), bp + ".start_s"),
                                      as_number(member(bo, bp, "end_s"), bp + ".end_s")}});
        }
    }
    if (obj.contains("heavy_rain")) {
        for (const auto& iv : as_array(obj["heavy_rain"], path + ".heavy_rain")) {
            out.heavy_rain.push_back(parse_interval(iv, path + ".heavy_rain[]"));
        }
    }
    if (obj.contains("backhaul_outages")) {
        for (const auto& iv : as_array(obj["backhaul_outages"], path + ".backhaul_outages")) {
            out.backhaul_outages.push_back(parse_interval(iv, path + ".backhaul_outages[]"));
        }
    }
    return out;
}

json environment_to_json(const EnvironmentState& env) {
    json blockages = json::array();
    for (const auto& b : env.blockages) {
        blockages.push_back(
            {{"a", b.a}, {"b", b.b}, {"start_s", b.when.start_s}, {"end_s", b.when.end_s}});
    }
    json rain = json::array();
    for (const auto& iv : env.heavy_rain) rain.push_back(interval_to_json(iv));
    json outages = json::array();
    for (const auto& iv : env.backhaul_outages) outages.push_back(interval_to_json(iv));
    return {{"blockages", blockages}, {"heavy_rain", rain}, {"backhaul_outages", outages}};
}

InfrastructureSpec parse_infrastructure(const json& v, const std::string& path) {
    const json& obj = as_object(v, path);
    reject_unknown_keys(obj, path, {"x", "y", "coverage_radius_m", "capacity_mbps", "latency_ms"});
    InfrastructureSpec out;
    out.base_station = {as_number(member(obj, path, "x"), path + ".x"),
                        as_number(member(obj, path, "y"), path + ".y")};
    if (obj.contains("coverage_radius_m")) {
        out.coverage_radius_m = as_number(obj["coverage_radius_m"], path + ".coverage_radius_m");
    }
    if (obj.contains("capacity_mbps")) {
        out.capacity_mbps = as_number(obj["capacity_mbps"], path + ".capacity_mbps");
    }
    if (obj.contains("latency_ms")) {
        out.latency_ms = as_number(obj["latency_ms"], path + ".latency_ms");
    }
    return out;
}

json infrastructure_to_json(const InfrastructureSpec& inf) {
    return {{"x", inf.base_station.x_m},
            {"y", inf.base_station.y_m},
            {"coverage_radius_m", inf.coverage_radius_m},
            {"capacity_mbps", inf.capacity_mbps},
            {"latency_ms", inf.latency_ms}};
}

SimParams parse_sim(const json& v, const std::string& path) {
    const json& obj = as_object(v, path);
    reject_unknown_keys(obj, path,
                        {"tick_ms", "placement_epoch_s", "election_check_s", "prepare_s",
                         "ue_switch_spacing_s", "handover_gap_ms", "ewma_alpha", "notify_epsilon",
                         "random_blockage_count", "random_blockage_max_s"});
    SimParams out;
    if (obj.contains("tick_ms")) {
        out.tick_s = as_number(obj["tick_ms"], path + ".tick_ms") / 1000.0;
    }
    auto num = [&](const char* key, double& field) {
        if (obj.contains(key)) field = as_number(obj[key], path + "." + key);
    };
    num("placement_epoch_s", out.placement_epoch_s);
    num("election_check_s", out.election_check_s);
    num("prepare_s", out.prepare_s);
    num("ue_switch_spacing_s", out.ue_switch_spacing_s);
    num("handover_gap_ms", out.handover_gap_ms);
    num("ewma_alpha", out.ewma_alpha);
    num("notify_epsilon", out.notify_epsilon);
    num("random_blockage_max_s", out.random_blockage_max_s);
    if (obj.contains("random_blockage_count")) {
        out.random_blockage_count =
            static_cast<int>(as_integer(obj["random_blockage_count"], path + ".random_blockage_count"));
    }
    return out;
}

json sim_to_json(const SimParams& sp) {
    return {{"tick_ms", sp.tick_s * 1000.0},
            {"placement_epoch_s", sp.placement_epoch_s},
            {"election_check_s", sp.election_check_s},
            {"prepare_s", sp.prepare_s},
            {"ue_switch_spacing_s", sp.ue_switch_spacing_s},
            {"handover_gap_ms", sp.handover_gap_ms},
            {"ewma_alpha", sp.ewma_alpha},
            {"notify_epsilon", sp.notify_epsilon},
            {"random_blockage_count", sp.random_blockage_count},
            {"random_blockage_max_s", sp.random_blockage_max_s}};
}

}  // namespace

json scenario_to_json(const ScenarioConfig& cfg) {
    json vehicles = json::array();
    for (const auto& v : cfg.vehicles) vehicles.push_back(vehicle_to_json(v));
    json traces = json::array();
    for (const auto& t : cfg.traces) traces.push_back(trace_to_json(t));
    json flows = json::array();
    for (const auto& f : cfg.flows) flows.push_back(flow_to_json(f));
    json rats = json::array();
    for (const auto& r : cfg.rats) rats.push_back(rat_to_json(r));
    json vnfs = json::array();
    for (const auto& v : cfg.vnfs) vnfs.push_back(vnf_to_json(v));

    json out{{"duration_s", cfg.duration_s},
             {"seed", cfg.seed},
             {"strategy", strategy_name(cfg.strategy)},
             {"vehicles", vehicles},
             {"traces", traces},
             {"flows", flows},
             {"rats", rats},
             {"vnfs", vnfs},
             {"election",
              {{"hysteresis_ratio", cfg.election.hysteresis_ratio},
               {"hold_time_s", cfg.election.hold_time_s}}},
             {"environment", environment_to_json(cfg.environment)},
             {"sim", sim_to_json(cfg.sim)}};
    if (cfg.cv) out["cv"] = *cfg.cv;
    if (cfg.infrastructure) out["infrastructure"] = infrastructure_to_json(*cfg.infrastructure);
    return out;
}

ScenarioConfig scenario_from_json(const json& doc) {
    const std::string path = "scenario";
    const json& obj = as_object(doc, path);
    reject_unknown_keys(obj, path,
                        {"duration_s", "seed", "strategy", "cv", "vehicles", "traces", "flows",
                         "rats", "vnfs", "election", "environment", "infrastructure", "sim"});
    ScenarioConfig cfg;
    cfg.duration_s = as_number(member(obj, path, "duration_s"), path + ".duration_s");
    cfg.seed = as_unsigned(member(obj, path, "seed"), path + ".seed");
    if (obj.contains("strategy")) {
        const std::string name = as_string(obj["strategy"], path + ".strategy");
        auto st = strategy_from_name(name);
        if (!st) fail(path + ".strategy", "unknown strategy '" + name + "'");
        cfg.strategy = *st;
    }
    if (obj.contains("cv")) cfg.cv = as_string(obj["cv"], path + ".cv");
    for (const auto& v : as_array(member(obj, path, "vehicles"), path + ".vehicles")) {
        cfg.vehicles.push_back(parse_vehicle(v, path + ".vehicles[]"));
    }
    if (obj.contains("traces")) {
        for (const auto& t : as_array(obj["traces"], path + ".traces")) {
            cfg.traces.push_back(parse_trace(t, path + ".traces[]"));
        }
    }
    if (obj.contains("flows")) {
        for (const auto& f : as_array(obj["flows"], path + ".flows")) {
            cfg.flows.push_back(parse_flow(f, path + ".flows[]"));
        }
    }
    if (obj.contains("rats")) {
        for (const auto& r : as_array(obj["rats"], path + ".rats")) {
            cfg.rats.push_back(parse_rat(r, path + ".rats[]"));
        }
    }
    if (obj.contains("vnfs")) {
        for (const auto& v : as_array(obj["vnfs"], path + ".vnfs")) {
            cfg.vnfs.push_back(parse_vnf(v, path + ".vnfs[]"));
        }
    }
    if (obj.contains("election")) {
        const std::string ep = path + ".election";
        const json& eo = as_object(obj["election"], ep);
        reject_unknown_keys(eo, ep, {"hysteresis_ratio", "hold_time_s"});
        if (eo.contains("hysteresis_ratio")) {
            cfg.election.hysteresis_ratio = as_number(eo["hysteresis_ratio"], ep + ".hysteresis_ratio");
        }
        if (eo.contains("hold_time_s")) {
            cfg.election.hold_time_s = as_number(eo["hold_time_s"], ep + ".hold_time_s");
        }
    }
    if (obj.contains("environment")) {
        cfg.environment = parse_environment(obj["environment"], path + ".environment");
    }
    if (obj.contains("infrastructure")) {
        cfg.infrastructure = parse_infrastructure(obj["infrastructure"], path + ".infrastructure");
    }
    if (obj.contains("sim")) cfg.sim = parse_sim(obj["sim"], path + ".sim");
    return cfg;
}

ScenarioConfig load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ScenarioParseError("cannot open scenario file: " + path);
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ScenarioParseError(path + ": " + e.what());
    }
    return scenario_from_json(doc);
}

void save_scenario(const ScenarioConfig& cfg, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ScenarioParseError("cannot write scenario file: " + path);
    out << scenario_to_json(cfg).dump(2) << "\n";
}

std::string scenario_hash(const ScenarioConfig& cfg) {
    return to_hex(fnv1a64(scenario_to_json(cfg).dump()));
}

}  // namespace nomadsim
