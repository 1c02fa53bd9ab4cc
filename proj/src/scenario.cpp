#include "nomadsim/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

namespace nomadsim {

Position position_at(const MobilityTrace& trace, double t_s) {
    const auto& wp = trace.waypoints;
    if (wp.empty()) return {0.0, 0.0};
    if (t_s <= wp.front().t_s) return wp.front().pos;
    if (t_s >= wp.back().t_s) return wp.back().pos;
    for (std::size_t i = 1; i < wp.size(); ++i) {
        if (t_s <= wp[i].t_s) {
            const Waypoint& a = wp[i - 1];
            const Waypoint& b = wp[i];
            const double span = b.t_s - a.t_s;
            const double f = span > 0.0 ? (t_s - a.t_s) / span : 0.0;
            return {a.pos.x_m + f * (b.pos.x_m - a.pos.x_m),
                    a.pos.y_m + f * (b.pos.y_m - a.pos.y_m)};
        }
    }
    return wp.back().pos;
}

const char* violation_kind_name(ViolationKind k) {
    switch (k) {
        case ViolationKind::UnknownVehicle: return "UnknownVehicle";
        case ViolationKind::UnknownUseCase: return "UnknownUseCase";
        case ViolationKind::UnknownRat: return "UnknownRat";
        case ViolationKind::NegativeDuration: return "NegativeDuration";
        case ViolationKind::DuplicateId: return "DuplicateId";
        case ViolationKind::InvalidField: return "InvalidField";
    }
    return "?";
}

namespace {

bool finite(double v) {
    return std::isfinite(v);
}

double round_ms(double t_s) {
    return std::round(t_s * 1000.0) / 1000.0;
}

}  // namespace

ValidationResult validate_scenario(const ScenarioConfig& input) {
    ValidationResult res;
    auto bad = [&](ViolationKind k, const std::string& entity, const std::string& detail) {
        res.violations.push_back({k, entity, detail});
    };

    ScenarioConfig cfg = input;

    if (!(cfg.duration_s >= 0.0) || !finite(cfg.duration_s)) {
        bad(ViolationKind::NegativeDuration, "duration_s",
            "scenario duration must be a finite value >= 0");
        cfg.duration_s = 0.0;
    }
    cfg.duration_s = round_ms(cfg.duration_s);

    if (cfg.rats.empty()) cfg.rats = default_rat_catalog();
    std::set<std::string> rat_names;
    for (const auto& rat : cfg.rats) {
        if (rat.name.empty()) {
            bad(ViolationKind::InvalidField, "rats", "rat with empty name");
            continue;
        }
        if (!rat_names.insert(rat.name).second) {
            bad(ViolationKind::DuplicateId, rat.name, "duplicate rat name");
        }
        if (!(rat.max_range_m > 0.0) || !(rat.capacity_mbps > 0.0) ||
            !(rat.base_latency_ms > 0.0)) {
            bad(ViolationKind::InvalidField, rat.name,
                "rat range, capacity and latency must be > 0");
        }
    }

    std::set<std::string> vehicle_ids;
    std::vector<std::string> masters;
    std::vector<std::string> coordinators;
    for (const auto& v : cfg.vehicles) {
        if (v.id.empty()) {
            bad(ViolationKind::InvalidField, "vehicles", "vehicle with empty id");
            continue;
        }
        if (v.id == kInfrastructureId) {
            bad(ViolationKind::InvalidField, v.id, "vehicle id is reserved");
            continue;
        }
        if (!vehicle_ids.insert(v.id).second) {
            bad(ViolationKind::DuplicateId, v.id, "duplicate vehicle id");
            continue;
        }
        if (v.mmw_antennas < 0) {
            bad(ViolationKind::InvalidField, v.id, "mmw_antennas must be >= 0");
        }
        if (v.backhaul_capacity_mbps && !(*v.backhaul_capacity_mbps > 0.0)) {
            bad(ViolationKind::InvalidField, v.id, "backhaul_capacity_mbps must be > 0");
        }
        for (const auto& r : v.rats) {
            if (!rat_names.count(r)) {
                bad(ViolationKind::UnknownRat, r, "vehicle " + v.id + " lists unknown rat");
            }
        }
        if (v.initial_roles.count(Role::NetworkMaster)) masters.push_back(v.id);
        if (v.initial_roles.count(Role::CoordinatingVehicle)) coordinators.push_back(v.id);
    }

    std::string initial_nm;
    if (!cfg.vehicles.empty()) {
        if (masters.empty()) {
            // Normalization: the first listed vehicle starts as NM.
            cfg.vehicles.front().initial_roles.insert(Role::NetworkMaster);
            initial_nm = cfg.vehicles.front().id;
        } else if (masters.size() > 1) {
            bad(ViolationKind::InvalidField, masters[1],
                "more than one vehicle starts as network master");
        } else {
            initial_nm = masters.front();
        }
    }

    std::string initial_cv;
    if (cfg.cv) {
        if (!vehicle_ids.count(*cfg.cv)) {
            bad(ViolationKind::UnknownVehicle, *cfg.cv, "cv designates a missing vehicle");
        } else {
            initial_cv = *cfg.cv;
        }
    } else if (coordinators.size() == 1) {
        initial_cv = coordinators.front();
    } else if (coordinators.size() > 1) {
        bad(ViolationKind::InvalidField, coordinators[1],
            "more than one vehicle starts as coordinating vehicle");
    } else {
        initial_cv = initial_nm;  // degenerate default: the NM coordinates
    }
    cfg.cv = initial_cv.empty() ? std::nullopt : std::make_optional(initial_cv);

    std::set<std::string> traced;
    for (const auto& tr : cfg.traces) {
        if (!vehicle_ids.count(tr.vehicle)) {
            bad(ViolationKind::UnknownVehicle, tr.vehicle, "trace for missing vehicle");
            continue;
        }
        if (!traced.insert(tr.vehicle).second) {
            bad(ViolationKind::DuplicateId, tr.vehicle, "duplicate mobility trace");
            continue;
        }
        double prev = -std::numeric_limits<double>::infinity();
        for (const auto& wp : tr.waypoints) {
            if (!finite(wp.t_s) || !finite(wp.pos.x_m) || !finite(wp.pos.y_m)) {
                bad(ViolationKind::InvalidField, tr.vehicle, "non-finite waypoint");
                break;
            }
            if (wp.t_s <= prev) {
                bad(ViolationKind::InvalidField, tr.vehicle,
                    "waypoint times must be strictly increasing");
                break;
            }
            prev = wp.t_s;
        }
    }
    for (const auto& v : cfg.vehicles) {
        if (vehicle_ids.count(v.id) && !traced.count(v.id)) {
            // Normalization: untraced vehicles stand still at the origin.
            cfg.traces.push_back({v.id, {{0.0, {0.0, 0.0}}}});
        }
    }

    std::set<std::string> flow_ids;
    for (auto& f : cfg.flows) {
        if (f.id.empty()) {
            bad(ViolationKind::InvalidField, "flows", "flow with empty id");
            continue;
        }
        if (!flow_ids.insert(f.id).second) {
            bad(ViolationKind::DuplicateId, f.id, "duplicate flow id");
            continue;
        }
        const bool src_infra = f.src == kInfrastructureId;
        const bool dst_infra = f.dst == kInfrastructureId;
        if (!src_infra && !vehicle_ids.count(f.src)) {
            bad(ViolationKind::UnknownVehicle, f.src, "flow " + f.id + " src");
        }
        if (!dst_infra && !vehicle_ids.count(f.dst)) {
            bad(ViolationKind::UnknownVehicle, f.dst, "flow " + f.id + " dst");
        }
        if (f.src == f.dst) {
            bad(ViolationKind::InvalidField, f.id, "flow src and dst must differ");
        }
        const UseCaseRequirement* req = find_requirement(f.use_case);
        if (!req) {
            bad(ViolationKind::UnknownUseCase, f.use_case, "flow " + f.id);
        } else {
            if (req->scope == Scope::Local) {
                if (src_infra || dst_infra) {
                    bad(ViolationKind::InvalidField, f.id,
                        "local-scope flow cannot terminate at the infrastructure");
                }
            } else if (src_infra == dst_infra) {
                bad(ViolationKind::InvalidField, f.id,
                    "global and local+uplink flows need exactly one infrastructure endpoint");
            }
            if (!finite(f.demand_mbps) || f.demand_mbps < req->throughput_mbps) {
                bad(ViolationKind::InvalidField, f.id,
                    "demand below the use case's required throughput");
            }
        }
        if (!finite(f.active.start_s) || !finite(f.active.end_s) ||
            f.active.start_s < 0.0 || f.active.end_s < f.active.start_s ||
            f.active.end_s > cfg.duration_s) {
            bad(ViolationKind::InvalidField, f.id,
                "active interval must lie within [0, duration]");
        } else {
            f.active.start_s = round_ms(f.active.start_s);
            f.active.end_s = round_ms(f.active.end_s);
        }
    }

    std::set<std::string> vnf_ids;
    for (const auto& vnf : cfg.vnfs) {
        if (vnf.id.empty()) {
            bad(ViolationKind::InvalidField, "vnfs", "vnf with empty id");
            continue;
        }
        if (!vnf_ids.insert(vnf.id).second) {
            bad(ViolationKind::DuplicateId, vnf.id, "duplicate vnf id");
        }
        if (!(vnf.impl_cost >= 0.0) || !(vnf.opp_cost >= 0.0) || !(vnf.weight >= 0.0)) {
            bad(ViolationKind::InvalidField, vnf.id, "vnf costs and weight must be >= 0");
        }
    }

    if (!(cfg.election.hysteresis_ratio > 1.0)) {
        bad(ViolationKind::InvalidField, "election.hysteresis_ratio", "must be > 1");
    }
    if (!(cfg.election.hold_time_s >= 0.0)) {
        bad(ViolationKind::InvalidField, "election.hold_time_s", "must be >= 0");
    }

    if (cfg.infrastructure) {
        const auto& inf = *cfg.infrastructure;
        if (!(inf.coverage_radius_m > 0.0) || !(inf.capacity_mbps > 0.0) ||
            !(inf.latency_ms >= 0.0) || !finite(inf.base_station.x_m) ||
            !finite(inf.base_station.y_m)) {
            bad(ViolationKind::InvalidField, "infrastructure", "invalid base station parameters");
        }
    }

    const SimParams& sp = cfg.sim;
    if (!(sp.tick_s > 0.0) || !(sp.placement_epoch_s > 0.0) || !(sp.election_check_s > 0.0) ||
        !(sp.prepare_s >= 0.0) || !(sp.ue_switch_spacing_s >= 0.0) ||
        !(sp.handover_gap_ms >= 0.0) || !(sp.ewma_alpha > 0.0) || !(sp.ewma_alpha <= 1.0) ||
        !(sp.notify_epsilon >= 0.0) || sp.random_blockage_count < 0 ||
        !(sp.random_blockage_max_s > 0.0)) {
        bad(ViolationKind::InvalidField, "sim", "invalid simulation parameters");
    }

    auto check_env_pair = [&](const Blockage& blk) {
        if (!vehicle_ids.count(blk.a)) {
            bad(ViolationKind::UnknownVehicle, blk.a, "blockage names a missing vehicle");
        }
        if (!vehicle_ids.count(blk.b)) {
            bad(ViolationKind::UnknownVehicle, blk.b, "blockage names a missing vehicle");
        }
    };
    auto clamp_iv = [&](Interval& iv) {
        // Normalization: environment intervals are clipped to the horizon.
        iv.start_s = std::clamp(round_ms(iv.start_s), 0.0, cfg.duration_s);
        iv.end_s = std::clamp(round_ms(iv.end_s), iv.start_s, cfg.duration_s);
    };
    for (auto& blk : cfg.environment.blockages) {
        check_env_pair(blk);
        if (!finite(blk.when.start_s) || !finite(blk.when.end_s)) {
            bad(ViolationKind::InvalidField, blk.a + "/" + blk.b, "non-finite blockage interval");
            continue;
        }
        clamp_iv(blk.when);
    }
    for (auto& iv : cfg.environment.heavy_rain) clamp_iv(iv);
    for (auto& iv : cfg.environment.backhaul_outages) clamp_iv(iv);

    if (!res.violations.empty()) return res;

    Scenario sc;
    sc.config = std::move(cfg);
    sc.initial_nm = initial_nm;
    sc.initial_cv = initial_cv;
    res.scenario = std::move(sc);
    return res;
}

// --- Template generators -----------------------------------------------------

namespace {

constexpr double kTick = 0.1;

double align_to_tick(double t_s) {
    return std::round(t_s / kTick) * kTick;
}

// First time the straight segment a(t0) -> b(t1) crosses the circle around c
// with radius r. The caller guarantees exactly one crossing on the segment.
double segment_circle_crossing(Position a, Position b, double t0, double t1, Position c,
                               double r) {
    const double dx = b.x_m - a.x_m;
    const double dy = b.y_m - a.y_m;
    const double fx = a.x_m - c.x_m;
    const double fy = a.y_m - c.y_m;
    const double qa = dx * dx + dy * dy;
    const double qb = 2.0 * (fx * dx + fy * dy);
    const double qc = fx * fx + fy * fy - r * r;
    const double disc = qb * qb - 4.0 * qa * qc;
    if (qa <= 0.0 || disc < 0.0) throw std::logic_error("segment does not cross coverage circle");
    const double root = std::sqrt(disc);
    for (double s : {(-qb - root) / (2.0 * qa), (-qb + root) / (2.0 * qa)}) {
        if (s >= 0.0 && s <= 1.0) return t0 + s * (t1 - t0);
    }
    throw std::logic_error("segment does not cross coverage circle");
}

std::vector<VnfSpec> default_vnf_catalog() {
    // Chosen so the island split flips VNF by VNF as p climbs: aaa first,
    // then session control, while the caches never pay their way locally.
    return {
        {"aaa", VnfClass::Security, 4.0, 40.0, 1.0},
        {"auth_proxy", VnfClass::Security, 6.0, 30.0, 1.0},
        {"hss", VnfClass::SubscriberData, 9.0, 25.0, 1.0},
        {"session_mgr", VnfClass::Other, 5.0, 20.0, 1.0},
        {"video_cache", VnfClass::Other, 12.0, 6.0, 1.0},
    };
}

std::vector<std::string> all_rats() {
    return {"mmw26", "local_cell", "long_range"};
}

struct FlowBuilder {
    double duration_s;
    std::vector<FlowSpec>& out;

    // Windows are aligned to the default tick and clipped to the horizon;
    // empty windows are dropped.
    void add(const std::string& id, const std::string& src, const std::string& dst,
             const std::string& use_case, double start_s, double end_s) {
        const UseCaseRequirement* req = find_requirement(use_case);
        double s = std::max(0.0, align_to_tick(start_s));
        double e = std::min(duration_s, align_to_tick(end_s));
        if (!(e > s)) return;
        out.push_back({id, src, dst, use_case, req->throughput_mbps, {s, e}});
    }
};

}  // namespace

ScenarioConfig agricultural_cycle(const AgriculturalParams& p) {
    if (p.harvesters < 2) throw InvalidParams("agricultural_cycle needs at least 2 harvesters");
    if (!(p.field_size_m > 0.0)) throw InvalidParams("field_size_m must be > 0");
    if (!(p.trailer_capacity_s > 0.0)) throw InvalidParams("trailer_capacity_s must be > 0");
    if (!(p.duration_s >= 0.0)) throw InvalidParams("duration_s must be >= 0");

    const double coverage = 800.0;
    const double half = p.field_size_m / 2.0;
    if (!(p.depot_distance_m - half > coverage + 50.0)) {
        throw InvalidParams("field must lie outside infrastructure coverage");
    }

    ScenarioConfig cfg;
    cfg.duration_s = p.duration_s;
    cfg.seed = p.seed;
    cfg.strategy = Strategy::Island;
    cfg.rats = default_rat_catalog();
    cfg.vnfs = default_vnf_catalog();
    cfg.infrastructure = InfrastructureSpec{{0.0, 0.0}, coverage, 1000.0, 5.0};
    cfg.cv = "h1";

    const int antennas = p.harvesters + 2;

    VehicleSpec lead{"h1", all_rats(), antennas, false,
                     {Role::NetworkMaster, Role::CoordinatingVehicle}, std::nullopt};
    cfg.vehicles.push_back(lead);
    for (int i = 2; i <= p.harvesters; ++i) {
        cfg.vehicles.push_back(
            {"h" + std::to_string(i), all_rats(), antennas, false, {}, std::nullopt});
    }
    cfg.vehicles.push_back({"t1", all_rats(), antennas, true, {}, std::nullopt});
    cfg.vehicles.push_back({"trailer1", all_rats(), 1, false, {}, std::nullopt});
    cfg.vehicles.push_back({"operator1", all_rats(), 1, false, {}, std::nullopt});

    // Working harvesters sweep the field side to side at 2 m/s, in phase,
    // one lane apart.
    const double field_x = p.depot_distance_m;
    const double sweep_v = 2.0;
    MobilityTrace h1_trace{"h1", {}};
    {
        double t = 0.0;
        double x = field_x;
        int dir = 1;
        h1_trace.waypoints.push_back({t, {x, 0.0}});
        // First leg starts from the center.
        double leg = half / sweep_v;
        while (t < p.duration_s + 1.0) {
            t += leg;
            x += dir * sweep_v * leg;
            h1_trace.waypoints.push_back({t, {x, 0.0}});
            dir = -dir;
            leg = p.field_size_m / sweep_v;
        }
    }
    cfg.traces.push_back(h1_trace);
    for (int i = 2; i <= p.harvesters; ++i) {
        MobilityTrace lane = h1_trace;
        lane.vehicle = "h" + std::to_string(i);
        for (auto& wp : lane.waypoints) wp.pos.y_m = 10.0 * (i - 1);
        cfg.traces.push_back(lane);
    }

    cfg.traces.push_back({"operator1", {{0.0, {field_x, -20.0}}}});

    // Transport cycle: depot -> field (parallel lane beside h1) -> depot,
    // dwell, repeat. 10 m/s nominal travel speed, 120 s depot dwell.
    const double travel = p.depot_distance_m / 10.0;
    const double dwell = 120.0;
    const Position depot{0.0, 0.0};
    const double lane_y = 15.0;

    MobilityTrace t1_trace{"t1", {}};
    FlowBuilder flows{cfg.duration_s, cfg.flows};

    t1_trace.waypoints.push_back({0.0, depot});
    double t0 = 0.0;
    int cycle = 1;
    while (t0 < p.duration_s) {
        const double t_arr = t0 + travel;
        const double t_dep = t_arr + p.trailer_capacity_s;
        const double t_ret = t_dep + travel;
        const std::string c = "_c" + std::to_string(cycle);

        // Work segment tracks h1 at a fixed lateral offset.
        Position work_start{position_at(h1_trace, t_arr).x_m, lane_y};
        Position work_end{position_at(h1_trace, t_dep).x_m, lane_y};
        t1_trace.waypoints.push_back({t_arr, work_start});
        for (const auto& wp : h1_trace.waypoints) {
            if (wp.t_s > t_arr && wp.t_s < t_dep) {
                t1_trace.waypoints.push_back({wp.t_s, {wp.pos.x_m, lane_y}});
            }
        }
        t1_trace.waypoints.push_back({t_dep, work_end});
        t1_trace.waypoints.push_back({t_ret, depot});

        // Coverage crossings on the straight travel legs drive the UC1 and
        // UC4 windows.
        const double exit_t =
            segment_circle_crossing(depot, work_start, t0, t_arr, depot, coverage);
        const double entry_t =
            segment_circle_crossing(work_end, depot, t_dep, t_ret, depot, coverage);

        flows.add("uc1_transport" + c, "t1", kInfrastructureId, "UC1", t0, exit_t - 5.0);
        flows.add("uc2_coord" + c, "h1", "t1", "UC2", t_arr, t_dep);
        flows.add("uc4_offload" + c, "t1", kInfrastructureId, "UC4", entry_t + 2.0,
                  entry_t + 122.0);

        t0 = t_ret + dwell;
        if (t0 < p.duration_s) t1_trace.waypoints.push_back({t0, depot});
        ++cycle;
    }
    cfg.traces.push_back(t1_trace);

    // The trailer is towed 5 m behind the transport harvester.
    MobilityTrace trailer = t1_trace;
    trailer.vehicle = "trailer1";
    for (auto& wp : trailer.waypoints) wp.pos.x_m -= 5.0;
    cfg.traces.push_back(trailer);

    flows.add("uc1b_trailer", "trailer1", "t1", "UC1b", 0.0, p.duration_s);
    flows.add("uc3_operator", "operator1", "h1", "UC3", 0.0, p.duration_s);
    for (int i = 2; i <= p.harvesters; ++i) {
        flows.add("uc2_h" + std::to_string(i), "h" + std::to_string(i), "h1", "UC2", 0.0,
                  p.duration_s);
    }
    if (p.remote_control) {
        flows.add("uc5_teleop", kInfrastructureId, "h1", "UC5", 0.0, p.duration_s);
    }

    return cfg;
}

ScenarioConfig construction_cycle(const ConstructionParams& p) {
    if (p.rollers < 1) throw InvalidParams("construction_cycle needs at least 1 roller");
    if (!(p.site_length_m > 0.0)) throw InvalidParams("site_length_m must be > 0");
    if (!(p.tanker_distance_km > 0.0) || p.tanker_distance_km > 5.0) {
        throw InvalidParams("tanker_distance_km must lie in (0, 5]");
    }
    if (!(p.duration_s >= 0.0)) throw InvalidParams("duration_s must be >= 0");

    ScenarioConfig cfg;
    cfg.duration_s = p.duration_s;
    cfg.seed = p.seed;
    cfg.strategy = Strategy::Island;
    cfg.rats = default_rat_catalog();
    cfg.vnfs = default_vnf_catalog();
    cfg.infrastructure = InfrastructureSpec{{0.0, 200.0}, 800.0, 1000.0, 5.0};
    cfg.cv = "paver";

    cfg.vehicles.push_back({"paver", all_rats(), p.rollers + 1, true,
                            {Role::NetworkMaster, Role::CoordinatingVehicle}, std::nullopt});
    for (int i = 1; i <= p.rollers; ++i) {
        cfg.vehicles.push_back({"r" + std::to_string(i), all_rats(), 3, false, {}, std::nullopt});
    }
    cfg.vehicles.push_back({"tanker1", {"local_cell", "long_range"}, 0, false, {}, std::nullopt});
    cfg.vehicles.push_back({"manager1", all_rats(), 1, false, {}, std::nullopt});

    // Paver crawls forward at 5 cm/s; rollers compact the segment behind it
    // at 1 m/s, in phase, one lane each.
    const double crawl = 0.05;
    cfg.traces.push_back(
        {"paver",
         {{0.0, {0.0, 0.0}}, {std::max(p.duration_s, 1.0), {crawl * std::max(p.duration_s, 1.0), 0.0}}}});

    const double leg = p.site_length_m;  // seconds per leg at 1 m/s
    auto roller_wave = [&](int lane, double from_t, double until_t, double phase_x) {
        // Triangle wave starting at x = phase_x (must be 0 here), walking
        // [0, site_length] and back.
        std::vector<Waypoint> wps;
        double t = from_t;
        double x = phase_x;
        int dir = 1;
        wps.push_back({t, {x, -4.0 * lane}});
        while (t < until_t) {
            t += leg;
            x += dir * leg;
            wps.push_back({t, {x, -4.0 * lane}});
            dir = -dir;
        }
        return wps;
    };

    const double tanker_d = p.tanker_distance_km * 1000.0;
    const Position tanker_pos{tanker_d, -4.0};
    cfg.traces.push_back({"tanker1", {{0.0, tanker_pos}}});
    cfg.traces.push_back({"manager1", {{0.0, {30.0, 10.0}}}});

    // One refill trip: r1 leaves after finishing a full compaction period
    // past t = 400, drives to the tanker at 10 m/s, fills for 50 s, returns.
    const double period = 2.0 * leg;
    const double t_det = std::ceil(400.0 / period) * period;
    const double trip = tanker_d / 10.0;
    const double t_fill = t_det + trip;
    const double t_back = t_fill + 50.0;
    const double t_ret = t_back + trip;

    FlowBuilder flows{cfg.duration_s, cfg.flows};

    for (int i = 1; i <= p.rollers; ++i) {
        const std::string rid = "r" + std::to_string(i);
        if (i == 1 && t_det < p.duration_s) {
            auto wps = roller_wave(i, 0.0, t_det, 0.0);
            while (!wps.empty() && wps.back().t_s > t_det) wps.pop_back();
            if (wps.empty() || wps.back().t_s < t_det) wps.push_back({t_det, {0.0, -4.0}});
            wps.push_back({t_fill, tanker_pos});
            wps.push_back({t_back, tanker_pos});
            wps.push_back({t_ret, {0.0, -4.0}});
            auto resumed = roller_wave(i, t_ret, p.duration_s + period, 0.0);
            wps.insert(wps.end(), resumed.begin() + 1, resumed.end());
            cfg.traces.push_back({rid, std::move(wps)});
        } else {
            cfg.traces.push_back({rid, roller_wave(i, 0.0, p.duration_s + period, 0.0)});
        }
    }

    // UC6 exchanges pause while r1 is away refilling.
    auto add_split = [&](const std::string& id, const std::string& src, const std::string& dst,
                         bool involves_r1) {
        if (involves_r1 && t_det < p.duration_s) {
            flows.add(id + "_a", src, dst, "UC6", 0.0, t_det);
            flows.add(id + "_b", src, dst, "UC6", t_ret, p.duration_s);
        } else {
            flows.add(id, src, dst, "UC6", 0.0, p.duration_s);
        }
    };
    for (int i = 1; i <= p.rollers; ++i) {
        const std::string rid = "r" + std::to_string(i);
        add_split("uc6_" + rid + "_paver", rid, "paver", i == 1);
    }
    for (int i = 1; i < p.rollers; ++i) {
        const std::string a = "r" + std::to_string(i);
        const std::string b = "r" + std::to_string(i + 1);
        add_split("uc6_" + a + "_" + b, a, b, i == 1);
        add_split("uc6_" + b + "_" + a, b, a, i == 1);
    }

    if (t_det < p.duration_s) {
        flows.add("uc7_refill", "r1", "tanker1", "UC7", t_det, t_ret);
    }
    flows.add("uc8_site_monitor", "manager1", "paver", "UC8", 0.0, p.duration_s);
    flows.add("uc9_remote_monitor", "manager1", kInfrastructureId, "UC9", 0.0, p.duration_s);

    return cfg;
}

}  // namespace nomadsim
