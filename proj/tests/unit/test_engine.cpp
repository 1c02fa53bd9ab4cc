#include <doctest.h>

#include <vector>

#include "nomadsim/engine.hpp"
#include "nomadsim/report.hpp"
#include "nomadsim/scenario.hpp"

using namespace nomadsim;
using nlohmann::json;

namespace {

Scenario validated(ScenarioConfig cfg) {
    auto r = validate_scenario(cfg);
    REQUIRE(r.ok());
    return *r.scenario;
}

ScenarioConfig pair_config(double duration_s) {
    ScenarioConfig cfg;
    cfg.duration_s = duration_s;
    cfg.seed = 3;
    VehicleSpec nm;
    nm.id = "nm";
    nm.rats = {"local_cell"};
    nm.initial_roles = {Role::NetworkMaster};
    VehicleSpec ue;
    ue.id = "ue";
    ue.rats = {"local_cell"};
    cfg.vehicles = {nm, ue};
    return cfg;
}

// Stationary fleet inside coverage; one strong challenger for the NM role.
ScenarioConfig handover_config() {
    ScenarioConfig cfg;
    cfg.duration_s = 10.0;
    cfg.seed = 1;
    auto vehicle = [](const std::string& id) {
        VehicleSpec v;
        v.id = id;
        v.rats = {"local_cell"};
        return v;
    };
    VehicleSpec a = vehicle("a");
    a.initial_roles = {Role::NetworkMaster};
    a.has_backhaul_radio = true;
    a.backhaul_capacity_mbps = 10.0;
    VehicleSpec b = vehicle("b");
    b.has_backhaul_radio = true;
    b.backhaul_capacity_mbps = 40.0;
    cfg.vehicles = {a, b, vehicle("c"), vehicle("d")};
    cfg.infrastructure = InfrastructureSpec{};
    cfg.sim.handover_gap_ms = 50.0;
    return cfg;
}

std::vector<const TraceRecord*> records_of(const EventTrace& tr, const std::string& kind) {
    std::vector<const TraceRecord*> out;
    for (const auto& rec : tr.records) {
        if (rec.kind == kind) out.push_back(&rec);
    }
    return out;
}

}  // namespace

TEST_CASE("a zero-length run emits only the group snapshot") {
    auto cfg = pair_config(0.0);
    auto [trace, report] = run(validated(cfg));
    REQUIRE(trace.records.size() == 1);
    CHECK(trace.records[0].kind == "group_init");
    CHECK(trace.records[0].data.at("nm") == "nm");
    CHECK(trace.records[0].data.at("gateway").is_null());
    CHECK(report.flows.empty());
    CHECK(report.pass_ratio == 1.0);
}

TEST_CASE("a steady local flow settles after one tick") {
    auto cfg = pair_config(2.0);
    FlowSpec f;
    f.id = "f";
    f.src = "ue";
    f.dst = "nm";
    f.use_case = "UC2";
    f.demand_mbps = 1.0;
    f.active = {0.0, 1.5};
    cfg.flows = {f};

    auto [trace, report] = run(validated(cfg));

    auto starts = records_of(trace, "flow_start");
    REQUIRE(starts.size() == 1);
    CHECK(starts[0]->t_s == 0.0);
    CHECK(starts[0]->data.at("scope") == "local");
    CHECK(starts[0]->data.at("demand_mbps") == 1.0);

    auto attaches = records_of(trace, "attach_change");
    REQUIRE(attaches.size() == 1);  // the UE attaches once and never moves
    CHECK(attaches[0]->data.at("vehicle") == "ue");
    CHECK(attaches[0]->data.at("serving") == "nm");
    CHECK(attaches[0]->data.at("rat") == "local_cell");

    auto routes = records_of(trace, "route_change");
    REQUIRE(routes.size() == 1);
    CHECK(routes[0]->data.at("status") == "ok");
    REQUIRE(routes[0]->data.at("hops").size() == 1);
    CHECK(routes[0]->data.at("latency_ms") == 10.0);

    // The allocation never changes, so exactly one record and one report.
    auto allocs = records_of(trace, "alloc_change");
    REQUIRE(allocs.size() == 1);
    CHECK(allocs[0]->data.at("bandwidth_mbps") == 1.0);  // demand bounded
    CHECK(allocs[0]->data.at("reachable") == true);
    CHECK(records_of(trace, "notification").size() == 1);

    auto stops = records_of(trace, "flow_stop");
    REQUIRE(stops.size() == 1);
    CHECK(stops[0]->t_s == 1.5);

    REQUIRE(report.flows.size() == 1);
    CHECK(report.flows[0].pass);
    CHECK(report.pass_ratio == 1.0);
}

TEST_CASE("placement epochs recur and track the outage estimate") {
    auto cfg = pair_config(21.0);
    VnfSpec v;
    v.id = "video_cache";
    v.cls = VnfClass::Other;
    v.impl_cost = 12.0;
    v.opp_cost = 6.0;
    cfg.vnfs = {v};

    auto [trace, report] = run(validated(cfg));

    auto epochs = records_of(trace, "placement_epoch");
    REQUIRE(epochs.size() == 3);  // t = 0, 10, 20
    CHECK(epochs[0]->t_s == 0.0);
    CHECK(epochs[1]->t_s == 10.0);
    CHECK(epochs[2]->t_s == 20.0);
    // No gateway anywhere: every tick samples an outage, p_hat climbs.
    CHECK(epochs[0]->data.at("p_hat").get<double>() == doctest::Approx(0.1));
    CHECK(epochs[1]->data.at("p_hat").get<double>() > 0.99);
    CHECK(epochs[0]->data.at("strategy") == "island");

    auto avail = records_of(trace, "vnf_availability");
    REQUIRE(avail.size() == 3);  // one per vnf per epoch
    for (const auto* rec : avail) {
        CHECK(rec->data.at("vnf") == "video_cache");
        CHECK(rec->data.at("available") == false);  // remote with no backhaul
    }
    CHECK(report.placement.size() == 3);
}

TEST_CASE("runs are deterministic byte for byte") {
    auto cfg = handover_config();
    FlowSpec f;
    f.id = "f";
    f.src = "c";
    f.dst = "d";
    f.use_case = "UC7";
    f.demand_mbps = 0.256;
    f.active = {0.0, 10.0};
    cfg.flows = {f};

    auto [trace1, report1] = run(validated(cfg));
    auto [trace2, report2] = run(validated(cfg));
    CHECK(trace_to_jsonl(trace1) == trace_to_jsonl(trace2));
    CHECK(report_to_json(report1).dump() == report_to_json(report2).dump());
}

TEST_CASE("random blockages differ across seeds but not within one") {
    auto cfg = pair_config(30.0);
    cfg.sim.random_blockage_count = 3;
    cfg.sim.random_blockage_max_s = 10.0;

    auto [trace_a, ra] = run(validated(cfg));
    auto [trace_b, rb] = run(validated(cfg));
    CHECK(trace_to_jsonl(trace_a) == trace_to_jsonl(trace_b));

    auto other = cfg;
    other.seed = cfg.seed + 1;
    auto [trace_c, rc] = run(validated(other));
    CHECK(trace_to_jsonl(trace_a) != trace_to_jsonl(trace_c));

    CHECK(!records_of(trace_a, "env_change").empty());
}

TEST_CASE("the election runs a full handover with the old master last") {
    auto cfg = handover_config();
    auto [trace, report] = run(validated(cfg));

    auto detected = records_of(trace, "candidate_detected");
    REQUIRE(detected.size() == 1);
    CHECK(detected[0]->t_s == 1.0);
    CHECK(detected[0]->data.at("candidate") == "b");
    CHECK(detected[0]->data.at("capacity_mbps") == 40.0);
    CHECK(detected[0]->data.at("incumbent") == "a");
    CHECK(records_of(trace, "candidate_withdrawn").empty());

    auto started = records_of(trace, "migration_started");
    REQUIRE(started.size() == 1);
    CHECK(started[0]->t_s == 6.0);  // detected at 1, held for 5
    CHECK(started[0]->data.at("from") == "a");
    CHECK(started[0]->data.at("to") == "b");

    auto switched = records_of(trace, "ue_switched");
    REQUIRE(switched.size() == 3);
    CHECK(switched[0]->t_s == 6.2);
    CHECK(switched[0]->data.at("ue") == "c");
    CHECK(switched[1]->t_s == 6.3);
    CHECK(switched[1]->data.at("ue") == "d");
    CHECK(switched[2]->t_s == 6.4);
    CHECK(switched[2]->data.at("ue") == "a");  // the outgoing master re-homes last
    for (const auto* rec : switched) {
        CHECK(rec->data.at("to") == "b");
        CHECK(rec->data.at("gap_ms") == 50.0);
    }

    auto complete = records_of(trace, "migration_complete");
    REQUIRE(complete.size() == 1);
    CHECK(complete[0]->t_s == 6.4);
    CHECK(complete[0]->data.at("old_nm") == "a");
    CHECK(complete[0]->data.at("new_nm") == "b");
    CHECK(complete[0]->data.at("ue_switches") == 3);
    CHECK(complete[0]->data.at("max_gap_ms") == 50.0);
    CHECK(complete[0]->data.at("latency_budget_ms").is_null());  // no flows were active
    CHECK(complete[0]->data.at("smooth") == true);

    // The gateway follows the master role at the next tick.
    auto gateways = records_of(trace, "gateway_change");
    REQUIRE(gateways.size() == 2);
    CHECK(gateways[0]->t_s == 0.0);
    CHECK(gateways[0]->data.at("gateway") == "a");
    CHECK(gateways[1]->t_s == 6.5);
    CHECK(gateways[1]->data.at("gateway") == "b");

    REQUIRE(report.handovers.size() == 1);
    CHECK(report.handovers[0].ue_switches == 3);
    CHECK(report.handovers[0].smooth);
}

TEST_CASE("a handover gap longer than a tick interrupts flows measurably") {
    auto cfg = handover_config();
    cfg.sim.handover_gap_ms = 150.0;
    FlowSpec f;
    f.id = "f";
    f.src = "c";
    f.dst = "d";
    f.use_case = "UC7";
    f.demand_mbps = 0.256;
    f.active = {0.0, 10.0};
    cfg.flows = {f};

    auto [trace, report] = run(validated(cfg));

    bool saw_gap = false;
    for (const auto& rec : trace.records) {
        if (rec.kind == "route_change" && rec.data.value("status", "") == "unreachable") {
            CHECK(rec.data.at("reason") == "handover_gap");
            CHECK(rec.t_s == 6.3);  // first tick inside c's 150 ms gap
            saw_gap = true;
            break;
        }
    }
    CHECK(saw_gap);

    // The gap stays within UC7's latency budget, so the migration is smooth,
    // but the flow was measurably dark and fails strict scoring.
    REQUIRE(report.handovers.size() == 1);
    CHECK(report.handovers[0].max_gap_ms == 150.0);
    REQUIRE(report.handovers[0].latency_budget_ms.has_value());
    CHECK(*report.handovers[0].latency_budget_ms == 1000.0);
    CHECK(report.handovers[0].smooth);
    REQUIRE(report.flows.size() == 1);
    CHECK(!report.flows[0].pass);
    CHECK(report.flows[0].fail_reason == "unreachable");
}

TEST_CASE("stepping advances monotonically to the end of the horizon") {
    auto cfg = pair_config(1.0);
    Simulation sim(validated(cfg));
    double last = sim.now_s();
    int steps = 0;
    while (sim.step()) {
        CHECK(sim.now_s() >= last);
        last = sim.now_s();
        ++steps;
    }
    CHECK(steps > 0);
    CHECK(sim.now_s() == 1.0);
    CHECK(!sim.step());  // exhausted queues stay exhausted
}
