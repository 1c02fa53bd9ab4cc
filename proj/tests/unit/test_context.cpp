#include <doctest.h>

#include "nomadsim/context.hpp"

using namespace nomadsim;

TEST_CASE("ewma blends the sample into the running value") {
    CHECK(ewma_step(0.0, 1.0, 0.5) == 0.5);
    CHECK(ewma_step(0.5, 1.0, 0.5) == 0.75);
    CHECK(ewma_step(10.0, 10.0, 0.3) == 10.0);
    CHECK(ewma_step(4.0, 8.0, 0.0) == 4.0);
    CHECK(ewma_step(4.0, 8.0, 1.0) == 8.0);
}

TEST_CASE("outage estimate starts at zero and tracks down samples") {
    CHECK(estimate_outage_probability({}, 0.5) == 0.0);

    // [down, up]: 0 -> 0.5 -> 0.25.
    std::vector<BackhaulSample> history = {{0.0, false}, {1.0, true}};
    CHECK(estimate_outage_probability(history, 0.5) == 0.25);

    // All-up history never leaves zero.
    std::vector<BackhaulSample> calm = {{0.0, true}, {1.0, true}, {2.0, true}};
    CHECK(estimate_outage_probability(calm, 0.5) == 0.0);

    // Persistent outage converges towards one from below.
    std::vector<BackhaulSample> storm;
    for (int i = 0; i < 200; ++i) storm.push_back({i * 1.0, false});
    double p = estimate_outage_probability(storm, 0.1);
    CHECK(p > 0.999);
    CHECK(p < 1.0);
}

TEST_CASE("snapshot seeds each link with its first sample") {
    std::vector<MeasurementSample> samples = {
        {0.0, "a>b:mmw26", true, 1000.0, 1.0},
        {0.1, "a>b:mmw26", true, 500.0, 1.0},
        {0.0, kBackhaulLinkId, false, 0.0, 0.0},
        {0.1, kBackhaulLinkId, true, 100.0, 5.0},
    };
    ContextSnapshot snap = snapshot(0.1, samples, 0.5);
    CHECK(snap.t_s == 0.1);
    REQUIRE(snap.links.count("a>b:mmw26") == 1);
    CHECK(snap.links.at("a>b:mmw26").capacity_mbps == 750.0);  // seed 1000, then blend 500
    CHECK(snap.links.at("a>b:mmw26").latency_ms == 1.0);
    // backhaul samples feed the outage estimate, not the link table.
    CHECK(snap.links.count(kBackhaulLinkId) == 0);
    CHECK(snap.p_hat == 0.25);
}

TEST_CASE("notifications fire on first report, threshold crossing, and flips") {
    std::map<std::string, FlowServiceLevel> last;

    std::map<std::string, FlowServiceLevel> t0 = {
        {"f1", {100.0, 5.0, true}},
        {"f2", {10.0, 50.0, true}},
    };
    auto first = emit_notifications(0.0, t0, last, 0.01);
    REQUIRE(first.size() == 2);
    CHECK(first[0].flow_id == "f1");
    CHECK(first[1].flow_id == "f2");
    CHECK(first[0].level.bandwidth_mbps == 100.0);
    CHECK(last.size() == 2);

    // Within one percent: silent.
    std::map<std::string, FlowServiceLevel> t1 = {
        {"f1", {100.5, 5.0, true}},
        {"f2", {10.0, 50.0, true}},
    };
    CHECK(emit_notifications(0.1, t1, last, 0.01).empty());
    CHECK(last.at("f1").bandwidth_mbps == 100.0);  // unsent levels do not update the baseline

    // Beyond one percent on bandwidth: f1 fires again.
    std::map<std::string, FlowServiceLevel> t2 = {
        {"f1", {98.0, 5.0, true}},
        {"f2", {10.0, 50.0, true}},
    };
    auto moved = emit_notifications(0.2, t2, last, 0.01);
    REQUIRE(moved.size() == 1);
    CHECK(moved[0].flow_id == "f1");
    CHECK(moved[0].t_s == 0.2);
    CHECK(last.at("f1").bandwidth_mbps == 98.0);

    // Latency drift alone also counts.
    std::map<std::string, FlowServiceLevel> t3 = {
        {"f1", {98.0, 6.0, true}},
        {"f2", {10.0, 50.0, true}},
    };
    auto lat = emit_notifications(0.3, t3, last, 0.01);
    REQUIRE(lat.size() == 1);
    CHECK(lat[0].level.delay_ms == 6.0);

    // Reachability flips always fire, even with identical numbers.
    std::map<std::string, FlowServiceLevel> t4 = {
        {"f1", {98.0, 6.0, false}},
        {"f2", {10.0, 50.0, true}},
    };
    auto flip = emit_notifications(0.4, t4, last, 0.01);
    REQUIRE(flip.size() == 1);
    CHECK(!flip[0].level.reachable);
}

TEST_CASE("notification output is ordered by flow id") {
    std::map<std::string, FlowServiceLevel> last;
    std::map<std::string, FlowServiceLevel> current = {
        {"zeta", {1.0, 1.0, true}},
        {"alpha", {1.0, 1.0, true}},
        {"mid", {1.0, 1.0, true}},
    };
    auto out = emit_notifications(0.0, current, last, 0.01);
    REQUIRE(out.size() == 3);
    CHECK(out[0].flow_id == "alpha");
    CHECK(out[1].flow_id == "mid");
    CHECK(out[2].flow_id == "zeta");
}
