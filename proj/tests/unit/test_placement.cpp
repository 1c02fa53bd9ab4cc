#include <doctest.h>

#include <cmath>
#include <cstdint>

#include "nomadsim/placement.hpp"
#include "nomadsim/util.hpp"

using namespace nomadsim;

namespace {

VnfSpec vnf(const std::string& id, VnfClass cls, double impl, double opp, double weight = 1.0) {
    VnfSpec v;
    v.id = id;
    v.cls = cls;
    v.impl_cost = impl;
    v.opp_cost = opp;
    v.weight = weight;
    return v;
}

}  // namespace

TEST_CASE("effective opportunity cost scales with probability and weight") {
    VnfSpec v = vnf("x", VnfClass::Other, 4.0, 10.0);
    CHECK(effective_opportunity_cost(v, OutageProbability(0.0)) == 0.0);
    CHECK(effective_opportunity_cost(v, OutageProbability(0.5)) == 5.0);
    CHECK(effective_opportunity_cost(v, OutageProbability(1.0)) == 10.0);

    v.weight = 2.0;
    CHECK(effective_opportunity_cost(v, OutageProbability(0.5)) == 10.0);
}

TEST_CASE("outage probability rejects values outside the unit interval") {
    CHECK_NOTHROW(OutageProbability(0.0));
    CHECK_NOTHROW(OutageProbability(1.0));
    CHECK_THROWS_AS(OutageProbability(-0.01), std::invalid_argument);
    CHECK_THROWS_AS(OutageProbability(1.01), std::invalid_argument);
    CHECK_THROWS_AS(OutageProbability(std::nan("")), std::invalid_argument);
}

TEST_CASE("plan cost sums local hosting and remote exposure") {
    std::vector<VnfSpec> catalog = {vnf("aaa", VnfClass::Security, 4.0, 10.0),
                                    vnf("hss", VnfClass::SubscriberData, 8.0, 6.0)};
    OutageProbability p(0.5);
    CHECK(plan_cost(catalog, {}, p) == 5.0 + 3.0);
    CHECK(plan_cost(catalog, {"aaa"}, p) == 4.0 + 3.0);
    CHECK(plan_cost(catalog, {"aaa", "hss"}, p) == 4.0 + 8.0);
    CHECK_THROWS_AS(plan_cost(catalog, {"nope"}, p), UnknownVnf);
}

TEST_CASE("island keeps a function local when the exposure beats hosting") {
    std::vector<VnfSpec> catalog = {vnf("aaa", VnfClass::Security, 4.0, 10.0),
                                    vnf("hss", VnfClass::SubscriberData, 8.0, 6.0)};
    PlacementPlan plan = plan_island(catalog, OutageProbability(0.5));
    CHECK(plan.strategy == Strategy::Island);
    CHECK(plan.local == std::set<std::string>{"aaa"});
    CHECK(plan.remote == std::set<std::string>{"hss"});
    CHECK(plan.total_cost == 4.0 + 3.0);
}

TEST_CASE("island leaves ties remote") {
    // effective exposure 0.5 * 8 == impl cost 4: staying remote wins the tie.
    std::vector<VnfSpec> catalog = {vnf("even", VnfClass::Other, 4.0, 8.0)};
    PlacementPlan plan = plan_island(catalog, OutageProbability(0.5));
    CHECK(plan.local.empty());
    CHECK(plan.remote == std::set<std::string>{"even"});
    CHECK(plan.total_cost == 4.0);
}

TEST_CASE("trust zone moves the security block all or nothing") {
    std::vector<VnfSpec> catalog = {vnf("a", VnfClass::Security, 4.0, 10.0),
                                    vnf("b", VnfClass::Security, 10.0, 2.0)};
    // Summed exposure 6 < summed hosting 14: the whole block stays remote,
    // even though "a" alone would move under island rules.
    PlacementPlan half = plan_trust_zone(catalog, OutageProbability(0.5));
    CHECK(half.local.empty());
    CHECK(half.remote == std::set<std::string>{"a", "b"});
    CHECK(half.total_cost == 6.0);

    PlacementPlan certain = plan_trust_zone(catalog, OutageProbability(1.0));
    CHECK(certain.local.empty());
    CHECK(certain.total_cost == 12.0);
}

TEST_CASE("trust zone moves the block when the summed exposure dominates") {
    std::vector<VnfSpec> heavy = {vnf("a", VnfClass::Security, 4.0, 10.0),
                                  vnf("b", VnfClass::Security, 10.0, 9.0)};
    PlacementPlan moved = plan_trust_zone(heavy, OutageProbability(1.0));
    CHECK(moved.local == std::set<std::string>{"a", "b"});
    CHECK(moved.remote.empty());
    CHECK(moved.total_cost == 14.0);
}

TEST_CASE("trust zone never places non-security functions locally") {
    std::vector<VnfSpec> catalog = {vnf("a", VnfClass::Security, 4.0, 10.0),
                                    vnf("cache", VnfClass::Other, 1.0, 100.0),
                                    vnf("subs", VnfClass::SubscriberData, 1.0, 100.0)};
    // Both non-security entries would move under island rules; trust zone
    // scopes the decision to the security block alone.
    PlacementPlan plan = plan_trust_zone(catalog, OutageProbability(1.0));
    CHECK(plan.local == std::set<std::string>{"a"});
    CHECK(plan.remote == std::set<std::string>{"cache", "subs"});
}

TEST_CASE("private hosts everything locally regardless of probability") {
    std::vector<VnfSpec> catalog = {vnf("a", VnfClass::Security, 4.0, 10.0),
                                    vnf("b", VnfClass::Other, 100.0, 0.1)};
    PlacementPlan plan = plan_private(catalog);
    CHECK(plan.strategy == Strategy::Private);
    CHECK(plan.local == std::set<std::string>{"a", "b"});
    CHECK(plan.remote.empty());
    CHECK(plan.total_cost == 104.0);
}

TEST_CASE("single vnf with exposure equal to hosting stays remote") {
    std::vector<VnfSpec> catalog = {vnf("only", VnfClass::Security, 7.0, 7.0)};
    PlacementPlan island = plan_island(catalog, OutageProbability(1.0));
    CHECK(island.local.empty());
    PlacementPlan tz = plan_trust_zone(catalog, OutageProbability(1.0));
    CHECK(tz.local.empty());
    // The exhaustive search agrees: both splits cost 7, ties prefer fewer locals.
    PlacementPlan best = brute_force_plan(catalog, OutageProbability(1.0));
    CHECK(best.local.empty());
    CHECK(best.total_cost == 7.0);
}

TEST_CASE("brute force rejects catalogs too large to enumerate") {
    std::vector<VnfSpec> big;
    for (int i = 0; i < 21; ++i) {
        big.push_back(vnf("v" + std::to_string(i), VnfClass::Other, 1.0, 1.0));
    }
    CHECK_THROWS_AS(brute_force_plan(big, OutageProbability(0.5)), CatalogTooLarge);
    big.pop_back();
    CHECK_NOTHROW(brute_force_plan(big, OutageProbability(0.5)));
}

TEST_CASE("island matches the exhaustive optimum on random catalogs") {
    SplitMix64 rng(20260819);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<VnfSpec> catalog;
        std::size_t n = 1 + rng.next_below(10);
        for (std::size_t i = 0; i < n; ++i) {
            double impl = 0.5 + 14.5 * rng.next_unit();
            double opp = 0.5 + 14.5 * rng.next_unit();
            double weight = 3.0 * rng.next_unit();
            catalog.push_back(vnf("v" + std::to_string(i), VnfClass::Other, impl, opp, weight));
        }
        for (double p : {0.0, 0.25, 0.5, 0.75, 1.0}) {
            PlacementPlan greedy = plan_island(catalog, OutageProbability(p));
            PlacementPlan best = brute_force_plan(catalog, OutageProbability(p));
            CAPTURE(trial);
            CAPTURE(p);
            CHECK(greedy.total_cost == doctest::Approx(best.total_cost).epsilon(1e-12));
        }
    }
}

TEST_CASE("island locals grow monotonically with the outage probability") {
    std::vector<VnfSpec> catalog = {vnf("aaa", VnfClass::Security, 4.0, 40.0),
                                    vnf("auth_proxy", VnfClass::Security, 6.0, 30.0),
                                    vnf("hss", VnfClass::SubscriberData, 9.0, 25.0),
                                    vnf("session_mgr", VnfClass::Other, 5.0, 20.0),
                                    vnf("video_cache", VnfClass::Other, 12.0, 6.0)};
    std::set<std::string> prev;
    for (int i = 0; i <= 20; ++i) {
        PlacementPlan plan = plan_island(catalog, OutageProbability(i / 20.0));
        for (const auto& id : prev) {
            CAPTURE(i);
            CHECK(plan.local.count(id) == 1);
        }
        prev = plan.local;
    }
    // The full catalog ends up local once an outage is certain.
    CHECK(prev.size() == 4);  // video_cache never moves: 6 < 12
}

TEST_CASE("island never costs more than the coarser strategies") {
    SplitMix64 rng(77);
    for (int trial = 0; trial < 30; ++trial) {
        std::vector<VnfSpec> catalog;
        std::size_t n = 1 + rng.next_below(6);
        for (std::size_t i = 0; i < n; ++i) {
            catalog.push_back(vnf("s" + std::to_string(i), VnfClass::Security,
                                  0.5 + 9.5 * rng.next_unit(), 0.5 + 9.5 * rng.next_unit()));
        }
        for (double p : {0.0, 0.3, 0.7, 0.99, 1.0}) {
            PlacementPlan island = plan_island(catalog, OutageProbability(p));
            PlacementPlan tz = plan_trust_zone(catalog, OutageProbability(p));
            PlacementPlan priv = plan_private(catalog);
            CAPTURE(trial);
            CAPTURE(p);
            // Per-function decisions dominate the all-or-nothing block on
            // pure security catalogs; private only matches at certain outage.
            CHECK(island.total_cost <= tz.total_cost);
            if (p < 1.0) CHECK(island.total_cost <= priv.total_cost);
        }
    }
}

TEST_CASE("empty catalog plans are empty and free") {
    for (Strategy s : {Strategy::TrustZone, Strategy::Island, Strategy::Private}) {
        PlacementPlan plan = plan_for(s, {}, OutageProbability(0.5));
        CHECK(plan.local.empty());
        CHECK(plan.remote.empty());
        CHECK(plan.total_cost == 0.0);
    }
    PlacementPlan best = brute_force_plan({}, OutageProbability(0.5));
    CHECK(best.total_cost == 0.0);
}

TEST_CASE("service availability distinguishes local hosting from backhaul reach") {
    std::vector<VnfSpec> catalog = {vnf("aaa", VnfClass::Security, 4.0, 40.0),
                                    vnf("video_cache", VnfClass::Other, 12.0, 6.0)};
    PlacementPlan plan = plan_island(catalog, OutageProbability(0.5));
    REQUIRE(plan.local.count("aaa") == 1);
    REQUIRE(plan.remote.count("video_cache") == 1);

    CHECK(service_available(plan, "aaa", false));
    CHECK(service_available(plan, "aaa", true));
    CHECK(!service_available(plan, "video_cache", false));
    CHECK(service_available(plan, "video_cache", true));
    CHECK_THROWS_AS(service_available(plan, "ghost", false), UnknownVnf);
}

TEST_CASE("strategy and vnf class names round-trip") {
    for (Strategy s : {Strategy::TrustZone, Strategy::Island, Strategy::Private}) {
        auto back = strategy_from_name(strategy_name(s));
        REQUIRE(back.has_value());
        CHECK(*back == s);
    }
    CHECK(strategy_name(Strategy::TrustZone) == std::string("trustzone"));
    CHECK(!strategy_from_name("bold").has_value());

    for (VnfClass c : {VnfClass::Security, VnfClass::SubscriberData, VnfClass::Other}) {
        auto back = vnf_class_from_name(vnf_class_name(c));
        REQUIRE(back.has_value());
        CHECK(*back == c);
    }
    CHECK(!vnf_class_from_name("misc").has_value());
}
