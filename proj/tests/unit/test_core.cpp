#include <doctest.h>

#include "nomadsim/core.hpp"

using namespace nomadsim;

namespace {

void check_row(const UseCaseRequirement& row, const char* id, Scope scope, double range_m,
               double thr_mbps, double lat_ms, const char* application) {
    CAPTURE(id);
    CHECK(row.id == id);
    CHECK(row.scope == scope);
    if (range_m < 0) {
        CHECK(!row.range_m.has_value());
    } else {
        REQUIRE(row.range_m.has_value());
        CHECK(*row.range_m == range_m);
    }
    CHECK(row.throughput_mbps == thr_mbps);
    CHECK(row.latency_ms == lat_ms);
    CHECK(row.application == application);
}

}  // namespace

TEST_CASE("requirement catalog holds the ten frozen rows") {
    const auto& rows = requirement_catalog();
    REQUIRE(rows.size() == 10);
    check_row(rows[0], "UC1", Scope::Global, -1, 10.0, 100.0, "navigation, status info");
    check_row(rows[1], "UC1b", Scope::Local, 100.0, 1.0, 10.0, "sensor data");
    check_row(rows[2], "UC2", Scope::Local, 100.0, 1.0, 10.0, "coordinated driving");
    check_row(rows[3], "UC3", Scope::Local, 500.0, 1000.0, 1.0, "remote control, video");
    check_row(rows[4], "UC4", Scope::LocalPlusUplink, 100.0, 1000.0, 100.0, "bulk data");
    check_row(rows[5], "UC5", Scope::Global, -1, 100.0, 10.0, "remote control, video");
    check_row(rows[6], "UC6", Scope::Local, 300.0, 1000.0, 10.0,
              "sensor data / autonomy planning: distances, maps, trajectories");
    check_row(rows[7], "UC7", Scope::Local, 5000.0, 0.256, 1000.0,
              "rough positioning and status information");
    check_row(rows[8], "UC8", Scope::Local, 100.0, 150.0, 50.0, "monitoring / configuration");
    check_row(rows[9], "UC9", Scope::Global, -1, 150.0, 1000.0, "monitoring");
}

TEST_CASE("find_requirement looks rows up by id") {
    const UseCaseRequirement* uc7 = find_requirement("UC7");
    REQUIRE(uc7 != nullptr);
    CHECK(uc7->throughput_mbps == 0.256);
    CHECK(find_requirement("UC99") == nullptr);
    CHECK(find_requirement("uc1") == nullptr);  // ids are case sensitive
}

TEST_CASE("positions measure euclidean distance") {
    CHECK(distance_m({0.0, 0.0}, {3.0, 4.0}) == 5.0);
    CHECK(distance_m({1.0, 1.0}, {1.0, 1.0}) == 0.0);
    CHECK(distance_m({-3.0, 0.0}, {0.0, -4.0}) == 5.0);
}

TEST_CASE("role and scope names round-trip") {
    for (Role r : {Role::NetworkMaster, Role::CoordinatingVehicle, Role::UserEquipment,
                   Role::Gateway}) {
        auto back = role_from_name(role_name(r));
        REQUIRE(back.has_value());
        CHECK(*back == r);
    }
    CHECK(role_name(Role::NetworkMaster) == std::string("network_master"));
    CHECK(!role_from_name("overlord").has_value());

    for (Scope s : {Scope::Local, Scope::Global, Scope::LocalPlusUplink}) {
        auto back = scope_from_name(scope_name(s));
        REQUIRE(back.has_value());
        CHECK(*back == s);
    }
    CHECK(scope_name(Scope::LocalPlusUplink) == std::string("local_plus_uplink"));
    CHECK(!scope_from_name("galactic").has_value());
}
