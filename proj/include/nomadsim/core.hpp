#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "nomadsim/util.hpp"

namespace nomadsim {

// Reserved endpoint id for anything that lives behind the backhaul.
inline constexpr const char* kInfrastructureId = "infrastructure";

struct Position {
    double x_m = 0.0;
    double y_m = 0.0;
};

double distance_m(const Position& a, const Position& b);

enum class Role { NetworkMaster, CoordinatingVehicle, UserEquipment, Gateway };

const char* role_name(Role r);
std::optional<Role> role_from_name(const std::string& name);

enum class Scope { Local, Global, LocalPlusUplink };

const char* scope_name(Scope s);
std::optional<Scope> scope_from_name(const std::string& name);

struct VehicleSpec {
    std::string id;
    std::vector<std::string> rats;
    int mmw_antennas = 0;
    bool has_backhaul_radio = false;
    std::set<Role> initial_roles;
    // Capacity of the vehicle's own uplink radio; unset vehicles with a
    // backhaul radio get the infrastructure default.
    std::optional<double> backhaul_capacity_mbps;
};

// One row of the use-case requirement table. Range is not applicable for
// global rows and must never decay to 0 or infinity.
struct UseCaseRequirement {
    std::string id;
    Scope scope = Scope::Local;
    std::optional<double> range_m;
    double throughput_mbps = 0.0;  // minimum required
    double latency_ms = 0.0;       // maximum allowed
    std::string application;
};

// The ten built-in use cases, in table order.
const std::vector<UseCaseRequirement>& requirement_catalog();
const UseCaseRequirement* find_requirement(const std::string& id);
const UseCaseRequirement* find_requirement(const std::string& id,
                                           const std::vector<UseCaseRequirement>& catalog);

struct FlowSpec {
    std::string id;
    std::string src;  // vehicle id or "infrastructure"
    std::string dst;
    std::string use_case;
    double demand_mbps = 0.0;
    Interval active;
};

}  // namespace nomadsim
