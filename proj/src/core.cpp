#include "nomadsim/core.hpp"

#include <cmath>

namespace nomadsim {

double distance_m(const Position& a, const Position& b) {
    return std::hypot(a.x_m - b.x_m, a.y_m - b.y_m);
}

const char* role_name(Role r) {
    switch (r) {
        case Role::NetworkMaster: return "network_master";
        case Role::CoordinatingVehicle: return "coordinating_vehicle";
        case Role::UserEquipment: return "user_equipment";
        case Role::Gateway: return "gateway";
    }
    return "?";
}

std::optional<Role> role_from_name(const std::string& name) {
    if (name == "network_master") return Role::NetworkMaster;
    if (name == "coordinating_vehicle") return Role::CoordinatingVehicle;
    if (name == "user_equipment") return Role::UserEquipment;
    if (name == "gateway") return Role::Gateway;
    return std::nullopt;
}

const char* scope_name(Scope s) {
    switch (s) {
        case Scope::Local: return "local";
        case Scope::Global: return "global";
        case Scope::LocalPlusUplink: return "local_plus_uplink";
    }
    return "?";
}

std::optional<Scope> scope_from_name(const std::string& name) {
    if (name == "local") return Scope::Local;
    if (name == "global") return Scope::Global;
    if (name == "local_plus_uplink") return Scope::LocalPlusUplink;
    return std::nullopt;
}

const std::vector<UseCaseRequirement>& requirement_catalog() {
    // Printed units in the comments; stored as Mbps / ms / m.
    static const std::vector<UseCaseRequirement> rows = {
        {"UC1", Scope::Global, std::nullopt, 10.0, 100.0,
         "navigation, status info"},                             // 10 Mbps, 100 ms
        {"UC1b", Scope::Local, 100.0, 1.0, 10.0,
         "sensor data"},                                         // 1 Mbps, 10 ms
        {"UC2", Scope::Local, 100.0, 1.0, 10.0,
         "coordinated driving"},                                 // 1 Mbps, 10 ms
        {"UC3", Scope::Local, 500.0, 1000.0, 1.0,
         "remote control, video"},                               // 1 Gbps, 1 ms
        {"UC4", Scope::LocalPlusUplink, 100.0, 1000.0, 100.0,
         "bulk data"},                                           // 1 Gbps, 100 ms
        {"UC5", Scope::Global, std::nullopt, 100.0, 10.0,
         "remote control, video"},                               // 100 Mbps, 10 ms
        {"UC6", Scope::Local, 300.0, 1000.0, 10.0,
         "sensor data / autonomy planning: distances, maps, trajectories"},  // 1 Gbps, 10 ms
        {"UC7", Scope::Local, 5000.0, 0.256, 1000.0,
         "rough positioning and status information"},            // 256 kbps, 1 s
        {"UC8", Scope::Local, 100.0, 150.0, 50.0,
         "monitoring / configuration"},                          // 150 Mbps, 50 ms
        {"UC9", Scope::Global, std::nullopt, 150.0, 1000.0,
         "monitoring"},                                          // 150 Mbps, 1 s
    };
    return rows;
}

const UseCaseRequirement* find_requirement(const std::string& id) {
    return find_requirement(id, requirement_catalog());
}

const UseCaseRequirement* find_requirement(const std::string& id,
                                           const std::vector<UseCaseRequirement>& catalog) {
    for (const auto& row : catalog) {
        if (row.id == id) return &row;
    }
    return nullptr;
}

}  // namespace nomadsim
