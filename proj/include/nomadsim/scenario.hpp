#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "nomadsim/core.hpp"
#include "nomadsim/link.hpp"
#include "nomadsim/placement.hpp"
#include "nomadsim/topology.hpp"

namespace nomadsim {

struct Waypoint {
    double t_s = 0.0;
    Position pos;
};

struct MobilityTrace {
    std::string vehicle;
    std::vector<Waypoint> waypoints;  // strictly increasing t_s
};

// Piecewise linear interpolation, clamped to the first and last waypoint.
Position position_at(const MobilityTrace& trace, double t_s);

struct InfrastructureSpec {
    Position base_station;
    double coverage_radius_m = 800.0;
    double capacity_mbps = 1000.0;  // default per-uplink backhaul capacity
    double latency_ms = 5.0;        // one-way to the operator core
};

struct SimParams {
    double tick_s = 0.1;
    double placement_epoch_s = 10.0;
    double election_check_s = 1.0;
    double prepare_s = 0.1;
    double ue_switch_spacing_s = 0.1;
    double handover_gap_ms = 0.0;
    double ewma_alpha = 0.1;
    double notify_epsilon = 0.01;
    int random_blockage_count = 0;
    double random_blockage_max_s = 30.0;
};

struct ScenarioConfig {
    double duration_s = 0.0;
    std::uint64_t seed = 0;
    std::vector<VehicleSpec> vehicles;
    std::vector<MobilityTrace> traces;
    std::vector<FlowSpec> flows;
    std::vector<RatSpec> rats;
    std::vector<VnfSpec> vnfs;
    Strategy strategy = Strategy::Island;
    ElectionPolicy election;
    EnvironmentState environment;
    std::optional<std::string> cv;
    std::optional<InfrastructureSpec> infrastructure;
    SimParams sim;
};

enum class ViolationKind {
    UnknownVehicle,
    UnknownUseCase,
    UnknownRat,
    NegativeDuration,
    DuplicateId,
    InvalidField,
};

const char* violation_kind_name(ViolationKind k);

struct Violation {
    ViolationKind kind;
    std::string entity;  // offending id or field
    std::string detail;
};

// Validated and normalized: every vehicle owns a mobility trace (vehicles
// without one stand still at the origin), flow windows are clamped to
// [0, duration), the CV is resolved, and exactly one vehicle starts as NM.
struct Scenario {
    ScenarioConfig config;
    std::string initial_nm;
    std::string initial_cv;
};

struct ValidationResult {
    std::vector<Violation> violations;
    std::optional<Scenario> scenario;  // set iff violations is empty

    bool ok() const { return violations.empty(); }
};

ValidationResult validate_scenario(const ScenarioConfig& config);

class InvalidParams : public std::invalid_argument {
public:
    explicit InvalidParams(const std::string& what) : std::invalid_argument(what) {}
};

// --- Scenario templates ------------------------------------------------------

// Harvesting campaign: a harvester group works a field outside infrastructure
// coverage while the transport harvester shuttles loads to the depot,
// carrying the group's only backhaul radio with it.
struct AgriculturalParams {
    int harvesters = 2;               // working harvesters; the transport tractor comes on top
    double field_size_m = 500.0;      // harvesting sweep width
    double trailer_capacity_s = 300.0;  // time until the trailer is full
    double depot_distance_m = 2000.0;   // base station to field center
    bool remote_control = false;      // keep the UC5 teleoperation flow on all day
    double duration_s = 1800.0;
    std::uint64_t seed = 1;
};

ScenarioConfig agricultural_cycle(const AgriculturalParams& params);

// Road works: a paver crawls along the site with rollers compacting behind
// it; a water tanker waits kilometres away and a site manager watches from
// the cabin. The paver carries the backhaul radio.
struct ConstructionParams {
    int rollers = 2;
    double site_length_m = 100.0;
    double tanker_distance_km = 5.0;  // at most 5 km, the positioning envelope
    double duration_s = 1800.0;
    std::uint64_t seed = 1;
};

ScenarioConfig construction_cycle(const ConstructionParams& params);

}  // namespace nomadsim
