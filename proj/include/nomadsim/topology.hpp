#pragma once

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "nomadsim/core.hpp"
#include "nomadsim/link.hpp"

namespace nomadsim {

struct Attachment {
    std::string serving;  // node whose cell the member hangs off
    std::string rat;
    LinkQuality quality;
};

struct GroupTopology {
    std::set<std::string> members;
    std::string nm;
    std::string cv;
    std::optional<std::string> gateway;
    // One entry per member other than the NM; nullopt marks an unreachable
    // member that stays in the group.
    std::map<std::string, std::optional<Attachment>> attachments;
};

struct ElectionPolicy {
    double hysteresis_ratio = 1.5;  // challenger must beat the incumbent by this factor
    double hold_time_s = 5.0;       // and hold the lead this long
};

// --- NM handover machine ---------------------------------------------------

struct Stable {};
struct CandidateDetected {
    std::string candidate;
    double since_s = 0.0;
};
struct Prepare {
    std::string candidate;
};
struct Switch {
    std::string candidate;
    std::set<std::string> remaining_ues;
};
struct Complete {
    std::string candidate;
};

using HandoverState = std::variant<Stable, CandidateDetected, Prepare, Switch, Complete>;

struct CandidateConfirmed {};
struct CandidateWithdrawn {};
struct PrepareDone {
    std::vector<std::string> ues;  // migration order; the old NM goes last
};
struct UeSwitched {
    std::string ue;
};
struct AllSwitched {};
struct AbortHandover {};

using HandoverEvent =
    std::variant<CandidateConfirmed, CandidateWithdrawn, PrepareDone, UeSwitched, AllSwitched,
                 AbortHandover>;

// Commands handed back for the kernel to execute and trace.
struct MigrationStarted {
    std::string candidate;
};
struct SwitchUe {
    std::string ue;
    std::string to;
};
struct RolesReassigned {
    std::string new_nm;
};
struct MigrationAborted {};

using HandoverAction = std::variant<MigrationStarted, SwitchUe, RolesReassigned, MigrationAborted>;

class IllegalTransition : public std::runtime_error {
public:
    IllegalTransition(const std::string& state, const std::string& event);
};

const char* handover_state_name(const HandoverState& s);
const char* handover_event_name(const HandoverEvent& e);

struct HandoverStepResult {
    HandoverState state;
    std::vector<HandoverAction> actions;
};

// Pure transition function; anything not listed in the transition table
// throws IllegalTransition.
HandoverStepResult handover_step(const HandoverState& state, const HandoverEvent& event);

struct NmDecision {
    bool migrate = false;
    std::string candidate;
};

// Hysteresis election over backhaul capacity. Owns the Stable and
// CandidateDetected states: a challenger that beats the incumbent by the
// hysteresis ratio starts (or continues) the hold timer, a lapsed challenger
// resets it, and a change of best challenger restarts it. Returns
// migrate=true once the lead has been held for the full hold time; the caller
// then drives the machine with CandidateConfirmed.
NmDecision elect_nm(const std::map<std::string, double>& backhaul_capacity_mbps,
                    const std::string& current_nm, const ElectionPolicy& policy, double now_s,
                    HandoverState& state);

// --- RAT selection and routing ---------------------------------------------

// Names of the RATs usable between two nodes at the given separation, best
// first: capacity desc, then latency asc, then name. Point-to-point RATs
// require a granted antenna pair.
std::vector<std::string> select_rat(const std::vector<RatSpec>& catalog, double distance_m,
                                    bool los, RainIntensity rain, bool antenna_pair);

struct Hop {
    std::string from;
    std::string to;
    std::string rat;      // "backhaul" for the infrastructure hop
    std::string link_key; // shared-capacity pool this hop draws from
    LinkQuality quality;
};

struct Path {
    std::vector<Hop> hops;
    double latency_ms = 0.0;
    double bottleneck_mbps = 0.0;  // min raw hop capacity, before sharing
};

enum class UnreachableReason {
    BackhaulDown,
    SrcUnattached,
    DstUnattached,
    NoRoute,
    HandoverGap,
};

const char* unreachable_reason_name(UnreachableReason r);

struct Unreachable {
    UnreachableReason reason;
};

using RouteResult = std::variant<Path, Unreachable>;

struct DirectLink {
    std::string rat;
    LinkQuality quality;
};

// Instantaneous link environment for one tick.
struct LinkSnapshot {
    // Granted directive point-to-point pairs, keyed by unordered pair.
    std::map<std::pair<std::string, std::string>, DirectLink> p2p_links;
    // Best shared-RAT link between node pairs that may relay for each other.
    std::map<std::pair<std::string, std::string>, DirectLink> relay_links;
    bool backhaul_up = false;
    double backhaul_latency_ms = 0.0;
    // Vehicles whose own uplink radio is live right now, with its capacity.
    std::map<std::string, double> uplink_mbps;
    // Members sitting inside a handover data-plane gap.
    std::set<std::string> gap_blocked;
};

std::pair<std::string, std::string> pair_key(const std::string& a, const std::string& b);

// Hop sequence for one flow at one instant. Local flows ride a granted
// point-to-point link when there is one, otherwise relay over serving nodes.
// Flows with an infrastructure endpoint leave through the vehicle's own
// uplink when live, else through the gateway.
RouteResult route_flow(const FlowSpec& flow, Scope scope, const GroupTopology& topo,
                       const LinkSnapshot& links);

// --- Capacity sharing --------------------------------------------------------

struct FlowDemand {
    std::string flow_id;
    double demand_mbps = 0.0;
    std::vector<std::string> links;  // link keys with multiplicity
};

// Max-min fair share per flow under per-link capacities, demand-bounded.
// A flow crossing a link twice consumes twice its share there.
std::map<std::string, double> allocate_capacity(const std::map<std::string, double>& link_capacity,
                                                const std::vector<FlowDemand>& flows);

}  // namespace nomadsim
