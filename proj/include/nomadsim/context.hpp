#pragma once

#include <map>
#include <string>
#include <vector>

namespace nomadsim {

struct BackhaulSample {
    double t_s = 0.0;
    bool up = true;
};

struct MeasurementSample {
    double t_s = 0.0;
    std::string link_id;
    bool available = false;
    double capacity_mbps = 0.0;
    double latency_ms = 0.0;
};

struct LinkEstimate {
    double capacity_mbps = 0.0;
    double latency_ms = 0.0;
};

struct ContextSnapshot {
    double t_s = 0.0;
    std::map<std::string, LinkEstimate> links;
    double p_hat = 0.0;
};

double ewma_step(double prev, double sample, double alpha);

// Exponentially weighted outage estimate over a sample history, seeded at 0
// (an unobserved backhaul counts as reliable until proven otherwise).
double estimate_outage_probability(const std::vector<BackhaulSample>& history, double alpha);

// Folds per-link measurements into smoothed estimates; the estimate of each
// link is seeded with its first sample. Samples on the reserved link id
// "backhaul" feed p_hat, where available=false counts as an outage tick.
ContextSnapshot snapshot(double t_s, const std::vector<MeasurementSample>& samples, double alpha);

inline constexpr const char* kBackhaulLinkId = "backhaul";

struct FlowServiceLevel {
    double bandwidth_mbps = 0.0;
    double delay_ms = 0.0;
    bool reachable = false;
};

struct Notification {
    std::string flow_id;
    double t_s = 0.0;
    FlowServiceLevel level;
};

// Change-triggered service level reports: a flow notifies when its level
// moved by more than epsilon_rel relative to the last sent value, when its
// reachability flipped, or when it never reported before. last_sent is
// updated in place for the flows that fired. Output is ordered by flow id.
std::vector<Notification> emit_notifications(double t_s,
                                             const std::map<std::string, FlowServiceLevel>& current,
                                             std::map<std::string, FlowServiceLevel>& last_sent,
                                             double epsilon_rel);

}  // namespace nomadsim
