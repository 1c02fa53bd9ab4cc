#include "nomadsim/context.hpp"

#include <algorithm>
#include <cmath>

namespace nomadsim {

double ewma_step(double prev, double sample, double alpha) {
    return alpha * sample + (1.0 - alpha) * prev;
}

double estimate_outage_probability(const std::vector<BackhaulSample>& history, double alpha) {
    std::vector<BackhaulSample> ordered = history;
    std::stable_sort(ordered.begin(), ordered.end(),
                     [](const BackhaulSample& a, const BackhaulSample& b) { return a.t_s < b.t_s; });
    double p_hat = 0.0;
    for (const auto& s : ordered) {
        p_hat = ewma_step(p_hat, s.up ? 0.0 : 1.0, alpha);
    }
    return p_hat;
}

ContextSnapshot snapshot(double t_s, const std::vector<MeasurementSample>& samples, double alpha) {
    std::vector<MeasurementSample> ordered = samples;
    std::stable_sort(ordered.begin(), ordered.end(),
                     [](const MeasurementSample& a, const MeasurementSample& b) {
                         return a.t_s < b.t_s;
                     });
    ContextSnapshot snap;
    snap.t_s = t_s;
    double p_hat = 0.0;
    for (const auto& s : ordered) {
        if (s.link_id == kBackhaulLinkId) {
            p_hat = ewma_step(p_hat, s.available ? 0.0 : 1.0, alpha);
            continue;
        }
        auto it = snap.links.find(s.link_id);
        if (it == snap.links.end()) {
            snap.links[s.link_id] = {s.capacity_mbps, s.latency_ms};
        } else {
            it->second.capacity_mbps = ewma_step(it->second.capacity_mbps, s.capacity_mbps, alpha);
            it->second.latency_ms = ewma_step(it->second.latency_ms, s.latency_ms, alpha);
        }
    }
    snap.p_hat = p_hat;
    return snap;
}

namespace {

bool moved(double prev, double now, double epsilon_rel) {
    if (prev == now) return false;
    if (prev == 0.0) return now != 0.0;
    return std::abs(now - prev) > epsilon_rel * std::abs(prev);
}

}  // namespace

std::vector<Notification> emit_notifications(double t_s,
                                             const std::map<std::string, FlowServiceLevel>& current,
                                             std::map<std::string, FlowServiceLevel>& last_sent,
                                             double epsilon_rel) {
    std::vector<Notification> out;
    for (const auto& [flow, level] : current) {
        auto it = last_sent.find(flow);
        bool fire = false;
        if (it == last_sent.end()) {
            fire = true;
        } else {
            const FlowServiceLevel& prev = it->second;
            fire = prev.reachable != level.reachable ||
                   moved(prev.bandwidth_mbps, level.bandwidth_mbps, epsilon_rel) ||
                   moved(prev.delay_ms, level.delay_ms, epsilon_rel);
        }
        if (fire) {
            last_sent[flow] = level;
            out.push_back({flow, t_s, level});
        }
    }
    return out;
}

}  // namespace nomadsim
