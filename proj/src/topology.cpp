#include "nomadsim/topology.hpp"

#include <algorithm>
#include <limits>

namespace nomadsim {

IllegalTransition::IllegalTransition(const std::string& state, const std::string& event)
    : std::runtime_error("illegal handover transition: event '" + event + "' in state '" + state +
                         "'") {}

const char* handover_state_name(const HandoverState& s) {
    switch (s.index()) {
        case 0: return "stable";
        case 1: return "candidate_detected";
        case 2: return "prepare";
        case 3: return "switch";
        case 4: return "complete";
    }
    return "?";
}

const char* handover_event_name(const HandoverEvent& e) {
    switch (e.index()) {
        case 0: return "candidate_confirmed";
        case 1: return "candidate_withdrawn";
        case 2: return "prepare_done";
        case 3: return "ue_switched";
        case 4: return "all_switched";
        case 5: return "abort";
    }
    return "?";
}

HandoverStepResult handover_step(const HandoverState& state, const HandoverEvent& event) {
    auto illegal = [&]() -> IllegalTransition {
        return {handover_state_name(state), handover_event_name(event)};
    };

    if (const auto* cd = std::get_if<CandidateDetected>(&state)) {
        if (std::holds_alternative<CandidateConfirmed>(event)) {
            return {Prepare{cd->candidate}, {MigrationStarted{cd->candidate}}};
        }
        if (std::holds_alternative<CandidateWithdrawn>(event)) {
            return {Stable{}, {}};
        }
        throw illegal();
    }

    if (const auto* pr = std::get_if<Prepare>(&state)) {
        if (const auto* done = std::get_if<PrepareDone>(&event)) {
            Switch sw;
            sw.candidate = pr->candidate;
            std::vector<HandoverAction> actions;
            for (const auto& ue : done->ues) {
                sw.remaining_ues.insert(ue);
                actions.push_back(SwitchUe{ue, pr->candidate});
            }
            // Make-before-break: the UEs keep their current serving node
            // until each SwitchUe command is executed.
            return {std::move(sw), std::move(actions)};
        }
        if (std::holds_alternative<AbortHandover>(event)) {
            return {Stable{}, {MigrationAborted{}}};
        }
        throw illegal();
    }

    if (const auto* sw = std::get_if<Switch>(&state)) {
        if (const auto* done = std::get_if<UeSwitched>(&event)) {
            Switch next = *sw;
            if (next.remaining_ues.erase(done->ue) == 0) {
                throw IllegalTransition(handover_state_name(state),
                                        "ue_switched for unexpected ue '" + done->ue + "'");
            }
            return {std::move(next), {}};
        }
        if (std::holds_alternative<AllSwitched>(event)) {
            if (!sw->remaining_ues.empty()) throw illegal();
            return {Complete{sw->candidate}, {RolesReassigned{sw->candidate}}};
        }
        if (std::holds_alternative<AbortHandover>(event)) {
            return {Stable{}, {MigrationAborted{}}};
        }
        throw illegal();
    }

    // Stable only moves through elect_nm; Complete is collapsed to Stable by
    // the caller once the role change has been applied.
    throw illegal();
}

NmDecision elect_nm(const std::map<std::string, double>& backhaul_capacity_mbps,
                    const std::string& current_nm, const ElectionPolicy& policy, double now_s,
                    HandoverState& state) {
    NmDecision decision;
    const bool stable = std::holds_alternative<Stable>(state);
    const bool watching = std::holds_alternative<CandidateDetected>(state);
    if (!stable && !watching) return decision;  // elections pause mid-handover

    double incumbent = 0.0;
    if (auto it = backhaul_capacity_mbps.find(current_nm); it != backhaul_capacity_mbps.end()) {
        incumbent = it->second;
    }

    // Best challenger; capacity ties go to the lexicographically first id.
    std::string challenger;
    double challenger_cap = -1.0;
    for (const auto& [id, cap] : backhaul_capacity_mbps) {
        if (id == current_nm) continue;
        if (cap > challenger_cap || (cap == challenger_cap && id < challenger)) {
            challenger = id;
            challenger_cap = cap;
        }
    }

    const bool qualifies =
        !challenger.empty() && challenger_cap > policy.hysteresis_ratio * incumbent;
    if (!qualifies) {
        if (watching) state = Stable{};
        return decision;
    }

    if (const auto* cd = std::get_if<CandidateDetected>(&state); !cd || cd->candidate != challenger) {
        // New lead (or a different challenger took it): the hold starts over.
        state = CandidateDetected{challenger, now_s};
    }
    const auto& cd = std::get<CandidateDetected>(state);
    if (now_s - cd.since_s >= policy.hold_time_s) {
        decision.migrate = true;
        decision.candidate = challenger;
    }
    return decision;
}

std::vector<std::string> select_rat(const std::vector<RatSpec>& catalog, double distance_m,
                                    bool los, RainIntensity rain, bool antenna_pair) {
    std::vector<const RatSpec*> usable;
    for (const auto& rat : catalog) {
        if (rat.point_to_point && !antenna_pair) continue;
        if (link_quality(rat, distance_m, los, rain).available) usable.push_back(&rat);
    }
    std::sort(usable.begin(), usable.end(), [](const RatSpec* a, const RatSpec* b) {
        if (a->capacity_mbps != b->capacity_mbps) return a->capacity_mbps > b->capacity_mbps;
        if (a->base_latency_ms != b->base_latency_ms) return a->base_latency_ms < b->base_latency_ms;
        return a->name < b->name;
    });
    std::vector<std::string> names;
    names.reserve(usable.size());
    for (const auto* rat : usable) names.push_back(rat->name);
    return names;
}

const char* unreachable_reason_name(UnreachableReason r) {
    switch (r) {
        case UnreachableReason::BackhaulDown: return "backhaul_down";
        case UnreachableReason::SrcUnattached: return "src_unattached";
        case UnreachableReason::DstUnattached: return "dst_unattached";
        case UnreachableReason::NoRoute: return "no_route";
        case UnreachableReason::HandoverGap: return "handover_gap";
    }
    return "?";
}

std::pair<std::string, std::string> pair_key(const std::string& a, const std::string& b) {
    return a < b ? std::make_pair(a, b) : std::make_pair(b, a);
}

namespace {

std::string p2p_key(const std::string& from, const std::string& to, const std::string& rat) {
    return "p2p:" + from + ">" + to + ":" + rat;
}

std::string cell_key(const std::string& serving, const std::string& rat) {
    return "cell:" + serving + ":" + rat;
}

// Serving node of a member, nullopt when unattached. The NM serves itself.
std::optional<std::string> serving_node(const GroupTopology& topo, const std::string& v) {
    if (v == topo.nm) return v;
    auto it = topo.attachments.find(v);
    if (it == topo.attachments.end() || !it->second) return std::nullopt;
    return it->second->serving;
}

// Attachment hop member -> serving node. Rides the granted point-to-point
// link when that is what the attachment uses, otherwise the serving cell.
Hop attachment_hop(const GroupTopology& topo, const LinkSnapshot& links, const std::string& member,
                   const std::string& serving, bool toward_serving) {
    const Attachment& att = *topo.attachments.at(member);
    const std::string from = toward_serving ? member : serving;
    const std::string to = toward_serving ? serving : member;
    auto p2p = links.p2p_links.find(pair_key(member, serving));
    if (p2p != links.p2p_links.end() && p2p->second.rat == att.rat) {
        return {from, to, att.rat, p2p_key(from, to, att.rat), att.quality};
    }
    return {from, to, att.rat, cell_key(serving, att.rat), att.quality};
}

RouteResult finish_path(std::vector<Hop> hops) {
    Path path;
    path.hops = std::move(hops);
    path.bottleneck_mbps = std::numeric_limits<double>::infinity();
    for (const auto& hop : path.hops) {
        path.latency_ms += hop.quality.latency_ms;
        path.bottleneck_mbps = std::min(path.bottleneck_mbps, hop.quality.capacity_mbps);
    }
    return path;
}

// Chain from a vehicle to the infrastructure, in the uplink direction.
RouteResult uplink_chain(const GroupTopology& topo, const LinkSnapshot& links,
                         const std::string& v, bool v_is_src) {
    std::vector<Hop> hops;
    auto backhaul_hop = [&](const std::string& g) {
        double cap = 0.0;
        if (auto it = links.uplink_mbps.find(g); it != links.uplink_mbps.end()) cap = it->second;
        hops.push_back({g, kInfrastructureId, "backhaul", "bh:" + g,
                        {true, cap, links.backhaul_latency_ms}});
    };

    if (links.uplink_mbps.count(v)) {
        // The vehicle's own uplink radio is live: no detour over the gateway.
        backhaul_hop(v);
        return finish_path(std::move(hops));
    }
    if (!links.backhaul_up || !topo.gateway || !links.uplink_mbps.count(*topo.gateway)) {
        return Unreachable{UnreachableReason::BackhaulDown};
    }
    const std::string& g = *topo.gateway;
    if (v != g) {
        auto sv = serving_node(topo, v);
        if (!sv) {
            return Unreachable{v_is_src ? UnreachableReason::SrcUnattached
                                        : UnreachableReason::DstUnattached};
        }
        if (v != *sv) hops.push_back(attachment_hop(topo, links, v, *sv, true));
        if (*sv != g) {
            auto relay = links.relay_links.find(pair_key(*sv, g));
            if (relay == links.relay_links.end()) return Unreachable{UnreachableReason::NoRoute};
            hops.push_back({*sv, g, relay->second.rat,
                            cell_key(pair_key(*sv, g).first, relay->second.rat),
                            relay->second.quality});
        }
    }
    backhaul_hop(g);
    return finish_path(std::move(hops));
}

RouteResult reverse_path(RouteResult r) {
    auto* path = std::get_if<Path>(&r);
    if (!path) return r;
    std::reverse(path->hops.begin(), path->hops.end());
    for (auto& hop : path->hops) {
        std::swap(hop.from, hop.to);
        // Point-to-point pools are directional; shared pools are not.
        if (hop.link_key.rfind("p2p:", 0) == 0) hop.link_key = p2p_key(hop.from, hop.to, hop.rat);
    }
    return r;
}

}  // namespace

RouteResult route_flow(const FlowSpec& flow, Scope scope, const GroupTopology& topo,
                       const LinkSnapshot& links) {
    const bool src_infra = flow.src == kInfrastructureId;
    const bool dst_infra = flow.dst == kInfrastructureId;

    if ((!src_infra && links.gap_blocked.count(flow.src)) ||
        (!dst_infra && links.gap_blocked.count(flow.dst))) {
        return Unreachable{UnreachableReason::HandoverGap};
    }

    if (scope != Scope::Local) {
        if (src_infra == dst_infra) return Unreachable{UnreachableReason::NoRoute};
        if (dst_infra) return uplink_chain(topo, links, flow.src, true);
        return reverse_path(uplink_chain(topo, links, flow.dst, false));
    }

    if (src_infra || dst_infra) return Unreachable{UnreachableReason::NoRoute};

    // A granted directive pair carries the flow alone.
    if (auto direct = links.p2p_links.find(pair_key(flow.src, flow.dst));
        direct != links.p2p_links.end()) {
        const auto& link = direct->second;
        return finish_path({{flow.src, flow.dst, link.rat,
                             p2p_key(flow.src, flow.dst, link.rat), link.quality}});
    }

    auto ssrc = serving_node(topo, flow.src);
    if (!ssrc) return Unreachable{UnreachableReason::SrcUnattached};
    auto sdst = serving_node(topo, flow.dst);
    if (!sdst) return Unreachable{UnreachableReason::DstUnattached};

    std::vector<Hop> hops;
    if (flow.src != *ssrc) hops.push_back(attachment_hop(topo, links, flow.src, *ssrc, true));
    if (*ssrc != *sdst) {
        auto relay = links.relay_links.find(pair_key(*ssrc, *sdst));
        if (relay == links.relay_links.end()) return Unreachable{UnreachableReason::NoRoute};
        hops.push_back({*ssrc, *sdst, relay->second.rat,
                        cell_key(pair_key(*ssrc, *sdst).first, relay->second.rat),
                        relay->second.quality});
    }
    if (*sdst != flow.dst) hops.push_back(attachment_hop(topo, links, flow.dst, *sdst, false));
    return finish_path(std::move(hops));
}

std::map<std::string, double> allocate_capacity(const std::map<std::string, double>& link_capacity,
                                                const std::vector<FlowDemand>& flows) {
    constexpr double kEps = 1e-9;

    struct Item {
        const FlowDemand* flow;
        double share = 0.0;
        bool active = true;
    };
    std::vector<Item> items;
    items.reserve(flows.size());
    std::map<std::string, double> residual = link_capacity;
    for (const auto& f : flows) {
        items.push_back({&f});
        if (f.demand_mbps <= 0.0 || f.links.empty()) items.back().active = false;
    }

    // Progressive filling: raise every unfrozen flow at the same rate, freeze
    // flows when their demand is met or one of their links saturates.
    while (true) {
        for (auto& it : items) {
            if (!it.active) continue;
            for (const auto& l : it.flow->links) {
                auto r = residual.find(l);
                if (r == residual.end() || r->second <= kEps) {
                    it.active = false;
                    break;
                }
            }
        }
        std::vector<Item*> active;
        for (auto& it : items) {
            if (it.active) active.push_back(&it);
        }
        if (active.empty()) break;

        std::map<std::string, int> load;
        for (const auto* it : active) {
            for (const auto& l : it->flow->links) ++load[l];
        }
        double delta = std::numeric_limits<double>::infinity();
        for (const auto* it : active) {
            delta = std::min(delta, it->flow->demand_mbps - it->share);
        }
        for (const auto& [l, n] : load) {
            delta = std::min(delta, residual.at(l) / n);
        }
        if (delta <= 0.0) break;

        for (auto* it : active) {
            it->share += delta;
            for (const auto& l : it->flow->links) residual.at(l) -= delta;
            if (it->share >= it->flow->demand_mbps - kEps) {
                it->share = it->flow->demand_mbps;
                it->active = false;
            }
        }
    }

    std::map<std::string, double> out;
    for (const auto& it : items) out[it.flow->flow_id] = it.share;
    return out;
}

}  // namespace nomadsim
