#include "nomadsim/engine.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <queue>
#include <set>

#include "nomadsim/context.hpp"
#include "nomadsim/scenario_json.hpp"
#include "nomadsim/util.hpp"

namespace nomadsim {

using nlohmann::json;

namespace {

enum Rank {
    kRankEnvChange = 0,
    kRankFlowStart = 1,
    kRankTick = 2,
    kRankPlacement = 3,
    kRankElection = 4,
    kRankHandover = 5,
    kRankFlowStop = 6,
    kRankNotification = 7,
};

struct Ev {
    std::int64_t t_ms = 0;
    int rank = 0;
    std::uint64_t seq = 0;
    std::function<void()> fn;
};

struct EvAfter {
    bool operator()(const Ev& a, const Ev& b) const {
        return std::tie(a.t_ms, a.rank, a.seq) > std::tie(b.t_ms, b.rank, b.seq);
    }
};

std::int64_t to_ms(double t_s) {
    return static_cast<std::int64_t>(std::llround(t_s * 1000.0));
}

}  // namespace

struct Simulation::Impl {
    ScenarioConfig cfg;
    std::int64_t duration_ms = 0;
    std::int64_t tick_ms = 100;

    std::vector<std::string> member_list;  // sorted vehicle ids
    std::set<std::string> members;
    std::map<std::string, const VehicleSpec*> spec;
    std::map<std::string, std::set<std::string>> vrats;
    std::map<std::string, MobilityTrace> mob;
    std::map<std::string, UseCaseRequirement> reqs;
    EnvironmentState env;  // scripted plus seeded random blockages

    std::int64_t now_ms = 0;
    std::uint64_t seq = 0;
    std::priority_queue<Ev, std::vector<Ev>, EvAfter> queue;
    EventTrace tr;

    std::string nm;
    std::string cv;
    std::optional<std::string> gateway;
    HandoverState ho = Stable{};
    std::map<std::string, std::string> serving_override;
    std::map<std::string, std::int64_t> gap_until_ms;
    std::map<std::string, double> last_uplinks;

    std::set<std::string> started;
    std::map<std::string, std::string> route_sig;
    std::map<std::string, FlowServiceLevel> cur_level;
    std::map<std::string, std::string> cur_reason;
    std::map<std::string, FlowServiceLevel> last_sent;
    // (attached, serving, rat) per member, for change records.
    std::map<std::string, std::tuple<bool, std::string, std::string>> last_att;

    double p_hat = 0.0;
    std::map<std::string, LinkEstimate> link_est;

    std::string mig_from;
    std::string mig_to;
    int mig_switches = 0;
    double mig_max_gap_ms = 0.0;
    std::optional<double> mig_budget_ms;

    explicit Impl(const Scenario& scenario);

    void schedule(std::int64_t t_ms, int rank, std::function<void()> fn) {
        queue.push({t_ms, rank, seq++, std::move(fn)});
    }

    void record(double t_s, const char* kind, json data = json::object()) {
        tr.append(t_s, kind, std::move(data));
    }

    double now_s() const { return static_cast<double>(now_ms) / 1000.0; }

    bool flow_active(const FlowSpec& f) const {
        const std::int64_t s = to_ms(f.active.start_s);
        const std::int64_t e = to_ms(f.active.end_s);
        return s <= now_ms && now_ms < e;
    }

    std::optional<double> strictest_latency_budget() const {
        std::optional<double> budget;
        for (const auto& f : cfg.flows) {
            if (!flow_active(f)) continue;
            const auto it = reqs.find(f.use_case);
            if (it == reqs.end()) continue;
            if (!budget || it->second.latency_ms < *budget) budget = it->second.latency_ms;
        }
        return budget;
    }

    void seed_random_blockages();
    void schedule_env_records();
    void tick();
    void placement_epoch();
    void election_check();
    void prepare_done();
    void switch_ue(const std::string& ue);
    void complete_migration();
};

Simulation::Impl::Impl(const Scenario& scenario)
    : cfg(scenario.config), nm(scenario.initial_nm), cv(scenario.initial_cv) {
    duration_ms = to_ms(cfg.duration_s);
    tick_ms = std::max<std::int64_t>(1, to_ms(cfg.sim.tick_s));

    for (const auto& v : cfg.vehicles) {
        member_list.push_back(v.id);
        spec[v.id] = &v;
        vrats[v.id] = std::set<std::string>(v.rats.begin(), v.rats.end());
    }
    std::sort(member_list.begin(), member_list.end());
    members = std::set<std::string>(member_list.begin(), member_list.end());
    for (const auto& t : cfg.traces) mob[t.vehicle] = t;
    for (const auto& r : requirement_catalog()) reqs[r.id] = r;

    env = cfg.environment;
    seed_random_blockages();

    tr.header = {scenario_hash(cfg), cfg.seed, static_cast<double>(tick_ms), cfg.duration_s,
                 strategy_name(cfg.strategy)};

    if (!member_list.empty()) {
        record(0.0, "group_init",
               {{"nm", nm}, {"cv", cv}, {"gateway", nullptr}, {"members", member_list}});
    }
    if (duration_ms <= 0) return;

    schedule(0, kRankTick, [this] { tick(); });
    schedule(0, kRankPlacement, [this] { placement_epoch(); });
    const std::int64_t check_ms = to_ms(cfg.sim.election_check_s);
    if (check_ms > 0 && check_ms <= duration_ms) {
        schedule(check_ms, kRankElection, [this] { election_check(); });
    }

    for (std::size_t i = 0; i < cfg.flows.size(); ++i) {
        const FlowSpec& f = cfg.flows[i];
        const std::int64_t s = to_ms(f.active.start_s);
        const std::int64_t e = to_ms(f.active.end_s);
        if (s > duration_ms) continue;
        schedule(s, kRankFlowStart, [this, i] {
            const FlowSpec& flow = cfg.flows[i];
            started.insert(flow.id);
            const auto it = reqs.find(flow.use_case);
            record(now_s(), "flow_start",
                   {{"flow", flow.id},
                    {"use_case", flow.use_case},
                    {"scope", it != reqs.end() ? scope_name(it->second.scope) : "local"},
                    {"src", flow.src},
                    {"dst", flow.dst},
                    {"demand_mbps", flow.demand_mbps}});
        });
        if (e <= duration_ms) {
            schedule(e, kRankFlowStop, [this, i] {
                const FlowSpec& flow = cfg.flows[i];
                started.erase(flow.id);
                route_sig.erase(flow.id);
                cur_level.erase(flow.id);
                cur_reason.erase(flow.id);
                last_sent.erase(flow.id);
                record(now_s(), "flow_stop", {{"flow", flow.id}});
            });
        }
    }

    schedule_env_records();
}

void Simulation::Impl::seed_random_blockages() {
    if (cfg.sim.random_blockage_count <= 0 || member_list.size() < 2 || duration_ms <= 0) return;
    SplitMix64 rng(cfg.seed);
    const std::size_t n = member_list.size();
    for (int k = 0; k < cfg.sim.random_blockage_count; ++k) {
        const std::size_t ai = static_cast<std::size_t>(rng.next_below(n));
        std::size_t bi = static_cast<std::size_t>(rng.next_below(n - 1));
        if (bi >= ai) ++bi;
        const double start = rng.next_unit() * cfg.duration_s;
        const double len = rng.next_unit() * cfg.sim.random_blockage_max_s;
        const double s = static_cast<double>(to_ms(start)) / 1000.0;
        const double e = std::min(cfg.duration_s, static_cast<double>(to_ms(start + len)) / 1000.0);
        if (e > s) env.blockages.push_back({member_list[ai], member_list[bi], {s, e}});
    }
}

void Simulation::Impl::schedule_env_records() {
    auto mark = [this](double t_s, json data) {
        const std::int64_t t = to_ms(t_s);
        if (t < 0 || t > duration_ms) return;
        schedule(t, kRankEnvChange,
                 [this, data = std::move(data)] { record(now_s(), "env_change", data); });
    };
    for (const auto& b : env.blockages) {
        if (!(b.when.end_s > b.when.start_s)) continue;
        mark(b.when.start_s, {{"change", "blockage_start"}, {"a", b.a}, {"b", b.b}});
        mark(b.when.end_s, {{"change", "blockage_end"}, {"a", b.a}, {"b", b.b}});
    }
    for (const auto& iv : env.heavy_rain) {
        if (!(iv.end_s > iv.start_s)) continue;
        mark(iv.start_s, {{"change", "rain_start"}});
        mark(iv.end_s, {{"change", "rain_end"}});
    }
    for (const auto& iv : env.backhaul_outages) {
        if (!(iv.end_s > iv.start_s)) continue;
        mark(iv.start_s, {{"change", "backhaul_down"}});
        mark(iv.end_s, {{"change", "backhaul_up"}});
    }
}

void Simulation::Impl::tick() {
    const double now = now_s();

    std::map<std::string, Position> pos;
    for (const auto& [id, trace] : mob) pos[id] = position_at(trace, now);
    const RainIntensity rain = rain_at(env, now);
    const bool bh_env = backhaul_up(env, now);

    LinkSnapshot links;
    links.backhaul_up = bh_env && cfg.infrastructure.has_value();
    links.backhaul_latency_ms = cfg.infrastructure ? cfg.infrastructure->latency_ms : 0.0;
    if (cfg.infrastructure && bh_env) {
        const InfrastructureSpec& inf = *cfg.infrastructure;
        for (const auto& [id, sp] : spec) {
            if (!sp->has_backhaul_radio) continue;
            if (distance_m(pos[id], inf.base_station) > inf.coverage_radius_m) continue;
            links.uplink_mbps[id] = sp->backhaul_capacity_mbps.value_or(inf.capacity_mbps);
        }
    }
    last_uplinks = links.uplink_mbps;

    std::optional<std::string> gw;
    if (!nm.empty() && links.uplink_mbps.count(nm)) gw = nm;
    if (gw != gateway) {
        gateway = gw;
        record(now, "gateway_change", {{"gateway", gw ? json(*gw) : json()}});
    }

    for (const auto& [v, until] : gap_until_ms) {
        if (now_ms < until) links.gap_blocked.insert(v);
    }

    std::vector<const FlowSpec*> flows_now;
    for (const auto& f : cfg.flows) {
        if (started.count(f.id) && flow_active(f)) flows_now.push_back(&f);
    }

    // Directive antenna pairing: pair demand pulls the vehicles' antennas
    // toward each other; a point-to-point link needs a slot on both ends.
    std::map<std::pair<std::string, std::string>, double> pair_demand;
    for (const FlowSpec* f : flows_now) {
        if (f->src == kInfrastructureId || f->dst == kInfrastructureId) continue;
        pair_demand[pair_key(f->src, f->dst)] += f->demand_mbps;
    }
    std::map<std::pair<std::string, std::string>, DirectLink> pair_link;
    for (const auto& [pk, demand] : pair_demand) {
        const auto& [a, b] = pk;
        const double d = distance_m(pos[a], pos[b]);
        const bool los = los_between(env, a, b, now);
        const RatSpec* best = nullptr;
        LinkQuality best_q;
        for (const auto& rat : cfg.rats) {
            if (!rat.point_to_point || !vrats[a].count(rat.name) || !vrats[b].count(rat.name)) {
                continue;
            }
            const LinkQuality q = link_quality(rat, d, los, rain);
            if (!q.available) continue;
            if (!best || q.capacity_mbps > best_q.capacity_mbps ||
                (q.capacity_mbps == best_q.capacity_mbps &&
                 (q.latency_ms < best_q.latency_ms ||
                  (q.latency_ms == best_q.latency_ms && rat.name < best->name)))) {
                best = &rat;
                best_q = q;
            }
        }
        if (best) pair_link[pk] = {best->name, best_q};
    }
    std::map<std::string, std::vector<std::pair<double, std::string>>> peer_wish;
    for (const auto& [pk, link] : pair_link) {
        const double demand = pair_demand.at(pk);
        peer_wish[pk.first].push_back({demand, pk.second});
        peer_wish[pk.second].push_back({demand, pk.first});
    }
    std::map<std::string, AntennaAssignment> antenna;
    for (auto& [v, wishes] : peer_wish) {
        std::sort(wishes.begin(), wishes.end(), [](const auto& x, const auto& y) {
            if (x.first != y.first) return x.first > y.first;
            return x.second < y.second;
        });
        std::vector<std::string> ordered;
        ordered.reserve(wishes.size());
        for (const auto& w : wishes) ordered.push_back(w.second);
        antenna[v] = assign_antennas(v, ordered, spec[v]->mmw_antennas);
    }
    for (const auto& [pk, link] : pair_link) {
        if (antenna[pk.first].serves(pk.second) && antenna[pk.second].serves(pk.first)) {
            links.p2p_links[pk] = link;
        }
    }

    GroupTopology topo;
    topo.members = members;
    topo.nm = nm;
    topo.cv = cv;
    topo.gateway = gateway;
    for (const auto& v : member_list) {
        if (v == nm) continue;
        const std::string serving =
            serving_override.count(v) ? serving_override.at(v) : nm;
        std::optional<Attachment> att;
        if (!serving.empty() && serving != v) {
            std::vector<RatSpec> common;
            for (const auto& rat : cfg.rats) {
                if (vrats[v].count(rat.name) && vrats[serving].count(rat.name)) {
                    common.push_back(rat);
                }
            }
            const double d = distance_m(pos[v], pos[serving]);
            const bool los = los_between(env, v, serving, now);
            const bool has_pair = links.p2p_links.count(pair_key(v, serving)) > 0;
            const auto names = select_rat(common, d, los, rain, has_pair);
            if (!names.empty()) {
                const auto rat_it = std::find_if(common.begin(), common.end(),
                                                 [&](const RatSpec& r) { return r.name == names.front(); });
                att = Attachment{serving, names.front(), link_quality(*rat_it, d, los, rain)};
            }
        }
        topo.attachments[v] = att;

        const std::tuple<bool, std::string, std::string> snapshot_att =
            att ? std::make_tuple(true, att->serving, att->rat)
                : std::make_tuple(false, std::string(), std::string());
        auto it = last_att.find(v);
        if (it == last_att.end() || it->second != snapshot_att) {
            last_att[v] = snapshot_att;
            record(now, "attach_change",
                   {{"vehicle", v},
                    {"serving", att ? json(att->serving) : json()},
                    {"rat", att ? json(att->rat) : json()}});
        }
    }

    // Relay cells between nodes that serve someone (plus the gateway).
    std::set<std::string> relay_nodes;
    if (!nm.empty()) relay_nodes.insert(nm);
    for (const auto& [ue, target] : serving_override) relay_nodes.insert(target);
    if (gateway) relay_nodes.insert(*gateway);
    for (auto a = relay_nodes.begin(); a != relay_nodes.end(); ++a) {
        for (auto b = std::next(a); b != relay_nodes.end(); ++b) {
            const double d = distance_m(pos[*a], pos[*b]);
            const bool los = los_between(env, *a, *b, now);
            const RatSpec* best = nullptr;
            LinkQuality best_q;
            for (const auto& rat : cfg.rats) {
                if (rat.point_to_point || !vrats[*a].count(rat.name) ||
                    !vrats[*b].count(rat.name)) {
                    continue;
                }
                const LinkQuality q = link_quality(rat, d, los, rain);
                if (!q.available) continue;
                if (!best || q.capacity_mbps > best_q.capacity_mbps ||
                    (q.capacity_mbps == best_q.capacity_mbps &&
                     (q.latency_ms < best_q.latency_ms ||
                      (q.latency_ms == best_q.latency_ms && rat.name < best->name)))) {
                    best = &rat;
                    best_q = q;
                }
            }
            if (best) links.relay_links[pair_key(*a, *b)] = {best->name, best_q};
        }
    }

    std::map<std::string, RouteResult> routes;
    std::map<std::string, double> link_capacity;
    std::vector<FlowDemand> demands;
    for (const FlowSpec* f : flows_now) {
        const auto rq = reqs.find(f->use_case);
        const Scope scope = rq != reqs.end() ? rq->second.scope : Scope::Local;
        RouteResult r = route_flow(*f, scope, topo, links);

        std::string sig;
        json route_data{{"flow", f->id}};
        if (const Path* path = std::get_if<Path>(&r)) {
            json hops = json::array();
            for (const Hop& hop : path->hops) {
                sig += hop.from + ">" + hop.to + ":" + hop.rat + "|";
                hops.push_back({{"from", hop.from},
                                {"to", hop.to},
                                {"rat", hop.rat},
                                {"link", hop.link_key}});
            }
            route_data["status"] = "ok";
            route_data["hops"] = std::move(hops);
            route_data["latency_ms"] = path->latency_ms;
        } else {
            const auto& u = std::get<Unreachable>(r);
            sig = std::string("unreachable:") + unreachable_reason_name(u.reason);
            route_data["status"] = "unreachable";
            route_data["reason"] = unreachable_reason_name(u.reason);
        }
        auto sit = route_sig.find(f->id);
        if (sit == route_sig.end() || sit->second != sig) {
            route_sig[f->id] = sig;
            record(now, "route_change", route_data);
        }

        if (const Path* path = std::get_if<Path>(&r)) {
            FlowDemand fd{f->id, f->demand_mbps, {}};
            for (const Hop& hop : path->hops) {
                link_capacity[hop.link_key] = hop.quality.capacity_mbps;
                fd.links.push_back(hop.link_key);
            }
            demands.push_back(std::move(fd));
        }
        routes.emplace(f->id, std::move(r));
    }

    const auto shares = allocate_capacity(link_capacity, demands);

    std::map<std::string, FlowServiceLevel> current;
    for (const FlowSpec* f : flows_now) {
        FlowServiceLevel level;
        std::string reason;
        const RouteResult& r = routes.at(f->id);
        if (const Path* path = std::get_if<Path>(&r)) {
            const auto s = shares.find(f->id);
            level = {s != shares.end() ? s->second : 0.0, path->latency_ms, true};
        } else {
            reason = unreachable_reason_name(std::get<Unreachable>(r).reason);
        }
        current[f->id] = level;

        auto lit = cur_level.find(f->id);
        const bool changed = lit == cur_level.end() ||
                             lit->second.bandwidth_mbps != level.bandwidth_mbps ||
                             lit->second.delay_ms != level.delay_ms ||
                             lit->second.reachable != level.reachable ||
                             cur_reason[f->id] != reason;
        if (changed) {
            cur_level[f->id] = level;
            cur_reason[f->id] = reason;
            json data{{"flow", f->id},
                      {"bandwidth_mbps", level.bandwidth_mbps},
                      {"delay_ms", level.delay_ms},
                      {"reachable", level.reachable}};
            if (!reason.empty()) data["reason"] = reason;
            record(now, "alloc_change", data);
        }
    }

    p_hat = ewma_step(p_hat, gateway ? 0.0 : 1.0, cfg.sim.ewma_alpha);
    for (const auto& [key, cap] : link_capacity) {
        auto it = link_est.find(key);
        if (it == link_est.end()) {
            link_est[key] = {cap, 0.0};
        } else {
            it->second.capacity_mbps = ewma_step(it->second.capacity_mbps, cap, cfg.sim.ewma_alpha);
        }
    }

    const auto notes = emit_notifications(now, current, last_sent, cfg.sim.notify_epsilon);
    for (const auto& n : notes) {
        schedule(now_ms, kRankNotification, [this, n] {
            record(now_s(), "notification",
                   {{"flow", n.flow_id},
                    {"bandwidth_mbps", n.level.bandwidth_mbps},
                    {"delay_ms", n.level.delay_ms},
                    {"reachable", n.level.reachable}});
        });
    }

    if (now_ms + tick_ms <= duration_ms) {
        schedule(now_ms + tick_ms, kRankTick, [this] { tick(); });
    }
}

void Simulation::Impl::placement_epoch() {
    const PlacementPlan plan = plan_for(cfg.strategy, cfg.vnfs, OutageProbability(p_hat));
    record(now_s(), "placement_epoch",
           {{"strategy", strategy_name(cfg.strategy)},
            {"p_hat", p_hat},
            {"local", plan.local},
            {"remote", plan.remote},
            {"total_cost", plan.total_cost}});
    const bool backhaul_live = gateway.has_value();
    for (const auto& vnf : cfg.vnfs) {
        record(now_s(), "vnf_availability",
               {{"vnf", vnf.id}, {"available", service_available(plan, vnf.id, backhaul_live)}});
    }

    const std::int64_t epoch_ms = to_ms(cfg.sim.placement_epoch_s);
    if (epoch_ms > 0 && now_ms + epoch_ms <= duration_ms) {
        schedule(now_ms + epoch_ms, kRankPlacement, [this] { placement_epoch(); });
    }
}

void Simulation::Impl::election_check() {
    std::map<std::string, double> meas;
    for (const auto& v : member_list) {
        const auto it = last_uplinks.find(v);
        meas[v] = it != last_uplinks.end() ? it->second : 0.0;
    }

    const HandoverState before = ho;
    const NmDecision decision = elect_nm(meas, nm, cfg.election, now_s(), ho);

    const auto* cd_before = std::get_if<CandidateDetected>(&before);
    const auto* cd_after = std::get_if<CandidateDetected>(&ho);
    if (cd_before && (!cd_after || cd_after->candidate != cd_before->candidate)) {
        record(now_s(), "candidate_withdrawn", {{"candidate", cd_before->candidate}});
    }
    if (cd_after && (!cd_before || cd_before->candidate != cd_after->candidate)) {
        record(now_s(), "candidate_detected",
               {{"candidate", cd_after->candidate},
                {"capacity_mbps", meas[cd_after->candidate]},
                {"incumbent", nm}});
    }

    if (decision.migrate) {
        const HandoverStepResult res = handover_step(ho, CandidateConfirmed{});
        ho = res.state;
        mig_from = nm;
        mig_to = decision.candidate;
        mig_switches = 0;
        mig_max_gap_ms = 0.0;
        mig_budget_ms = strictest_latency_budget();
        record(now_s(), "migration_started", {{"from", mig_from}, {"to", mig_to}});
        const std::int64_t prep_ms = to_ms(cfg.sim.prepare_s);
        schedule(now_ms + prep_ms, kRankHandover, [this] { prepare_done(); });
    }

    const std::int64_t check_ms = to_ms(cfg.sim.election_check_s);
    if (check_ms > 0 && now_ms + check_ms <= duration_ms) {
        schedule(now_ms + check_ms, kRankElection, [this] { election_check(); });
    }
}

void Simulation::Impl::prepare_done() {
    // Every member but the rising NM re-homes; the outgoing NM goes last so
    // the control plane stays up until the end.
    std::vector<std::string> ues;
    for (const auto& v : member_list) {
        if (v != mig_to && v != mig_from) ues.push_back(v);
    }
    ues.push_back(mig_from);

    const HandoverStepResult res = handover_step(ho, PrepareDone{ues});
    ho = res.state;
    const std::int64_t spacing_ms = to_ms(cfg.sim.ue_switch_spacing_s);
    std::int64_t i = 1;
    for (const auto& action : res.actions) {
        if (const auto* su = std::get_if<SwitchUe>(&action)) {
            const std::string ue = su->ue;
            schedule(now_ms + i * spacing_ms, kRankHandover, [this, ue] { switch_ue(ue); });
            ++i;
        }
    }
}

void Simulation::Impl::switch_ue(const std::string& ue) {
    serving_override[ue] = mig_to;
    gap_until_ms[ue] = now_ms + std::llround(cfg.sim.handover_gap_ms);
    ++mig_switches;
    mig_max_gap_ms = std::max(mig_max_gap_ms, cfg.sim.handover_gap_ms);
    if (const auto budget = strictest_latency_budget()) {
        if (!mig_budget_ms || *budget < *mig_budget_ms) mig_budget_ms = budget;
    }
    record(now_s(), "ue_switched",
           {{"ue", ue}, {"to", mig_to}, {"gap_ms", cfg.sim.handover_gap_ms}});

    HandoverStepResult res = handover_step(ho, UeSwitched{ue});
    ho = res.state;
    if (const auto* sw = std::get_if<Switch>(&ho); sw && sw->remaining_ues.empty()) {
        complete_migration();
    }
}

void Simulation::Impl::complete_migration() {
    const HandoverStepResult res = handover_step(ho, AllSwitched{});
    for (const auto& action : res.actions) {
        if (const auto* rr = std::get_if<RolesReassigned>(&action)) {
            const std::string old_nm = nm;
            nm = rr->new_nm;
            serving_override.clear();
            last_att.erase(nm);  // the new NM serves itself from here on
            const bool smooth = !mig_budget_ms || mig_max_gap_ms <= *mig_budget_ms;
            record(now_s(), "migration_complete",
                   {{"old_nm", old_nm},
                    {"new_nm", nm},
                    {"ue_switches", mig_switches},
                    {"max_gap_ms", mig_max_gap_ms},
                    {"latency_budget_ms", mig_budget_ms ? json(*mig_budget_ms) : json()},
                    {"smooth", smooth}});
        }
    }
    // The machine's Complete state collapses straight back to Stable: the
    // next election cycle starts from scratch under the new NM.
    ho = Stable{};
}

Simulation::Simulation(const Scenario& scenario) : impl_(std::make_unique<Impl>(scenario)) {}
Simulation::~Simulation() = default;
Simulation::Simulation(Simulation&&) noexcept = default;
Simulation& Simulation::operator=(Simulation&&) noexcept = default;

bool Simulation::step() {
    if (impl_->queue.empty()) return false;
    Ev ev = impl_->queue.top();
    impl_->queue.pop();
    impl_->now_ms = ev.t_ms;
    ev.fn();
    return true;
}

double Simulation::now_s() const {
    return impl_->now_s();
}

const EventTrace& Simulation::trace() const {
    return impl_->tr;
}

EventTrace Simulation::take_trace() {
    return std::move(impl_->tr);
}

std::pair<EventTrace, SimReport> run(const Scenario& scenario) {
    Simulation sim(scenario);
    while (sim.step()) {
    }
    EventTrace trace = sim.take_trace();
    SimReport report = evaluate_qos(trace);
    return {std::move(trace), std::move(report)};
}

}  // namespace nomadsim
