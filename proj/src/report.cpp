#include "nomadsim/report.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>

#include "nomadsim/util.hpp"

namespace nomadsim {

using nlohmann::json;

namespace {

struct LevelPoint {
    double t_s = 0.0;
    double bandwidth_mbps = 0.0;
    double delay_ms = 0.0;
    bool reachable = false;
};

struct FlowTimeline {
    std::string use_case;
    double start_s = 0.0;
    std::optional<double> stop_s;
    std::vector<LevelPoint> points;
};

double num_or(const json& obj, const char* key, double fallback) {
    auto it = obj.find(key);
    return it != obj.end() && it->is_number() ? it->get<double>() : fallback;
}

std::string str_or(const json& obj, const char* key) {
    auto it = obj.find(key);
    return it != obj.end() && it->is_string() ? it->get<std::string>() : std::string();
}

}  // namespace

SimReport evaluate_qos(const EventTrace& trace, const std::vector<UseCaseRequirement>& catalog) {
    SimReport rep;
    rep.scenario_hash = trace.header.scenario_hash;
    rep.seed = trace.header.seed;
    rep.strategy = trace.header.strategy;
    rep.duration_s = trace.header.duration_s;

    std::map<std::string, FlowTimeline> flows;
    std::vector<std::string> flow_order;

    for (const auto& rec : trace.records) {
        if (rec.kind == "flow_start") {
            const std::string id = str_or(rec.data, "flow");
            if (id.empty() || flows.count(id)) continue;
            FlowTimeline tl;
            tl.use_case = str_or(rec.data, "use_case");
            tl.start_s = rec.t_s;
            flows.emplace(id, std::move(tl));
            flow_order.push_back(id);
        } else if (rec.kind == "flow_stop") {
            auto it = flows.find(str_or(rec.data, "flow"));
            if (it != flows.end() && !it->second.stop_s) it->second.stop_s = rec.t_s;
        } else if (rec.kind == "alloc_change") {
            auto it = flows.find(str_or(rec.data, "flow"));
            if (it == flows.end()) continue;
            LevelPoint pt;
            pt.t_s = rec.t_s;
            pt.bandwidth_mbps = num_or(rec.data, "bandwidth_mbps", 0.0);
            pt.delay_ms = num_or(rec.data, "delay_ms", 0.0);
            auto r = rec.data.find("reachable");
            pt.reachable = r != rec.data.end() && r->is_boolean() && r->get<bool>();
            it->second.points.push_back(pt);
        } else if (rec.kind == "migration_complete") {
            HandoverRecord h;
            h.t_s = rec.t_s;
            h.from = str_or(rec.data, "old_nm");
            h.to = str_or(rec.data, "new_nm");
            h.ue_switches = static_cast<int>(num_or(rec.data, "ue_switches", 0.0));
            h.max_gap_ms = num_or(rec.data, "max_gap_ms", 0.0);
            auto b = rec.data.find("latency_budget_ms");
            if (b != rec.data.end() && b->is_number()) h.latency_budget_ms = b->get<double>();
            auto s = rec.data.find("smooth");
            h.smooth = s == rec.data.end() || !s->is_boolean() || s->get<bool>();
            rep.handovers.push_back(h);
        } else if (rec.kind == "placement_epoch") {
            PlacementEpochRecord p;
            p.t_s = rec.t_s;
            p.strategy = str_or(rec.data, "strategy");
            p.p_hat = num_or(rec.data, "p_hat", 0.0);
            p.total_cost = num_or(rec.data, "total_cost", 0.0);
            for (const char* key : {"local", "remote"}) {
                auto it = rec.data.find(key);
                if (it == rec.data.end() || !it->is_array()) continue;
                auto& dst = std::string(key) == "local" ? p.local : p.remote;
                for (const auto& v : *it) {
                    if (v.is_string()) dst.push_back(v.get<std::string>());
                }
            }
            rep.placement.push_back(std::move(p));
        } else if (rec.kind == "notification") {
            ++rep.notification_count;
        }
    }

    std::map<std::string, UseCaseStats> by_uc;
    int passed = 0;
    int scored = 0;

    for (const auto& id : flow_order) {
        const FlowTimeline& tl = flows.at(id);
        const double end_s = tl.stop_s.value_or(trace.header.duration_s);
        if (!(end_s > tl.start_s)) continue;  // zero-length windows carry no traffic

        QosRecord q;
        q.flow_id = id;
        q.use_case = tl.use_case;
        q.start_s = tl.start_s;
        q.end_s = end_s;
        q.required_latency_ms = std::numeric_limits<double>::infinity();
        if (const UseCaseRequirement* req = find_requirement(tl.use_case, catalog)) {
            q.required_throughput_mbps = req->throughput_mbps;
            q.required_latency_ms = req->latency_ms;
        }

        bool unreachable = tl.points.empty();
        double thr = std::numeric_limits<double>::infinity();
        double lat = 0.0;
        bool measured = false;
        for (std::size_t i = 0; i < tl.points.size(); ++i) {
            const LevelPoint& pt = tl.points[i];
            const double seg_end = i + 1 < tl.points.size() ? tl.points[i + 1].t_s : end_s;
            if (!(seg_end > pt.t_s)) continue;
            if (!pt.reachable) {
                unreachable = true;
                continue;
            }
            measured = true;
            thr = std::min(thr, pt.bandwidth_mbps);
            lat = std::max(lat, pt.delay_ms);
        }
        if (!measured) thr = 0.0;

        q.throughput_mbps = thr;
        q.latency_ms = lat;
        if (unreachable) {
            q.fail_reason = "unreachable";
        } else if (thr < q.required_throughput_mbps) {
            q.fail_reason = "throughput";
        } else if (lat > q.required_latency_ms) {
            q.fail_reason = "latency";
        } else {
            q.pass = true;
        }

        auto& uc = by_uc[q.use_case];
        uc.use_case = q.use_case;
        ++uc.flows;
        if (q.pass) {
            ++uc.passed;
            ++passed;
        }
        ++scored;
        rep.flows.push_back(std::move(q));
    }

    for (auto& [name, uc] : by_uc) {
        uc.pass_ratio = uc.flows > 0 ? static_cast<double>(uc.passed) / uc.flows : 1.0;
        rep.use_cases.push_back(uc);
    }
    rep.pass_ratio = scored > 0 ? static_cast<double>(passed) / scored : 1.0;
    return rep;
}

json report_to_json(const SimReport& rep) {
    json flows = json::array();
    for (const auto& q : rep.flows) {
        json f{{"flow", q.flow_id},
               {"use_case", q.use_case},
               {"start_s", q.start_s},
               {"end_s", q.end_s},
               {"throughput_mbps", q.throughput_mbps},
               {"latency_ms", q.latency_ms},
               {"required_throughput_mbps", q.required_throughput_mbps},
               {"required_latency_ms",
                std::isfinite(q.required_latency_ms) ? json(q.required_latency_ms) : json()},
               {"pass", q.pass},
               {"reason", q.fail_reason}};
        flows.push_back(std::move(f));
    }
    json use_cases = json::array();
    for (const auto& uc : rep.use_cases) {
        use_cases.push_back({{"use_case", uc.use_case},
                             {"flows", uc.flows},
                             {"passed", uc.passed},
                             {"pass_ratio", uc.pass_ratio}});
    }
    json handovers = json::array();
    for (const auto& h : rep.handovers) {
        handovers.push_back(
            {{"t", h.t_s},
             {"from", h.from},
             {"to", h.to},
             {"ue_switches", h.ue_switches},
             {"max_gap_ms", h.max_gap_ms},
             {"latency_budget_ms", h.latency_budget_ms ? json(*h.latency_budget_ms) : json()},
             {"smooth", h.smooth}});
    }
    json placement = json::array();
    for (const auto& p : rep.placement) {
        placement.push_back({{"t", p.t_s},
                             {"strategy", p.strategy},
                             {"p_hat", p.p_hat},
                             {"total_cost", p.total_cost},
                             {"local", p.local},
                             {"remote", p.remote}});
    }
    return json{{"schema", "nomadsim-report/1"},
                {"scenario_hash", rep.scenario_hash},
                {"seed", rep.seed},
                {"strategy", rep.strategy},
                {"duration_s", rep.duration_s},
                {"qos", {{"pass_ratio", rep.pass_ratio}, {"flows", flows}, {"use_cases", use_cases}}},
                {"handover", {{"migrations", rep.handovers.size()}, {"events", handovers}}},
                {"placement", {{"epochs", placement}}},
                {"notifications", rep.notification_count}};
}

namespace {

std::string csv_field(const std::string& raw) {
    if (raw.find_first_of(",\"\n") == std::string::npos) return raw;
    std::string quoted = "\"";
    for (char c : raw) {
        if (c == '"') quoted += '"';
        quoted += c;
    }
    quoted += '"';
    return quoted;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path.string());
    out << content;
    if (!out) throw IoError("short write on " + path.string());
}

}  // namespace

void write_outputs(const SimReport& report, const EventTrace& trace, const std::string& out_dir,
                   const OutputFormats& formats) {
    std::filesystem::path dir(out_dir);
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw IoError("cannot create output directory " + dir.string() + ": " + ec.message());

    if (formats.report_json) {
        write_file(dir / "report.json", report_to_json(report).dump(2) + "\n");
    }
    if (formats.qos_csv) {
        std::string csv = "# nomadsim-qos/1\n";
        csv += "flow,use_case,start,end,thr_mbps,lat_ms,req_thr,req_lat,pass,reason\n";
        for (const auto& q : report.flows) {
            csv += csv_field(q.flow_id) + "," + csv_field(q.use_case) + "," +
                   format_number(q.start_s) + "," + format_number(q.end_s) + "," +
                   format_number(q.throughput_mbps) + "," + format_number(q.latency_ms) + "," +
                   format_number(q.required_throughput_mbps) + "," +
                   (std::isfinite(q.required_latency_ms) ? format_number(q.required_latency_ms)
                                                         : std::string()) +
                   "," + (q.pass ? "true" : "false") + "," + csv_field(q.fail_reason) + "\n";
        }
        write_file(dir / "qos.csv", csv);
    }
    if (formats.placement_csv) {
        std::string csv = "# nomadsim-placement/1\n";
        csv += "t_s,strategy,p_hat,total_cost,local,remote\n";
        for (const auto& p : report.placement) {
            std::string local;
            for (const auto& v : p.local) local += (local.empty() ? "" : ";") + v;
            std::string remote;
            for (const auto& v : p.remote) remote += (remote.empty() ? "" : ";") + v;
            csv += format_number(p.t_s) + "," + csv_field(p.strategy) + "," +
                   format_number(p.p_hat) + "," + format_number(p.total_cost) + "," +
                   csv_field(local) + "," + csv_field(remote) + "\n";
        }
        write_file(dir / "placement.csv", csv);
    }
    if (formats.trace_jsonl) {
        write_file(dir / "trace.jsonl", trace_to_jsonl(trace));
    }
}

}  // namespace nomadsim
