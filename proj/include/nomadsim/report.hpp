#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "nomadsim/core.hpp"
#include "nomadsim/trace.hpp"

#include <json.hpp>

namespace nomadsim {

class IoError : public std::runtime_error {
  public:
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

// Verdict for one flow over its whole active window. Throughput is the worst
// allocation the flow saw, latency the worst path delay; requirement
// boundaries count as met.
struct QosRecord {
    std::string flow_id;
    std::string use_case;
    double start_s = 0.0;
    double end_s = 0.0;
    double throughput_mbps = 0.0;
    double latency_ms = 0.0;
    double required_throughput_mbps = 0.0;
    double required_latency_ms = 0.0;
    bool pass = false;
    std::string fail_reason;  // "unreachable", "throughput" or "latency"; empty on pass
};

struct UseCaseStats {
    std::string use_case;
    int flows = 0;
    int passed = 0;
    double pass_ratio = 1.0;
};

struct HandoverRecord {
    double t_s = 0.0;
    std::string from;
    std::string to;
    int ue_switches = 0;
    double max_gap_ms = 0.0;
    std::optional<double> latency_budget_ms;
    bool smooth = true;  // gap stayed within the strictest active latency budget
};

struct PlacementEpochRecord {
    double t_s = 0.0;
    std::string strategy;
    double p_hat = 0.0;
    double total_cost = 0.0;
    std::vector<std::string> local;
    std::vector<std::string> remote;
};

struct SimReport {
    std::string scenario_hash;
    std::uint64_t seed = 0;
    std::string strategy;
    double duration_s = 0.0;
    std::vector<QosRecord> flows;       // in order of first appearance
    std::vector<UseCaseStats> use_cases;
    double pass_ratio = 1.0;
    std::vector<HandoverRecord> handovers;
    std::vector<PlacementEpochRecord> placement;
    int notification_count = 0;
};

// Scores a trace against the requirement catalog. Each flow yields one
// record; a flow with any positive-length unreachable stretch fails as
// unreachable, one that was never measured inside a positive window too.
// Zero-length windows are skipped.
SimReport evaluate_qos(const EventTrace& trace,
                       const std::vector<UseCaseRequirement>& catalog = requirement_catalog());

nlohmann::json report_to_json(const SimReport& report);

struct OutputFormats {
    bool report_json = true;
    bool qos_csv = true;
    bool placement_csv = true;
    bool trace_jsonl = true;
};

// Writes report.json, qos.csv, placement.csv and trace.jsonl into out_dir,
// creating it if needed.
void write_outputs(const SimReport& report, const EventTrace& trace, const std::string& out_dir,
                   const OutputFormats& formats = {});

}  // namespace nomadsim
