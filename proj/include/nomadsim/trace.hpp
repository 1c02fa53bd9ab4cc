#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace nomadsim {

class MalformedTrace : public std::runtime_error {
  public:
    explicit MalformedTrace(const std::string& what) : std::runtime_error(what) {}
};

struct TraceRecord {
    double t_s = 0.0;
    std::string kind;
    nlohmann::json data;  // extra fields, flattened next to t and kind on output
};

struct TraceHeader {
    std::string scenario_hash;
    std::uint64_t seed = 0;
    double tick_ms = 100.0;
    double duration_s = 0.0;
    std::string strategy;
};

struct EventTrace {
    TraceHeader header;
    std::vector<TraceRecord> records;

    void append(double t_s, std::string kind, nlohmann::json data = nlohmann::json::object());
};

std::string trace_to_jsonl(const EventTrace& trace);
EventTrace trace_from_jsonl(const std::string& text);

void save_trace(const EventTrace& trace, const std::string& path);
EventTrace load_trace(const std::string& path);

}  // namespace nomadsim
