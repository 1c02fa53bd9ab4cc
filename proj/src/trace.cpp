#include "nomadsim/trace.hpp"

#include <fstream>
#include <sstream>

namespace nomadsim {

using nlohmann::json;

void EventTrace::append(double t_s, std::string kind, json data) {
    records.push_back({t_s, std::move(kind), std::move(data)});
}

std::string trace_to_jsonl(const EventTrace& trace) {
    std::ostringstream out;
    json header{{"schema", "nomadsim-trace/1"},
                {"scenario_hash", trace.header.scenario_hash},
                {"seed", trace.header.seed},
                {"prng", "splitmix64"},
                {"tick_ms", trace.header.tick_ms},
                {"duration_s", trace.header.duration_s},
                {"strategy", trace.header.strategy}};
    out << header.dump() << "\n";
    for (const auto& rec : trace.records) {
        json line = rec.data.is_object() ? rec.data : json::object();
        line["t"] = rec.t_s;
        line["kind"] = rec.kind;
        out << line.dump() << "\n";
    }
    return out.str();
}

EventTrace trace_from_jsonl(const std::string& text) {
    EventTrace trace;
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    bool have_header = false;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        json doc;
        try {
            doc = json::parse(line);
        } catch (const json::parse_error& e) {
            throw MalformedTrace("line " + std::to_string(lineno) + ": " + e.what());
        }
        if (!doc.is_object()) {
            throw MalformedTrace("line " + std::to_string(lineno) + ": expected an object");
        }
        if (!have_header) {
            if (!doc.contains("schema") || doc["schema"] != "nomadsim-trace/1") {
                throw MalformedTrace("line 1: missing or unsupported trace schema");
            }
            TraceHeader h;
            if (doc.contains("scenario_hash") && doc["scenario_hash"].is_string()) {
                h.scenario_hash = doc["scenario_hash"].get<std::string>();
            }
            if (doc.contains("seed") && doc["seed"].is_number_unsigned()) {
                h.seed = doc["seed"].get<std::uint64_t>();
            }
            if (doc.contains("tick_ms") && doc["tick_ms"].is_number()) {
                h.tick_ms = doc["tick_ms"].get<double>();
            }
            if (doc.contains("duration_s") && doc["duration_s"].is_number()) {
                h.duration_s = doc["duration_s"].get<double>();
            }
            if (doc.contains("strategy") && doc["strategy"].is_string()) {
                h.strategy = doc["strategy"].get<std::string>();
            }
            trace.header = h;
            have_header = true;
            continue;
        }
        if (!doc.contains("t") || !doc["t"].is_number() || !doc.contains("kind") ||
            !doc["kind"].is_string()) {
            throw MalformedTrace("line " + std::to_string(lineno) +
                                 ": record needs numeric 't' and string 'kind'");
        }
        TraceRecord rec;
        rec.t_s = doc["t"].get<double>();
        rec.kind = doc["kind"].get<std::string>();
        doc.erase("t");
        doc.erase("kind");
        rec.data = std::move(doc);
        trace.records.push_back(std::move(rec));
    }
    if (!have_header) throw MalformedTrace("empty trace: missing header line");
    return trace;
}

void save_trace(const EventTrace& trace, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw MalformedTrace("cannot write trace file: " + path);
    out << trace_to_jsonl(trace);
}

EventTrace load_trace(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw MalformedTrace("cannot open trace file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return trace_from_jsonl(buf.str());
}

}  // namespace nomadsim
