#include <doctest.h>

#include <algorithm>
#include <cstdio>
#include <string>

#include "nomadsim/trace.hpp"

using namespace nomadsim;
using nlohmann::json;

namespace {

EventTrace sample_trace() {
    EventTrace tr;
    tr.header.scenario_hash = "00000000deadbeef";
    tr.header.seed = 42;
    tr.header.tick_ms = 100.0;
    tr.header.duration_s = 2.5;
    tr.header.strategy = "island";
    tr.append(0.0, "group_init", {{"nm", "a"}, {"members", json::array({"a", "b"})}});
    tr.append(0.1, "flow_start", {{"flow", "f1"}, {"demand_mbps", 10.0}});
    tr.append(2.5, "flow_stop", {{"flow", "f1"}});
    return tr;
}

}  // namespace

TEST_CASE("traces round-trip through jsonl") {
    EventTrace tr = sample_trace();
    std::string text = trace_to_jsonl(tr);

    // One header line plus one line per record, each a self-contained object.
    REQUIRE(std::count(text.begin(), text.end(), '\n') == 4);
    std::string first = text.substr(0, text.find('\n'));
    json header = json::parse(first);
    CHECK(header.at("schema") == "nomadsim-trace/1");
    CHECK(header.at("scenario_hash") == "00000000deadbeef");
    CHECK(header.at("seed") == 42);
    CHECK(header.at("prng") == "splitmix64");

    EventTrace back = trace_from_jsonl(text);
    CHECK(back.header.scenario_hash == tr.header.scenario_hash);
    CHECK(back.header.seed == tr.header.seed);
    CHECK(back.header.tick_ms == tr.header.tick_ms);
    CHECK(back.header.duration_s == tr.header.duration_s);
    CHECK(back.header.strategy == tr.header.strategy);
    REQUIRE(back.records.size() == 3);
    CHECK(back.records[0].kind == "group_init");
    CHECK(back.records[0].t_s == 0.0);
    CHECK(back.records[0].data.at("nm") == "a");
    CHECK(back.records[1].data.at("demand_mbps") == 10.0);
    CHECK(back.records[2].t_s == 2.5);

    // Serialization is stable: a second pass is byte-identical.
    CHECK(trace_to_jsonl(back) == text);
}

TEST_CASE("record lines carry t and kind flattened next to the payload") {
    EventTrace tr = sample_trace();
    std::string text = trace_to_jsonl(tr);
    std::size_t start = text.find('\n') + 1;
    std::string second = text.substr(start, text.find('\n', start) - start);
    json rec = json::parse(second);
    CHECK(rec.at("t") == 0.0);
    CHECK(rec.at("kind") == "group_init");
    CHECK(rec.at("nm") == "a");
    CHECK(!rec.contains("data"));
}

TEST_CASE("malformed traces are rejected with a reason") {
    CHECK_THROWS_AS(trace_from_jsonl(""), MalformedTrace);
    CHECK_THROWS_AS(trace_from_jsonl("not json\n"), MalformedTrace);
    CHECK_THROWS_AS(trace_from_jsonl("{\"schema\":\"other/9\"}\n"), MalformedTrace);

    EventTrace tr = sample_trace();
    std::string text = trace_to_jsonl(tr);
    CHECK_THROWS_AS(trace_from_jsonl(text + "{\"kind\":\"missing_t\"}\n"), MalformedTrace);
    CHECK_THROWS_AS(trace_from_jsonl(text + "{\"t\":1.0}\n"), MalformedTrace);
    CHECK_THROWS_AS(trace_from_jsonl(text + "[1,2,3]\n"), MalformedTrace);
}

TEST_CASE("traces survive a save and load cycle") {
    EventTrace tr = sample_trace();
    std::string path = "test_trace_roundtrip.jsonl";
    save_trace(tr, path);
    EventTrace back = load_trace(path);
    CHECK(trace_to_jsonl(back) == trace_to_jsonl(tr));
    std::remove(path.c_str());

    CHECK_THROWS(load_trace("does_not_exist/trace.jsonl"));
}
