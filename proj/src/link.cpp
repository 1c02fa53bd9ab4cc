#include "nomadsim/link.hpp"

#include <algorithm>

namespace nomadsim {

std::vector<RatSpec> default_rat_catalog() {
    return {
        {"mmw26", 500.0, 1000.0, 1.0, true, true, true},
        {"local_cell", 1000.0, 150.0, 10.0, false, false, false},
        {"long_range", 10000.0, 10.0, 50.0, false, false, false},
    };
}

LinkQuality link_quality(const RatSpec& rat, double distance_m, bool los, RainIntensity rain) {
    const bool blocked = distance_m > rat.max_range_m || (rat.requires_los && !los) ||
                         (rat.weather_sensitive && rain == RainIntensity::Heavy);
    if (blocked) return {false, 0.0, 0.0};
    return {true, rat.capacity_mbps, rat.base_latency_ms};
}

bool los_between(const EnvironmentState& env, const std::string& a, const std::string& b,
                 double t_s) {
    for (const auto& blk : env.blockages) {
        const bool same_pair = (blk.a == a && blk.b == b) || (blk.a == b && blk.b == a);
        if (same_pair && blk.when.contains(t_s)) return false;
    }
    return true;
}

RainIntensity rain_at(const EnvironmentState& env, double t_s) {
    for (const auto& iv : env.heavy_rain) {
        if (iv.contains(t_s)) return RainIntensity::Heavy;
    }
    return RainIntensity::None;
}

bool backhaul_up(const EnvironmentState& env, double t_s) {
    for (const auto& iv : env.backhaul_outages) {
        if (iv.contains(t_s)) return false;
    }
    return true;
}

bool AntennaAssignment::serves(const std::string& peer) const {
    return std::any_of(slots.begin(), slots.end(),
                       [&](const auto& s) { return s && *s == peer; });
}

std::size_t AntennaAssignment::used() const {
    std::size_t n = 0;
    for (const auto& s : slots) {
        if (s) ++n;
    }
    return n;
}

AntennaAssignment assign_antennas(const std::string& vehicle,
                                  const std::vector<std::string>& peers_by_priority,
                                  int antennas) {
    AntennaAssignment out;
    out.vehicle = vehicle;
    if (antennas <= 0) return out;
    out.slots.resize(static_cast<std::size_t>(antennas));
    std::size_t slot = 0;
    for (const auto& peer : peers_by_priority) {
        if (slot >= out.slots.size()) break;
        out.slots[slot++] = peer;
    }
    return out;
}

}  // namespace nomadsim
