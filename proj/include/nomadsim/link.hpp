#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "nomadsim/util.hpp"

namespace nomadsim {

enum class RainIntensity { None, Heavy };

struct RatSpec {
    std::string name;
    double max_range_m = 0.0;
    double capacity_mbps = 0.0;    // per cell, or per link for point-to-point RATs
    double base_latency_ms = 0.0;  // one-way
    bool requires_los = false;
    bool point_to_point = false;   // needs a directive antenna pair on both ends
    bool weather_sensitive = false;
};

// mmw26, local_cell, long_range.
std::vector<RatSpec> default_rat_catalog();

struct LinkQuality {
    bool available = false;
    double capacity_mbps = 0.0;
    double latency_ms = 0.0;
};

// Flat capacity and latency inside the operating range, unavailable outside.
LinkQuality link_quality(const RatSpec& rat, double distance_m, bool los, RainIntensity rain);

struct Blockage {
    std::string a;  // unordered vehicle pair
    std::string b;
    Interval when;
};

struct EnvironmentState {
    std::vector<Blockage> blockages;
    std::vector<Interval> heavy_rain;
    std::vector<Interval> backhaul_outages;
};

bool los_between(const EnvironmentState& env, const std::string& a, const std::string& b,
                 double t_s);
RainIntensity rain_at(const EnvironmentState& env, double t_s);
bool backhaul_up(const EnvironmentState& env, double t_s);

// Directive antenna slots of one vehicle; slots[i] holds the peer it points at.
struct AntennaAssignment {
    std::string vehicle;
    std::vector<std::optional<std::string>> slots;

    bool serves(const std::string& peer) const;
    std::size_t used() const;
};

// Peers are taken in the given priority order until the slots run out.
AntennaAssignment assign_antennas(const std::string& vehicle,
                                  const std::vector<std::string>& peers_by_priority,
                                  int antennas);

}  // namespace nomadsim
