#pragma once

#include <cstdint>
#include <string>

namespace nomadsim {

// Deterministic 64-bit generator. The std:: distributions are not bit-stable
// across standard libraries, so simulation randomness goes through this one;
// it is also the generator named in the trace header.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next();
    double next_unit();  // [0, 1)
    double next_real(double lo, double hi);
    std::uint64_t next_below(std::uint64_t n);
    SplitMix64 split();  // independent child stream

private:
    std::uint64_t state_;
};

std::uint64_t fnv1a64(const std::string& data);
std::string to_hex(std::uint64_t v);

// Half-open time interval [start, end).
struct Interval {
    double start_s = 0.0;
    double end_s = 0.0;

    bool contains(double t) const { return t >= start_s && t < end_s; }
    double length_s() const { return end_s > start_s ? end_s - start_s : 0.0; }
};

// Shortest round-trip decimal form, the same one the JSON writer uses.
std::string format_number(double v);

}  // namespace nomadsim
