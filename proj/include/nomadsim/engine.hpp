#pragma once

#include <memory>
#include <utility>

#include "nomadsim/report.hpp"
#include "nomadsim/scenario.hpp"
#include "nomadsim/trace.hpp"

namespace nomadsim {

// One simulation instance over a validated scenario. Time advances on an
// integer millisecond clock; events at equal timestamps execute in a fixed
// rank order (environment changes, flow starts, the mobility tick, placement
// epochs, election checks, handover actions, flow stops, notifications) and
// ties beyond that in insertion order, which makes runs bit-reproducible.
class Simulation {
  public:
    explicit Simulation(const Scenario& scenario);
    ~Simulation();
    Simulation(Simulation&&) noexcept;
    Simulation& operator=(Simulation&&) noexcept;

    // Pops and executes exactly one pending event; false once none are left.
    bool step();

    double now_s() const;
    const EventTrace& trace() const;
    EventTrace take_trace();

  private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

// Runs the scenario to completion and scores the resulting trace.
std::pair<EventTrace, SimReport> run(const Scenario& scenario);

}  // namespace nomadsim
