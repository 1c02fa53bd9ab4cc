#include "nomadsim/placement.hpp"

#include <algorithm>

#include "nomadsim/util.hpp"

namespace nomadsim {

const char* vnf_class_name(VnfClass c) {
    switch (c) {
        case VnfClass::Security: return "security";
        case VnfClass::SubscriberData: return "subscriber_data";
        case VnfClass::Other: return "other";
    }
    return "?";
}

std::optional<VnfClass> vnf_class_from_name(const std::string& name) {
    if (name == "security") return VnfClass::Security;
    if (name == "subscriber_data") return VnfClass::SubscriberData;
    if (name == "other") return VnfClass::Other;
    return std::nullopt;
}

OutageProbability::OutageProbability(double p) : value(p) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw std::invalid_argument("outage probability must lie in [0, 1], got " +
                                    format_number(p));
    }
}

const char* strategy_name(Strategy s) {
    switch (s) {
        case Strategy::TrustZone: return "trustzone";
        case Strategy::Island: return "island";
        case Strategy::Private: return "private";
    }
    return "?";
}

std::optional<Strategy> strategy_from_name(const std::string& name) {
    if (name == "trustzone") return Strategy::TrustZone;
    if (name == "island") return Strategy::Island;
    if (name == "private") return Strategy::Private;
    return std::nullopt;
}

CatalogTooLarge::CatalogTooLarge(std::size_t n)
    : std::runtime_error("vnf catalog too large for exhaustive search: " + std::to_string(n) +
                         " entries (limit 20)") {}

UnknownVnf::UnknownVnf(const std::string& id) : std::runtime_error("unknown vnf: " + id) {}

double effective_opportunity_cost(const VnfSpec& vnf, OutageProbability p) {
    return vnf.weight * p.value * vnf.opp_cost;
}

double plan_cost(const std::vector<VnfSpec>& catalog, const std::set<std::string>& local,
                 OutageProbability p) {
    // Always summed in catalog order so that tied splits price exactly equal.
    double cost = 0.0;
    std::size_t matched = 0;
    for (const auto& vnf : catalog) {
        if (local.count(vnf.id)) {
            cost += vnf.impl_cost;
            ++matched;
        } else {
            cost += effective_opportunity_cost(vnf, p);
        }
    }
    if (matched != local.size()) {
        for (const auto& id : local) {
            if (!std::any_of(catalog.begin(), catalog.end(),
                             [&](const VnfSpec& v) { return v.id == id; })) {
                throw UnknownVnf(id);
            }
        }
    }
    return cost;
}

static PlacementPlan finish_plan(const std::vector<VnfSpec>& catalog, std::set<std::string> local,
                                 OutageProbability p, Strategy s) {
    PlacementPlan plan;
    plan.strategy = s;
    plan.total_cost = plan_cost(catalog, local, p);
    plan.local = std::move(local);
    for (const auto& vnf : catalog) {
        if (!plan.local.count(vnf.id)) plan.remote.insert(vnf.id);
    }
    return plan;
}

PlacementPlan plan_island(const std::vector<VnfSpec>& catalog, OutageProbability p) {
    // Per function: host locally only when the expected outage loss beats the
    // hosting cost. Ties stay remote.
    std::set<std::string> local;
    for (const auto& vnf : catalog) {
        if (effective_opportunity_cost(vnf, p) > vnf.impl_cost) local.insert(vnf.id);
    }
    return finish_plan(catalog, std::move(local), p, Strategy::Island);
}

PlacementPlan plan_trust_zone(const std::vector<VnfSpec>& catalog, OutageProbability p) {
    // Security functions move as one block or not at all; everything else
    // stays in the operator core.
    double block_impl = 0.0;
    double block_opp = 0.0;
    for (const auto& vnf : catalog) {
        if (vnf.cls == VnfClass::Security) {
            block_impl += vnf.impl_cost;
            block_opp += effective_opportunity_cost(vnf, p);
        }
    }
    std::set<std::string> local;
    if (block_opp > block_impl) {
        for (const auto& vnf : catalog) {
            if (vnf.cls == VnfClass::Security) local.insert(vnf.id);
        }
    }
    return finish_plan(catalog, std::move(local), p, Strategy::TrustZone);
}

PlacementPlan plan_private(const std::vector<VnfSpec>& catalog) {
    std::set<std::string> local;
    for (const auto& vnf : catalog) local.insert(vnf.id);
    return finish_plan(catalog, std::move(local), OutageProbability(0.0), Strategy::Private);
}

PlacementPlan plan_for(Strategy s, const std::vector<VnfSpec>& catalog, OutageProbability p) {
    switch (s) {
        case Strategy::TrustZone: return plan_trust_zone(catalog, p);
        case Strategy::Island: return plan_island(catalog, p);
        case Strategy::Private: return plan_private(catalog);
    }
    throw std::logic_error("unhandled strategy");
}

PlacementPlan brute_force_plan(const std::vector<VnfSpec>& catalog, OutageProbability p) {
    const std::size_t n = catalog.size();
    if (n > 20) throw CatalogTooLarge(n);

    bool have_best = false;
    double best_cost = 0.0;
    std::set<std::string> best_local;
    for (std::uint64_t mask = 0; mask < (1ULL << n); ++mask) {
        std::set<std::string> local;
        for (std::size_t i = 0; i < n; ++i) {
            if (mask & (1ULL << i)) local.insert(catalog[i].id);
        }
        const double cost = plan_cost(catalog, local, p);
        bool better = !have_best || cost < best_cost;
        if (have_best && cost == best_cost) {
            better = local.size() < best_local.size() ||
                     (local.size() == best_local.size() &&
                      std::lexicographical_compare(local.begin(), local.end(),
                                                   best_local.begin(), best_local.end()));
        }
        if (better) {
            have_best = true;
            best_cost = cost;
            best_local = std::move(local);
        }
    }
    return finish_plan(catalog, std::move(best_local), p, Strategy::Island);
}

bool service_available(const PlacementPlan& plan, const std::string& vnf_id,
                       bool backhaul_link_up) {
    if (plan.local.count(vnf_id)) return true;
    if (plan.remote.count(vnf_id)) return backhaul_link_up;
    throw UnknownVnf(vnf_id);
}

}  // namespace nomadsim
