#pragma once

#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace nomadsim {

enum class VnfClass { Security, SubscriberData, Other };

const char* vnf_class_name(VnfClass c);
std::optional<VnfClass> vnf_class_from_name(const std::string& name);

struct VnfSpec {
    std::string id;
    VnfClass cls = VnfClass::Other;
    double impl_cost = 0.0;  // per epoch, for hosting on the mobile edge cloud
    double opp_cost = 0.0;   // per epoch, for being unusable during an outage
    double weight = 1.0;
};

// Checked probability; rejects anything outside [0, 1].
struct OutageProbability {
    double value = 0.0;

    OutageProbability() = default;
    explicit OutageProbability(double p);
};

enum class Strategy { TrustZone, Island, Private };

const char* strategy_name(Strategy s);
std::optional<Strategy> strategy_from_name(const std::string& name);

struct PlacementPlan {
    std::set<std::string> local;   // hosted on the mobile edge cloud
    std::set<std::string> remote;  // left in the operator core
    double total_cost = 0.0;
    Strategy strategy = Strategy::Island;
};

class CatalogTooLarge : public std::runtime_error {
public:
    explicit CatalogTooLarge(std::size_t n);
};

class UnknownVnf : public std::runtime_error {
public:
    explicit UnknownVnf(const std::string& id);
};

double effective_opportunity_cost(const VnfSpec& vnf, OutageProbability p);

// Expected cost of one concrete local/remote split; all planners and the
// exhaustive search below price plans through this single function.
double plan_cost(const std::vector<VnfSpec>& catalog, const std::set<std::string>& local,
                 OutageProbability p);

PlacementPlan plan_island(const std::vector<VnfSpec>& catalog, OutageProbability p);
PlacementPlan plan_trust_zone(const std::vector<VnfSpec>& catalog, OutageProbability p);
PlacementPlan plan_private(const std::vector<VnfSpec>& catalog);
PlacementPlan plan_for(Strategy s, const std::vector<VnfSpec>& catalog, OutageProbability p);

// Exhaustive minimum over all 2^n splits; refuses catalogs above 20 entries.
// Ties prefer the smaller local set, then the lexicographically smallest one.
PlacementPlan brute_force_plan(const std::vector<VnfSpec>& catalog, OutageProbability p);

// A placed function is usable when hosted locally, or when the backhaul to
// its remote host is up. Unknown ids throw.
bool service_available(const PlacementPlan& plan, const std::string& vnf_id, bool backhaul_link_up);

}  // namespace nomadsim
