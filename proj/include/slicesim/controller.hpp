// controller.hpp -- the centralized real-time controller: per-tenant demand
// smoothing, cross-tenant RB apportionment, and grant-to-range mapping
#pragma once

#include <deque>
#include <optional>
#include <string>
#include <vector>

#include "slicesim/model.hpp"
#include "slicesim/scheduler.hpp"

namespace slicesim {

enum class SharingMode { kStatic, kShared };

struct SharingPolicy {
    SharingMode mode = SharingMode::kShared;
    SlicingLevel slicing = SlicingLevel::kMulti;
    int decision_period_ttis = 1;
};

// The four policy strings accepted on the CLI and in scenario files.
extern const std::vector<std::string> kPolicyNames;

std::optional<SharingPolicy> policy_from_string(const std::string& name);
std::string policy_to_string(const SharingPolicy& policy);

struct TenantRange {
    int start = 0;
    int len = 0;
};

struct SharingDecision {
    long tti = 0;
    std::vector<int> grant_rbs;       // by tenant index
    std::vector<TenantRange> ranges;  // disjoint, packed from RB 0
};

// Apportions num_rbs across tenants. Static grants min(demand, dedicated).
// Shared grants the dedicated floor, then redistributes the surplus to
// tenants with residual demand by the largest-remainder rule (remainder
// ties to the lower tenant index), never exceeding demand.
std::vector<int> apportion(const std::vector<int>& demand, const std::vector<int>& dedicated,
                           int num_rbs, SharingMode mode);

SharingDecision assign_ranges(long tti, const std::vector<int>& grants, int num_rbs);

// Holds per-tenant demand history for coarse decision periods and applies
// the policy each TTI.
class Controller {
  public:
    Controller(const Scenario& scenario, SharingPolicy policy);

    // Effective per-tenant demands for this TTI: instantaneous for
    // period 1; otherwise the windowed mean, recomputed on TTIs that are
    // multiples of the period and held in between.
    std::vector<int> effective_demands(long tti, const std::vector<DemandReport>& reports);

    SharingDecision decide(long tti, const std::vector<DemandReport>& reports);

    const SharingPolicy& policy() const { return policy_; }

  private:
    SharingPolicy policy_;
    int num_rbs_ = 0;
    std::vector<int> dedicated_;
    std::vector<std::deque<long long>> windows_;  // per tenant, newest at back
    std::vector<int> held_;
};

}  // namespace slicesim
