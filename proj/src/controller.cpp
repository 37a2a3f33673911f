#include "slicesim/controller.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace slicesim {

const std::vector<std::string> kPolicyNames = {"static-single", "static-multi", "shared-single",
                                               "shared-multi"};

std::optional<SharingPolicy> policy_from_string(const std::string& name) {
    SharingPolicy policy;
    if (name == "static-single") {
        policy.mode = SharingMode::kStatic;
        policy.slicing = SlicingLevel::kSingle;
    } else if (name == "static-multi") {
        policy.mode = SharingMode::kStatic;
        policy.slicing = SlicingLevel::kMulti;
    } else if (name == "shared-single") {
        policy.mode = SharingMode::kShared;
        policy.slicing = SlicingLevel::kSingle;
    } else if (name == "shared-multi") {
        policy.mode = SharingMode::kShared;
        policy.slicing = SlicingLevel::kMulti;
    } else {
        return std::nullopt;
    }
    return policy;
}

std::string policy_to_string(const SharingPolicy& policy) {
    std::string s = policy.mode == SharingMode::kStatic ? "static" : "shared";
    s += policy.slicing == SlicingLevel::kSingle ? "-single" : "-multi";
    return s;
}

std::vector<int> apportion(const std::vector<int>& demand, const std::vector<int>& dedicated,
                           int num_rbs, SharingMode mode) {
    if (demand.size() != dedicated.size()) {
        throw std::invalid_argument("demand/dedicated size mismatch");
    }
    const std::size_t n = demand.size();
    long long dedicated_sum = std::accumulate(dedicated.begin(), dedicated.end(), 0LL);
    if (dedicated_sum != num_rbs) {
        throw std::invalid_argument("dedicated shares sum " + std::to_string(dedicated_sum) +
                                    " != " + std::to_string(num_rbs));
    }

    std::vector<int> grants(n, 0);
    long long surplus = num_rbs;
    for (std::size_t t = 0; t < n; ++t) {
        grants[t] = std::min(demand[t], dedicated[t]);
        surplus -= grants[t];
    }
    if (mode == SharingMode::kStatic) return grants;

    // Residual demand beyond the dedicated floor.
    std::vector<long long> residual(n, 0);
    for (std::size_t t = 0; t < n; ++t) residual[t] = demand[t] - grants[t];

    while (surplus > 0) {
        std::vector<std::size_t> eligible;
        long long residual_sum = 0;
        for (std::size_t t = 0; t < n; ++t) {
            if (residual[t] > 0) {
                eligible.push_back(t);
                residual_sum += residual[t];
            }
        }
        if (eligible.empty()) break;

        if (surplus >= residual_sum) {
            // Everybody can be topped up to their demand; leftover RBs stay
            // unassigned rather than being forced onto tenants.
            for (std::size_t t : eligible) {
                grants[t] += static_cast<int>(residual[t]);
                residual[t] = 0;
            }
            surplus -= residual_sum;
            break;
        }

        // Largest remainder: integral quota floor, then one extra RB per
        // tenant in descending remainder order, ties to the lower index.
        struct Share {
            std::size_t tenant;
            long long floor_rbs;
            long long remainder;
        };
        std::vector<Share> shares;
        long long floored = 0;
        for (std::size_t t : eligible) {
            long long num = surplus * residual[t];
            shares.push_back({t, num / residual_sum, num % residual_sum});
            floored += num / residual_sum;
        }
        std::stable_sort(shares.begin(), shares.end(), [](const Share& a, const Share& b) {
            return a.remainder > b.remainder;
        });
        long long leftover = surplus - floored;
        for (auto& share : shares) {
            long long give = share.floor_rbs + (leftover > 0 ? 1 : 0);
            if (leftover > 0) --leftover;
            grants[share.tenant] += static_cast<int>(give);
            residual[share.tenant] -= give;
        }
        surplus = 0;
    }
    return grants;
}

SharingDecision assign_ranges(long tti, const std::vector<int>& grants, int num_rbs) {
    long long total = std::accumulate(grants.begin(), grants.end(), 0LL);
    if (total > num_rbs) {
        throw std::logic_error("grants sum " + std::to_string(total) + " exceeds grid of " +
                               std::to_string(num_rbs) + " rbs");
    }
    SharingDecision decision;
    decision.tti = tti;
    decision.grant_rbs = grants;
    int cursor = 0;
    for (int g : grants) {
        decision.ranges.push_back(TenantRange{cursor, g});
        cursor += g;
    }
    return decision;
}

Controller::Controller(const Scenario& scenario, SharingPolicy policy)
    : policy_(policy), num_rbs_(scenario.num_rbs) {
    for (const auto& tenant : scenario.tenants) dedicated_.push_back(tenant.dedicated_rbs);
    windows_.resize(scenario.tenants.size());
    held_.assign(scenario.tenants.size(), 0);
}

std::vector<int> Controller::effective_demands(long tti,
                                               const std::vector<DemandReport>& reports) {
    if (reports.size() != dedicated_.size()) {
        throw std::invalid_argument("expected one demand report per tenant");
    }
    const int period = policy_.decision_period_ttis;
    std::vector<int> effective(reports.size(), 0);

    if (period <= 1) {
        for (std::size_t t = 0; t < reports.size(); ++t) {
            effective[t] = reports[t].total_demand_rbs;
        }
        return effective;
    }

    if (tti % period == 0) {
        for (std::size_t t = 0; t < reports.size(); ++t) {
            if (windows_[t].empty()) {
                held_[t] = reports[t].total_demand_rbs;  // no history yet
            } else {
                long long sum = std::accumulate(windows_[t].begin(), windows_[t].end(), 0LL);
                long long w = static_cast<long long>(windows_[t].size());
                held_[t] = static_cast<int>((sum + w - 1) / w);  // ceil(mean)
            }
        }
    }
    for (std::size_t t = 0; t < reports.size(); ++t) {
        windows_[t].push_back(reports[t].total_demand_rbs);
        if (windows_[t].size() > static_cast<std::size_t>(period)) windows_[t].pop_front();
        effective[t] = held_[t];
    }
    return effective;
}

SharingDecision Controller::decide(long tti, const std::vector<DemandReport>& reports) {
    std::vector<int> demand = effective_demands(tti, reports);
    std::vector<int> grants = apportion(demand, dedicated_, num_rbs_, policy_.mode);
    return assign_ranges(tti, grants, num_rbs_);
}

}  // namespace slicesim
