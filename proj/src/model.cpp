#include "slicesim/model.hpp"

#include <algorithm>
#include <set>

#include "slicesim/grid.hpp"

namespace slicesim {

const TenantConfig* Scenario::find_tenant(int tenant_id) const {
    for (const auto& t : tenants) {
        if (t.tenant_id == tenant_id) return &t;
    }
    return nullptr;
}

const SubSliceConfig* Scenario::find_subslice(int tenant_id, int subslice_id) const {
    const TenantConfig* t = find_tenant(tenant_id);
    if (t == nullptr) return nullptr;
    for (const auto& s : t->subslices) {
        if (s.subslice_id == subslice_id) return &s;
    }
    return nullptr;
}

namespace {

void validate_traffic(const TrafficSpec& spec, const std::string& path,
                      std::vector<std::string>& errors) {
    if (const auto* voip = std::get_if<VoipTraffic>(&spec.model)) {
        if (voip->on_mean_s <= 0) errors.push_back(path + ".on_mean_s: must be positive");
        if (voip->off_mean_s <= 0) errors.push_back(path + ".off_mean_s: must be positive");
        if (voip->pkt_bits <= 0) errors.push_back(path + ".pkt_bits: must be positive");
        if (voip->period_ttis <= 0) errors.push_back(path + ".period_ttis: must be positive");
    } else if (const auto* cbr = std::get_if<CbrVideoTraffic>(&spec.model)) {
        if (cbr->rate_bps <= 0) errors.push_back(path + ".rate_bps: must be positive");
        if (cbr->frame_period_ttis <= 0) {
            errors.push_back(path + ".frame_period_ttis: must be positive");
        }
    } else if (const auto* fb = std::get_if<FullBufferTraffic>(&spec.model)) {
        if (fb->target_backlog_bits <= 0) {
            errors.push_back(path + ".target_bits: must be positive");
        }
    }
    if (spec.start_tti < 0) errors.push_back(path + ".start_tti: must be non-negative");
    if (spec.stop_tti >= 0 && spec.stop_tti <= spec.start_tti) {
        errors.push_back(path + ".stop_tti: must be greater than start_tti");
    }
}

void validate_channel(const ChannelSpec& spec, const std::string& path,
                      std::vector<std::string>& errors) {
    if (const auto* fixed = std::get_if<FixedCqi>(&spec.process)) {
        if (fixed->cqi < 1 || fixed->cqi > 15) errors.push_back(path + ".cqi: must be in 1..15");
    } else if (const auto* walk = std::get_if<RandomWalkCqi>(&spec.process)) {
        if (walk->min_cqi < 1 || walk->max_cqi > 15 || walk->min_cqi > walk->max_cqi) {
            errors.push_back(path + ".min/max: must satisfy 1 <= min <= max <= 15");
        }
        if (walk->start_cqi < walk->min_cqi || walk->start_cqi > walk->max_cqi) {
            errors.push_back(path + ".start_cqi: must lie within [min, max]");
        }
        if (walk->step_period_ttis <= 0) {
            errors.push_back(path + ".step_period_ttis: must be positive");
        }
    }
}

}  // namespace

std::vector<std::string> validate_scenario(Scenario& scenario) {
    std::vector<std::string> errors;

    if (!valid_num_rbs(scenario.num_rbs)) {
        errors.push_back("cell.num_rbs: " + std::to_string(scenario.num_rbs) +
                         " is not a valid grid size (6, 15, 25, 50, 75, 100)");
    }

    std::stable_sort(scenario.tenants.begin(), scenario.tenants.end(),
                     [](const auto& a, const auto& b) { return a.tenant_id < b.tenant_id; });
    std::stable_sort(scenario.ues.begin(), scenario.ues.end(),
                     [](const auto& a, const auto& b) { return a.ue_id < b.ue_id; });

    long long dedicated_sum = 0;
    std::set<int> tenant_ids;
    for (const auto& tenant : scenario.tenants) {
        const std::string tpath = "tenant[" + std::to_string(tenant.tenant_id) + "]";
        if (!tenant_ids.insert(tenant.tenant_id).second) {
            errors.push_back(tpath + ": duplicate tenant_id " + std::to_string(tenant.tenant_id));
        }
        if (tenant.dedicated_rbs < 0) {
            errors.push_back(tpath + ".dedicated_rbs: must be non-negative");
        }
        dedicated_sum += tenant.dedicated_rbs;

        std::set<int> subslice_ids;
        for (const auto& sub : tenant.subslices) {
            const std::string spath = tpath + ".subslice[" + std::to_string(sub.subslice_id) + "]";
            if (!subslice_ids.insert(sub.subslice_id).second) {
                errors.push_back(spath + ": duplicate subslice_id " +
                                 std::to_string(sub.subslice_id));
            }
            if (sub.service_class == ServiceClass::kGbr && sub.gbr_bps <= 0) {
                errors.push_back(spath + ".gbr_bps: GBR sub-slice requires gbr_bps > 0");
            }
            if (sub.service_class == ServiceClass::kNonGbr && sub.weight < 1) {
                errors.push_back(spath + ".weight: must be >= 1");
            }
        }
    }
    if (dedicated_sum != scenario.num_rbs) {
        errors.push_back("tenants: dedicated shares sum " + std::to_string(dedicated_sum) +
                         " != " + std::to_string(scenario.num_rbs));
    }

    std::map<int, int> ue_first_pos;  // ue_id -> index of first definition
    for (std::size_t i = 0; i < scenario.ues.size(); ++i) {
        const auto& ue = scenario.ues[i];
        const std::string upath = "ue[" + std::to_string(ue.ue_id) + "]";
        auto [it, inserted] = ue_first_pos.emplace(ue.ue_id, static_cast<int>(i));
        if (!inserted) {
            errors.push_back(upath + ": duplicate ue_id " + std::to_string(ue.ue_id) +
                             " (definitions #" + std::to_string(it->second + 1) + " and #" +
                             std::to_string(i + 1) + ")");
        }
        if (scenario.find_subslice(ue.tenant_id, ue.subslice_id) == nullptr) {
            errors.push_back(upath + ": unknown tenant/subslice reference (" +
                             std::to_string(ue.tenant_id) + ", " +
                             std::to_string(ue.subslice_id) + ")");
        }
        validate_traffic(ue.traffic, upath + ".traffic", errors);
        validate_channel(ue.channel, upath + ".channel", errors);
    }

    return errors;
}

Registry::Registry(const Scenario& scenario) {
    for (const auto& ue : scenario.ues) {
        by_ue_[ue.ue_id] = UeAddress{ue.tenant_id, ue.subslice_id};
    }
}

std::optional<UeAddress> Registry::classify(int ue_id) const {
    auto it = by_ue_.find(ue_id);
    if (it == by_ue_.end()) return std::nullopt;
    return it->second;
}

}  // namespace slicesim
