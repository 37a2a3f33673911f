#include "slicesim/scheduler.hpp"

#include <algorithm>
#include <stdexcept>

#include "slicesim/grid.hpp"

namespace slicesim {

void GbrBucket::accrue() {
    credit_millibits_ = std::min(cap_millibits_, credit_millibits_ + gbr_bps_);
}

void GbrBucket::drain(long long served_bits) {
    credit_millibits_ = std::max(0LL, credit_millibits_ - served_bits * 1000);
}

int rbs_for_bits(long long bits, int bits_per_rb) {
    if (bits <= 0) return 0;
    return static_cast<int>((bits + bits_per_rb - 1) / bits_per_rb);
}

int ScheduleList::total_rbs() const {
    int total = 0;
    for (const auto& e : entries) total += e.rb_count;
    return total;
}

TenantScheduler::TenantScheduler(const TenantConfig& tenant, const Scenario& scenario,
                                 SlicingLevel level)
    : tenant_(tenant), level_(level) {
    std::vector<SubSliceConfig> sorted = tenant.subslices;
    std::sort(sorted.begin(), sorted.end(),
              [](const auto& a, const auto& b) { return a.subslice_id < b.subslice_id; });
    for (const auto& cfg : sorted) {
        SubsliceState state;
        state.cfg = cfg;
        if (cfg.service_class == ServiceClass::kGbr) {
            state.bucket = GbrBucket(cfg.gbr_bps);
        }
        for (const auto& ue : scenario.ues) {  // scenario UEs are ascending by id
            if (ue.tenant_id == tenant.tenant_id && ue.subslice_id == cfg.subslice_id) {
                state.ue_ids.push_back(ue.ue_id);
                all_ue_ids_.push_back(ue.ue_id);
            }
        }
        subslices_.push_back(std::move(state));
    }
    std::sort(all_ue_ids_.begin(), all_ue_ids_.end());
}

void TenantScheduler::accrue_all() {
    for (auto& s : subslices_) {
        if (s.cfg.service_class == ServiceClass::kGbr) s.bucket.accrue();
    }
}

DemandReport TenantScheduler::compute_demand(const MacArray& mac,
                                             const std::map<int, int>& cqi_by_ue) const {
    DemandReport report;
    report.tenant_id = tenant_.tenant_id;

    for (const auto& s : subslices_) {
        SubsliceDemand sd;
        sd.subslice_id = s.cfg.subslice_id;
        sd.gbr = s.cfg.service_class == ServiceClass::kGbr;

        struct Backlogged {
            int ue_id;
            long long backlog;
            long head_arrival;
        };
        std::vector<Backlogged> backlogged;
        for (int ue_id : s.ue_ids) {
            long long backlog = mac.backlog_bits(tenant_.tenant_id, s.cfg.subslice_id, ue_id);
            if (backlog > 0) {
                backlogged.push_back(
                    {ue_id, backlog,
                     mac.head_arrival_tti(tenant_.tenant_id, s.cfg.subslice_id, ue_id)});
            }
        }

        std::map<int, long long> eligible;
        if (sd.gbr && level_ == SlicingLevel::kMulti) {
            // Shared credit, handed out in arrival order of the queue heads.
            std::sort(backlogged.begin(), backlogged.end(), [](const auto& a, const auto& b) {
                return std::tie(a.head_arrival, a.ue_id) < std::tie(b.head_arrival, b.ue_id);
            });
            long long remaining = s.bucket.credit_bits();
            for (const auto& b : backlogged) {
                long long e = std::min(b.backlog, remaining);
                eligible[b.ue_id] = e;
                remaining -= e;
            }
        } else {
            for (const auto& b : backlogged) eligible[b.ue_id] = b.backlog;
        }

        for (int ue_id : s.ue_ids) {
            auto cqi_it = cqi_by_ue.find(ue_id);
            if (cqi_it == cqi_by_ue.end()) {
                throw std::logic_error("cqi snapshot missing ue " + std::to_string(ue_id));
            }
            UeDemand ud;
            ud.ue_id = ue_id;
            ud.cqi = cqi_it->second;
            auto it = eligible.find(ue_id);
            ud.eligible_bits = it == eligible.end() ? 0 : it->second;
            ud.demand_rbs = rbs_for_bits(ud.eligible_bits, bits_per_rb(ud.cqi));
            sd.eligible_bits += ud.eligible_bits;
            sd.demand_rbs += ud.demand_rbs;
            sd.ues.push_back(ud);
        }

        if (sd.gbr) report.gbr_demand_rbs += sd.demand_rbs;
        report.total_demand_rbs += sd.demand_rbs;
        report.subslices.push_back(std::move(sd));
    }
    return report;
}

ScheduleList TenantScheduler::schedule(const DemandReport& report, int granted_rbs) {
    return level_ == SlicingLevel::kMulti ? schedule_multi(report, granted_rbs)
                                          : schedule_single(report, granted_rbs);
}

namespace {

// Scans the fixed UE list from the persistent rotation position for the
// next UE with unmet demand; advances the position past the pick.
int next_rotation_pick(const std::vector<int>& ue_ids, std::size_t& rr_pos,
                       const std::map<int, int>& remaining) {
    const std::size_t n = ue_ids.size();
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t idx = (rr_pos + k) % n;
        auto it = remaining.find(ue_ids[idx]);
        if (it != remaining.end() && it->second > 0) {
            rr_pos = (idx + 1) % n;
            return ue_ids[idx];
        }
    }
    return -1;
}

}  // namespace

ScheduleList TenantScheduler::schedule_multi(const DemandReport& report, int granted_rbs) {
    std::vector<ScheduleEntry> picks;
    int left = granted_rbs;

    // Per sub-slice: remaining per-UE RB demand and this TTI's CQI.
    std::vector<std::map<int, int>> remaining(subslices_.size());
    std::vector<std::map<int, int>> cqi(subslices_.size());
    std::vector<int> rem_total(subslices_.size(), 0);
    for (const auto& sd : report.subslices) {
        for (std::size_t i = 0; i < subslices_.size(); ++i) {
            if (subslices_[i].cfg.subslice_id != sd.subslice_id) continue;
            for (const auto& ud : sd.ues) {
                remaining[i][ud.ue_id] = ud.demand_rbs;
                cqi[i][ud.ue_id] = ud.cqi;
                rem_total[i] += ud.demand_rbs;
            }
        }
    }

    auto emit = [&](std::size_t i) {
        int ue = next_rotation_pick(subslices_[i].ue_ids, subslices_[i].rr_pos, remaining[i]);
        if (ue < 0) {
            rem_total[i] = 0;  // stale total; nothing actually left
            return false;
        }
        --remaining[i][ue];
        --rem_total[i];
        --left;
        picks.push_back(ScheduleEntry{ue, subslices_[i].cfg.subslice_id, 1,
                                      bits_per_rb(cqi[i][ue])});
        return true;
    };

    // Phase 1: GBR sub-slices, one RB at a time, even rotation with ties to
    // the lower subslice_id.
    std::vector<int> served(subslices_.size(), 0);
    while (left > 0) {
        int best = -1;
        for (std::size_t i = 0; i < subslices_.size(); ++i) {
            if (subslices_[i].cfg.service_class != ServiceClass::kGbr || rem_total[i] == 0) {
                continue;
            }
            if (best < 0 || served[i] < served[best]) best = static_cast<int>(i);
        }
        if (best < 0) break;
        if (emit(best)) ++served[best];
    }

    // Phase 2: NonGBR sub-slices by deficit-weighted round robin; counters
    // reset each TTI.
    std::fill(served.begin(), served.end(), 0);
    while (left > 0) {
        int best = -1;
        for (std::size_t i = 0; i < subslices_.size(); ++i) {
            if (subslices_[i].cfg.service_class != ServiceClass::kNonGbr || rem_total[i] == 0) {
                continue;
            }
            if (best < 0) {
                best = static_cast<int>(i);
                continue;
            }
            // served[i]/w[i] < served[best]/w[best], ties keep the lower id
            long long lhs = static_cast<long long>(served[i]) * subslices_[best].cfg.weight;
            long long rhs = static_cast<long long>(served[best]) * subslices_[i].cfg.weight;
            if (lhs < rhs) best = static_cast<int>(i);
        }
        if (best < 0) break;
        if (emit(best)) ++served[best];
    }

    return finalize(std::move(picks));
}

ScheduleList TenantScheduler::schedule_single(const DemandReport& report, int granted_rbs) {
    std::vector<ScheduleEntry> picks;
    int left = granted_rbs;

    std::map<int, int> remaining;
    std::map<int, int> cqi;
    std::map<int, int> subslice_of;
    for (const auto& sd : report.subslices) {
        for (const auto& ud : sd.ues) {
            remaining[ud.ue_id] = ud.demand_rbs;
            cqi[ud.ue_id] = ud.cqi;
            subslice_of[ud.ue_id] = sd.subslice_id;
        }
    }

    while (left > 0) {
        int ue = next_rotation_pick(all_ue_ids_, single_rr_pos_, remaining);
        if (ue < 0) break;
        --remaining[ue];
        --left;
        picks.push_back(ScheduleEntry{ue, subslice_of[ue], 1, bits_per_rb(cqi[ue])});
    }

    return finalize(std::move(picks));
}

ScheduleList TenantScheduler::finalize(std::vector<ScheduleEntry> picks) const {
    ScheduleList list;
    for (const auto& pick : picks) {
        if (!list.entries.empty() && list.entries.back().ue_id == pick.ue_id &&
            list.entries.back().subslice_id == pick.subslice_id) {
            list.entries.back().rb_count += pick.rb_count;
            list.entries.back().bits += pick.bits;
        } else {
            list.entries.push_back(pick);
        }
    }
    return list;
}

void TenantScheduler::on_served(int subslice_id, long long served_bits) {
    for (auto& s : subslices_) {
        if (s.cfg.subslice_id == subslice_id) {
            if (s.cfg.service_class == ServiceClass::kGbr) s.bucket.drain(served_bits);
            return;
        }
    }
    throw std::domain_error("unknown sub-slice " + std::to_string(subslice_id));
}

const GbrBucket* TenantScheduler::bucket(int subslice_id) const {
    for (const auto& s : subslices_) {
        if (s.cfg.subslice_id == subslice_id) {
            return s.cfg.service_class == ServiceClass::kGbr ? &s.bucket : nullptr;
        }
    }
    return nullptr;
}

GbrBucket* TenantScheduler::bucket(int subslice_id) {
    return const_cast<GbrBucket*>(static_cast<const TenantScheduler*>(this)->bucket(subslice_id));
}

}  // namespace slicesim
