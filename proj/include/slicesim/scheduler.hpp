// scheduler.hpp -- per-tenant MAC scheduling: GBR credit buckets, per-TTI
// demand reports, and RB-granular schedule lists in multi-level or
// single-level mode
#pragma once

#include <map>
#include <vector>

#include "slicesim/model.hpp"
#include "slicesim/stack.hpp"

namespace slicesim {

enum class SlicingLevel { kSingle, kMulti };

// Token bucket enforcing a sub-slice's guaranteed bit rate. Credit is kept
// in millibits so fractional per-TTI accruals stay exact; the cap bounds the
// burst to 20 TTIs worth of credit.
class GbrBucket {
  public:
    GbrBucket() = default;
    explicit GbrBucket(long long gbr_bps)
        : gbr_bps_(gbr_bps), cap_millibits_(gbr_bps * 20) {}

    // One TTI of accrual: credit += gbr_bps / 1000 bits, saturating at cap.
    void accrue();

    // Consumes credit for bits actually served, floored at zero.
    void drain(long long served_bits);

    long long credit_bits() const { return credit_millibits_ / 1000; }
    long long cap_bits() const { return cap_millibits_ / 1000; }

  private:
    long long gbr_bps_ = 0;
    long long cap_millibits_ = 0;
    long long credit_millibits_ = 0;
};

struct UeDemand {
    int ue_id = 0;
    int demand_rbs = 0;
    long long eligible_bits = 0;
    int cqi = 0;
};

struct SubsliceDemand {
    int subslice_id = 0;
    bool gbr = false;
    int demand_rbs = 0;
    long long eligible_bits = 0;
    std::vector<UeDemand> ues;
};

// What one tenant MAC asks the controller for this TTI.
struct DemandReport {
    int tenant_id = 0;
    std::vector<SubsliceDemand> subslices;
    int gbr_demand_rbs = 0;
    int total_demand_rbs = 0;
};

struct ScheduleEntry {
    int ue_id = 0;
    int subslice_id = 0;
    int rb_count = 0;
    long long bits = 0;  // rb_count x bits_per_rb(ue cqi)
};

struct ScheduleList {
    std::vector<ScheduleEntry> entries;
    int total_rbs() const;
};

// Scheduling state of one tenant MAC. Round-robin positions persist across
// TTIs; deficit counters for the weighted phase reset every TTI.
class TenantScheduler {
  public:
    TenantScheduler() = default;
    TenantScheduler(const TenantConfig& tenant, const Scenario& scenario, SlicingLevel level);

    // One TTI of credit accrual for every GBR sub-slice.
    void accrue_all();

    // Demand per sub-slice from current backlogs and the TTI's CQI snapshot.
    // GBR eligibility is min(backlog, credit), apportioned to UEs in FIFO
    // order of their head-of-line arrivals; NonGBR eligibility is backlog.
    // In single-level mode service classes are ignored and every sub-slice
    // is treated as backlog-driven.
    DemandReport compute_demand(const MacArray& mac, const std::map<int, int>& cqi_by_ue) const;

    ScheduleList schedule(const DemandReport& report, int granted_rbs);

    // Multi-level: phase 1 serves GBR sub-slices round-robin up to their
    // demand, phase 2 distributes the rest to NonGBR sub-slices by
    // deficit-weighted round robin (counters reset per TTI, ties to the
    // lower subslice_id).
    ScheduleList schedule_multi(const DemandReport& report, int granted_rbs);

    // Single-level baseline: RB-by-RB round robin over every UE with
    // backlog, blind to service class, credits and weights.
    ScheduleList schedule_single(const DemandReport& report, int granted_rbs);

    // Credit drain for GBR bits actually served this TTI.
    void on_served(int subslice_id, long long served_bits);

    const GbrBucket* bucket(int subslice_id) const;
    GbrBucket* bucket(int subslice_id);

    int tenant_id() const { return tenant_.tenant_id; }

  private:
    struct SubsliceState {
        SubSliceConfig cfg;
        std::vector<int> ue_ids;   // fixed ascending order
        std::size_t rr_pos = 0;    // persistent UE rotation position
        GbrBucket bucket;
    };

    ScheduleList finalize(std::vector<ScheduleEntry> picks) const;

    TenantConfig tenant_;
    SlicingLevel level_ = SlicingLevel::kMulti;
    std::vector<SubsliceState> subslices_;  // ascending subslice_id
    std::vector<int> all_ue_ids_;           // ascending, for single-level rotation
    std::size_t single_rr_pos_ = 0;
};

int rbs_for_bits(long long bits, int bits_per_rb);

}  // namespace slicesim
