// engine.hpp -- deterministic TTI-stepped simulation loop, metrics
// collection and per-run summaries
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "slicesim/controller.hpp"
#include "slicesim/grid.hpp"
#include "slicesim/model.hpp"
#include "slicesim/scheduler.hpp"
#include "slicesim/stack.hpp"
#include "slicesim/traffic.hpp"

namespace slicesim {

// Internal invariant violation: carries the TTI and a digest of the state
// that tripped it.
class SimAbort : public std::runtime_error {
  public:
    SimAbort(long tti, const std::string& what, const std::string& digest)
        : std::runtime_error("tti " + std::to_string(tti) + ": " + what + " [state " + digest +
                             "]") {}
};

struct SubsliceRecord {
    int tenant_id = 0;
    int subslice_id = 0;
    bool gbr = false;
    int demand_rbs = 0;
    int granted_rbs = 0;  // RBs actually scheduled to this sub-slice
    long long arrived_bits = 0;
    long long served_bits = 0;
    long long backlog_bits = 0;   // at end of TTI
    long long eligible_bits = 0;  // GBR eligibility at demand time
    long long gbr_credit_bits = 0;
    std::vector<long> completed_delays_ms;  // SDUs finishing this TTI

    bool operator==(const SubsliceRecord&) const = default;
};

struct MetricsRecord {
    long tti = 0;
    std::vector<SubsliceRecord> subslices;         // ordered (tenant, subslice)
    std::vector<int> tenant_ids;                   // ascending, aligned with per-tenant vectors
    std::vector<int> tenant_demand_rbs;            // instantaneous report totals
    std::vector<int> tenant_effective_demand_rbs;  // what apportion saw
    std::vector<int> tenant_grant_rbs;
    int assigned_rbs = 0;
    double utilization = 0.0;
    int misroutes = 0;  // cumulative

    bool operator==(const MetricsRecord&) const = default;
};

struct SubsliceSummary {
    int tenant_id = 0;
    int subslice_id = 0;
    double throughput_bps = 0.0;
    std::optional<double> mean_delay_ms;
    std::optional<double> p95_delay_ms;
    std::optional<double> gbr_satisfaction;
    double mean_grant_rbs = 0.0;
};

struct Summary {
    std::vector<SubsliceSummary> subslices;
    std::vector<int> tenant_ids;
    std::vector<double> tenant_mean_grant_rbs;
    double cell_throughput_bps = 0.0;
    std::optional<double> cell_mean_delay_ms;
    std::optional<double> cell_p95_delay_ms;
    double cell_mean_utilization = 0.0;
    long duration_ttis = 0;
    std::uint64_t seed = 0;
    std::string policy;
    int decision_period_ttis = 1;
    int misroutes = 0;
};

struct RunResult {
    std::vector<MetricsRecord> records;
    Summary summary;
};

Summary summarize(const std::vector<MetricsRecord>& records);

// One simulation run. Strictly sequential and a pure function of
// (scenario, policy, seed); every sub-module invariant is re-checked at
// each TTI boundary and violations abort the run.
class Engine {
  public:
    Engine(const Scenario& scenario, SharingPolicy policy, std::uint64_t seed);

    MetricsRecord step_tti();

    long clock() const { return clock_; }
    const MacArray& mac() const { return mac_; }
    const Scenario& scenario() const { return scenario_; }

    // Checks end-of-run bit conservation per (tenant, sub-slice).
    void verify_conservation() const;

    static RunResult run(const Scenario& scenario, SharingPolicy policy, std::uint64_t seed,
                         long duration_ttis);

  private:
    std::string state_digest() const;

    Scenario scenario_;
    SharingPolicy policy_;
    std::uint64_t seed_ = 0;
    long clock_ = 0;

    Registry registry_;
    MacArray mac_;
    Controller controller_;
    std::vector<TenantScheduler> schedulers_;  // by tenant index
    std::vector<TrafficGen> traffic_;          // by ue index (ascending ue_id)
    std::vector<CqiGen> channels_;
};

// Stable digest of a record stream, for determinism checks.
std::uint64_t records_digest(const std::vector<MetricsRecord>& records);

}  // namespace slicesim
