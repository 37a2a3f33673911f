#include "slicesim/engine.hpp"

#include <algorithm>
#include <cstdio>
#include <numeric>

namespace slicesim {

namespace {

std::uint64_t fnv1a(std::uint64_t hash, std::uint64_t value) {
    for (int i = 0; i < 8; ++i) {
        hash ^= (value >> (i * 8)) & 0xFFu;
        hash *= 0x100000001B3ull;
    }
    return hash;
}

constexpr std::uint64_t kFnvOffset = 0xCBF29CE484222325ull;

std::optional<double> mean_of(const std::vector<long>& samples) {
    if (samples.empty()) return std::nullopt;
    long long sum = std::accumulate(samples.begin(), samples.end(), 0LL);
    return static_cast<double>(sum) / static_cast<double>(samples.size());
}

std::optional<double> p95_nearest_rank(std::vector<long> samples) {
    if (samples.empty()) return std::nullopt;
    std::sort(samples.begin(), samples.end());
    std::size_t rank = static_cast<std::size_t>(
        std::max<long long>(1, (95LL * static_cast<long long>(samples.size()) + 99) / 100));
    return static_cast<double>(samples[rank - 1]);
}

}  // namespace

Engine::Engine(const Scenario& scenario, SharingPolicy policy, std::uint64_t seed)
    : scenario_(scenario), policy_(policy), seed_(seed), controller_(scenario_, policy) {
    std::vector<std::string> errors = validate_scenario(scenario_);
    if (!errors.empty()) {
        throw std::invalid_argument("invalid scenario: " + errors.front() +
                                    (errors.size() > 1 ? " (+" + std::to_string(errors.size() - 1) +
                                                             " more)"
                                                       : ""));
    }
    registry_ = Registry(scenario_);
    mac_ = MacArray(scenario_, registry_);
    controller_ = Controller(scenario_, policy_);
    for (const auto& tenant : scenario_.tenants) {
        schedulers_.emplace_back(tenant, scenario_, policy_.slicing);
    }
    for (const auto& ue : scenario_.ues) {
        traffic_.emplace_back(ue.traffic, seed_, ue.ue_id);
        channels_.emplace_back(ue.channel, seed_, ue.ue_id);
    }
}

std::string Engine::state_digest() const {
    std::uint64_t h = fnv1a(kFnvOffset, static_cast<std::uint64_t>(clock_));
    for (const auto& tenant : scenario_.tenants) {
        for (const auto& sub : tenant.subslices) {
            h = fnv1a(h, static_cast<std::uint64_t>(
                             mac_.backlog_bits(tenant.tenant_id, sub.subslice_id)));
            h = fnv1a(h, static_cast<std::uint64_t>(
                             mac_.served_bits(tenant.tenant_id, sub.subslice_id)));
        }
    }
    char buf[19];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

MetricsRecord Engine::step_tti() {
    const long tti = clock_;
    const int num_tenants = static_cast<int>(scenario_.tenants.size());

    // (1) traffic arrivals, delivered through the slice coordinator
    std::map<std::pair<int, int>, long long> arrived;
    for (std::size_t i = 0; i < scenario_.ues.size(); ++i) {
        const UeConfig& ue = scenario_.ues[i];
        long long backlog = mac_.backlog_bits(ue.tenant_id, ue.subslice_id, ue.ue_id);
        for (const Sdu& sdu : traffic_[i].arrivals(tti, backlog)) {
            if (mac_.deliver(sdu) == DeliverOutcome::kQueued) {
                arrived[{ue.tenant_id, ue.subslice_id}] += sdu.size_bits;
            }
        }
    }

    // (2) channel quality snapshot
    std::map<int, int> cqi_by_ue;
    for (std::size_t i = 0; i < scenario_.ues.size(); ++i) {
        cqi_by_ue[scenario_.ues[i].ue_id] = channels_[i].cqi_at(tti);
    }

    // (3) GBR credit accrual
    for (auto& sched : schedulers_) sched.accrue_all();

    // (4) per-tenant demand reports
    std::vector<DemandReport> reports;
    for (auto& sched : schedulers_) reports.push_back(sched.compute_demand(mac_, cqi_by_ue));

    // (5) controller decision
    std::vector<int> effective = controller_.effective_demands(tti, reports);
    std::vector<int> dedicated;
    for (const auto& tenant : scenario_.tenants) dedicated.push_back(tenant.dedicated_rbs);
    std::vector<int> grants = apportion(effective, dedicated, scenario_.num_rbs, policy_.mode);
    SharingDecision decision = assign_ranges(tti, grants, scenario_.num_rbs);

    long long grant_sum = std::accumulate(grants.begin(), grants.end(), 0LL);
    if (grant_sum > scenario_.num_rbs) {
        throw SimAbort(tti, "tenant grants exceed the grid", state_digest());
    }

    // (6) per-tenant schedule lists
    std::vector<ScheduleList> schedules;
    for (int t = 0; t < num_tenants; ++t) {
        schedules.push_back(schedulers_[t].schedule(reports[t], grants[t]));
    }

    // realize schedules on the grid
    RbMap rb_map(scenario_.num_rbs, tti);
    for (int t = 0; t < num_tenants; ++t) {
        int cursor = decision.ranges[t].start;
        for (const auto& entry : schedules[t].entries) {
            try {
                rb_map.assign_range(
                    RbOwner{scenario_.tenants[t].tenant_id, entry.subslice_id, entry.ue_id},
                    cursor, entry.rb_count);
            } catch (const std::exception& e) {
                throw SimAbort(tti, e.what(), state_digest());
            }
            cursor += entry.rb_count;
        }
        if (cursor - decision.ranges[t].start > decision.ranges[t].len) {
            throw SimAbort(tti, "schedule overruns tenant grant", state_digest());
        }
    }

    // (7) serve following the schedule lists
    std::map<std::pair<int, int>, long long> served;
    std::map<std::pair<int, int>, std::vector<long>> delays;
    for (int t = 0; t < num_tenants; ++t) {
        const int tenant_id = scenario_.tenants[t].tenant_id;
        for (const auto& entry : schedules[t].entries) {
            for (const Pdu& pdu : mac_.serve(tenant_id, entry.subslice_id, entry.ue_id,
                                             entry.bits)) {
                if (pdu.size_bits > entry.bits) {
                    throw SimAbort(tti, "served bits exceed schedule entry", state_digest());
                }
                served[{tenant_id, entry.subslice_id}] += pdu.size_bits;
                for (const PduChunk& chunk : pdu.chunks) {
                    if (chunk.completes_sdu) {
                        delays[{tenant_id, entry.subslice_id}].push_back(
                            tti - chunk.sdu_arrival_tti + 1);
                    }
                }
                schedulers_[t].on_served(entry.subslice_id, pdu.size_bits);
            }
        }
    }

    // (8) metrics
    MetricsRecord record;
    record.tti = tti;
    for (int t = 0; t < num_tenants; ++t) {
        const TenantConfig& tenant = scenario_.tenants[t];
        for (const auto& sd : reports[t].subslices) {
            SubsliceRecord sr;
            sr.tenant_id = tenant.tenant_id;
            sr.subslice_id = sd.subslice_id;
            sr.gbr = sd.gbr;
            sr.demand_rbs = sd.demand_rbs;
            for (const auto& entry : schedules[t].entries) {
                if (entry.subslice_id == sd.subslice_id) sr.granted_rbs += entry.rb_count;
            }
            auto key = std::make_pair(tenant.tenant_id, sd.subslice_id);
            if (auto it = arrived.find(key); it != arrived.end()) sr.arrived_bits = it->second;
            if (auto it = served.find(key); it != served.end()) sr.served_bits = it->second;
            if (auto it = delays.find(key); it != delays.end()) {
                sr.completed_delays_ms = std::move(it->second);
            }
            sr.backlog_bits = mac_.backlog_bits(tenant.tenant_id, sd.subslice_id);
            sr.eligible_bits = sd.eligible_bits;
            if (const GbrBucket* bucket = schedulers_[t].bucket(sd.subslice_id)) {
                sr.gbr_credit_bits = bucket->credit_bits();
            }
            record.subslices.push_back(std::move(sr));
        }
        record.tenant_ids.push_back(tenant.tenant_id);
        record.tenant_demand_rbs.push_back(reports[t].total_demand_rbs);
        record.tenant_effective_demand_rbs.push_back(effective[t]);
        record.tenant_grant_rbs.push_back(grants[t]);
    }
    record.assigned_rbs = rb_map.assigned_count();
    record.utilization = rb_map.utilization();
    record.misroutes = mac_.misroute_count();

    ++clock_;
    return record;
}

void Engine::verify_conservation() const {
    for (const auto& tenant : scenario_.tenants) {
        for (const auto& sub : tenant.subslices) {
            long long delivered = mac_.delivered_bits(tenant.tenant_id, sub.subslice_id);
            long long served = mac_.served_bits(tenant.tenant_id, sub.subslice_id);
            long long backlog = mac_.backlog_bits(tenant.tenant_id, sub.subslice_id);
            if (delivered != served + backlog) {
                throw SimAbort(clock_, "bit conservation violated for tenant " +
                                           std::to_string(tenant.tenant_id) + " sub-slice " +
                                           std::to_string(sub.subslice_id),
                               state_digest());
            }
        }
    }
}

RunResult Engine::run(const Scenario& scenario, SharingPolicy policy, std::uint64_t seed,
                      long duration_ttis) {
    Engine engine(scenario, policy, seed);
    RunResult result;
    result.records.reserve(static_cast<std::size_t>(duration_ttis));
    for (long t = 0; t < duration_ttis; ++t) {
        result.records.push_back(engine.step_tti());
    }
    engine.verify_conservation();
    result.summary = summarize(result.records);
    result.summary.seed = seed;
    result.summary.policy = policy_to_string(policy);
    result.summary.decision_period_ttis = policy.decision_period_ttis;
    return result;
}

Summary summarize(const std::vector<MetricsRecord>& records) {
    Summary summary;
    summary.duration_ttis = static_cast<long>(records.size());
    if (records.empty()) return summary;

    const double duration_s = static_cast<double>(records.size()) / 1000.0;

    struct Acc {
        long long served = 0;
        long long granted = 0;
        long gbr_ttis = 0;
        long gbr_met_ttis = 0;
        bool gbr = false;
        std::vector<long> delays;
    };
    std::map<std::pair<int, int>, Acc> accs;
    std::map<int, long long> tenant_grants;
    std::vector<long> all_delays;
    long long cell_served = 0;
    double utilization_sum = 0.0;

    for (const auto& record : records) {
        for (const auto& sr : record.subslices) {
            Acc& acc = accs[{sr.tenant_id, sr.subslice_id}];
            acc.served += sr.served_bits;
            acc.granted += sr.granted_rbs;
            acc.gbr = sr.gbr;
            if (sr.gbr && sr.eligible_bits > 0) {
                ++acc.gbr_ttis;
                if (sr.served_bits >= sr.eligible_bits) ++acc.gbr_met_ttis;
            }
            acc.delays.insert(acc.delays.end(), sr.completed_delays_ms.begin(),
                              sr.completed_delays_ms.end());
            all_delays.insert(all_delays.end(), sr.completed_delays_ms.begin(),
                              sr.completed_delays_ms.end());
            cell_served += sr.served_bits;
        }
        utilization_sum += record.utilization;
    }

    for (const auto& [key, acc] : accs) {
        SubsliceSummary ss;
        ss.tenant_id = key.first;
        ss.subslice_id = key.second;
        ss.throughput_bps = static_cast<double>(acc.served) / duration_s;
        ss.mean_delay_ms = mean_of(acc.delays);
        ss.p95_delay_ms = p95_nearest_rank(acc.delays);
        if (acc.gbr && acc.gbr_ttis > 0) {
            ss.gbr_satisfaction =
                static_cast<double>(acc.gbr_met_ttis) / static_cast<double>(acc.gbr_ttis);
        }
        ss.mean_grant_rbs = static_cast<double>(acc.granted) / static_cast<double>(records.size());
        summary.subslices.push_back(ss);
    }

    summary.tenant_ids = records.front().tenant_ids;
    summary.tenant_mean_grant_rbs.assign(summary.tenant_ids.size(), 0.0);
    for (const auto& record : records) {
        for (std::size_t t = 0; t < record.tenant_grant_rbs.size(); ++t) {
            summary.tenant_mean_grant_rbs[t] += record.tenant_grant_rbs[t];
        }
    }
    for (auto& g : summary.tenant_mean_grant_rbs) g /= static_cast<double>(records.size());

    summary.cell_throughput_bps = static_cast<double>(cell_served) / duration_s;
    summary.cell_mean_delay_ms = mean_of(all_delays);
    summary.cell_p95_delay_ms = p95_nearest_rank(all_delays);
    summary.cell_mean_utilization = utilization_sum / static_cast<double>(records.size());
    summary.misroutes = records.back().misroutes;
    return summary;
}

std::uint64_t records_digest(const std::vector<MetricsRecord>& records) {
    std::uint64_t h = kFnvOffset;
    for (const auto& record : records) {
        h = fnv1a(h, static_cast<std::uint64_t>(record.tti));
        h = fnv1a(h, static_cast<std::uint64_t>(record.assigned_rbs));
        for (const auto& sr : record.subslices) {
            h = fnv1a(h, static_cast<std::uint64_t>(sr.tenant_id));
            h = fnv1a(h, static_cast<std::uint64_t>(sr.subslice_id));
            h = fnv1a(h, static_cast<std::uint64_t>(sr.demand_rbs));
            h = fnv1a(h, static_cast<std::uint64_t>(sr.granted_rbs));
            h = fnv1a(h, static_cast<std::uint64_t>(sr.arrived_bits));
            h = fnv1a(h, static_cast<std::uint64_t>(sr.served_bits));
            h = fnv1a(h, static_cast<std::uint64_t>(sr.backlog_bits));
            h = fnv1a(h, static_cast<std::uint64_t>(sr.gbr_credit_bits));
            for (long d : sr.completed_delays_ms) h = fnv1a(h, static_cast<std::uint64_t>(d));
        }
        for (int g : record.tenant_grant_rbs) h = fnv1a(h, static_cast<std::uint64_t>(g));
        for (int d : record.tenant_demand_rbs) h = fnv1a(h, static_cast<std::uint64_t>(d));
    }
    return h;
}

}  // namespace slicesim
