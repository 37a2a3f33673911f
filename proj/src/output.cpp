#include "slicesim/output.hpp"

#include <array>
#include <charconv>
#include <fstream>

#include <json.hpp>

namespace slicesim {

namespace {

std::string opt_str(const std::optional<double>& v) {
    return v.has_value() ? format_double(*v) : "";
}

std::string summary_row(const SubsliceSummary& ss) {
    return std::to_string(ss.tenant_id) + "," + std::to_string(ss.subslice_id) + "," +
           format_double(ss.throughput_bps) + "," + opt_str(ss.mean_delay_ms) + "," +
           opt_str(ss.p95_delay_ms) + "," + opt_str(ss.gbr_satisfaction) + "," +
           format_double(ss.mean_grant_rbs);
}

std::string summary_cell_row(const Summary& summary) {
    return std::string("cell,-,") + format_double(summary.cell_throughput_bps) + "," +
           opt_str(summary.cell_mean_delay_ms) + "," + opt_str(summary.cell_p95_delay_ms) +
           ",," + format_double(summary.cell_mean_utilization);
}

nlohmann::json traffic_json(const TrafficSpec& spec) {
    nlohmann::json j;
    if (const auto* voip = std::get_if<VoipTraffic>(&spec.model)) {
        j["model"] = "voip";
        j["on_mean_s"] = voip->on_mean_s;
        j["off_mean_s"] = voip->off_mean_s;
        j["pkt_bits"] = voip->pkt_bits;
        j["period_ttis"] = voip->period_ttis;
    } else if (const auto* cbr = std::get_if<CbrVideoTraffic>(&spec.model)) {
        j["model"] = "cbr_video";
        j["rate_bps"] = cbr->rate_bps;
        j["frame_period_ttis"] = cbr->frame_period_ttis;
    } else if (const auto* fb = std::get_if<FullBufferTraffic>(&spec.model)) {
        j["model"] = "fullbuffer";
        j["target_bits"] = fb->target_backlog_bits;
    }
    j["start_tti"] = spec.start_tti;
    if (spec.stop_tti >= 0) j["stop_tti"] = spec.stop_tti;
    return j;
}

nlohmann::json channel_json(const ChannelSpec& spec) {
    nlohmann::json j;
    if (const auto* fixed = std::get_if<FixedCqi>(&spec.process)) {
        j["process"] = "fixed";
        j["cqi"] = fixed->cqi;
    } else if (const auto* walk = std::get_if<RandomWalkCqi>(&spec.process)) {
        j["process"] = "randomwalk";
        j["start_cqi"] = walk->start_cqi;
        j["step_period_ttis"] = walk->step_period_ttis;
        j["min"] = walk->min_cqi;
        j["max"] = walk->max_cqi;
    }
    return j;
}

}  // namespace

std::string format_double(double value) {
    std::array<char, 64> buf;
    auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value,
                                   std::chars_format::fixed);
    return std::string(buf.data(), end);
}

std::string summary_csv(const Summary& summary) {
    std::string out =
        "tenant,subslice,throughput_bps,mean_delay_ms,p95_delay_ms,gbr_satisfaction,"
        "mean_grant_rbs\n";
    for (const auto& ss : summary.subslices) {
        out += summary_row(ss);
        out += "\n";
    }
    out += summary_cell_row(summary);
    out += "\n";
    return out;
}

std::string timeline_csv(const std::vector<MetricsRecord>& records) {
    std::string out = "tti,tenant,subslice,demand_rbs,granted_rbs,served_bits,backlog_bits\n";
    for (const auto& record : records) {
        long long demand_total = 0;
        long long served_total = 0;
        long long backlog_total = 0;
        for (const auto& sr : record.subslices) {
            out += std::to_string(record.tti) + "," + std::to_string(sr.tenant_id) + "," +
                   std::to_string(sr.subslice_id) + "," + std::to_string(sr.demand_rbs) + "," +
                   std::to_string(sr.granted_rbs) + "," + std::to_string(sr.served_bits) + "," +
                   std::to_string(sr.backlog_bits) + "\n";
            served_total += sr.served_bits;
            backlog_total += sr.backlog_bits;
        }
        for (int d : record.tenant_demand_rbs) demand_total += d;
        out += std::to_string(record.tti) + ",cell,-," + std::to_string(demand_total) + "," +
               std::to_string(record.assigned_rbs) + "," + std::to_string(served_total) + "," +
               std::to_string(backlog_total) + "\n";
    }
    return out;
}

std::string compare_csv(const std::vector<std::pair<std::string, Summary>>& by_policy) {
    std::string out =
        "policy,tenant,subslice,throughput_bps,mean_delay_ms,p95_delay_ms,gbr_satisfaction,"
        "mean_grant_rbs\n";
    for (const auto& [policy, summary] : by_policy) {
        for (const auto& ss : summary.subslices) {
            out += policy + "," + summary_row(ss) + "\n";
        }
        out += policy + "," + summary_cell_row(summary) + "\n";
    }
    return out;
}

std::string run_json(const ParsedScenario& parsed, const SharingPolicy& policy,
                     std::uint64_t seed, long duration_ttis) {
    nlohmann::json j;
    j["version"] = "0.1.0";
    j["seed"] = seed;
    j["policy"] = policy_to_string(policy);
    j["decision_period_ttis"] = policy.decision_period_ttis;
    j["duration_ttis"] = duration_ttis;

    nlohmann::json scenario;
    scenario["num_rbs"] = parsed.scenario.num_rbs;
    scenario["tenants"] = nlohmann::json::array();
    for (const auto& tenant : parsed.scenario.tenants) {
        nlohmann::json t;
        t["id"] = tenant.tenant_id;
        t["name"] = tenant.name;
        t["dedicated_rbs"] = tenant.dedicated_rbs;
        t["subslices"] = nlohmann::json::array();
        for (const auto& sub : tenant.subslices) {
            nlohmann::json s;
            s["id"] = sub.subslice_id;
            if (sub.service_class == ServiceClass::kGbr) {
                s["service_class"] = "gbr";
                s["gbr_bps"] = sub.gbr_bps;
            } else {
                s["service_class"] = "nongbr";
                s["weight"] = sub.weight;
            }
            t["subslices"].push_back(s);
        }
        scenario["tenants"].push_back(t);
    }
    scenario["ues"] = nlohmann::json::array();
    for (const auto& ue : parsed.scenario.ues) {
        nlohmann::json u;
        u["id"] = ue.ue_id;
        u["tenant"] = ue.tenant_id;
        u["subslice"] = ue.subslice_id;
        u["traffic"] = traffic_json(ue.traffic);
        u["channel"] = channel_json(ue.channel);
        scenario["ues"].push_back(u);
    }
    j["scenario"] = scenario;
    return j.dump(2) + "\n";
}

void write_text_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot write " + path.string());
    }
    out << content;
}

void write_bundle(const std::filesystem::path& dir, const ParsedScenario& parsed,
                  const SharingPolicy& policy, std::uint64_t seed, const RunResult& result) {
    std::filesystem::create_directories(dir);
    write_text_file(dir / "summary.csv", summary_csv(result.summary));
    write_text_file(dir / "timeline.csv", timeline_csv(result.records));
    write_text_file(dir / "run.json",
                    run_json(parsed, policy, seed, result.summary.duration_ttis));
}

}  // namespace slicesim
