#include "slicesim/scenario_file.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

namespace slicesim {

namespace {

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

struct Block {
    std::string section;
    int line = 0;
    std::map<std::string, std::string> values;
    std::map<std::string, bool> consumed;
};

// Typed key access over one parsed block, accumulating errors by path.
class BlockReader {
  public:
    BlockReader(Block& block, std::string path, std::vector<std::string>& errors)
        : block_(block), path_(std::move(path)), errors_(errors) {}

    bool has(const std::string& key) const { return block_.values.count(key) > 0; }

    std::optional<std::string> str(const std::string& key, bool required) {
        auto it = block_.values.find(key);
        if (it == block_.values.end()) {
            if (required) errors_.push_back(path_ + "." + key + ": required");
            return std::nullopt;
        }
        block_.consumed[key] = true;
        return it->second;
    }

    std::optional<long long> integer(const std::string& key, bool required) {
        auto raw = str(key, required);
        if (!raw.has_value()) return std::nullopt;
        long long v = 0;
        auto [p, ec] = std::from_chars(raw->data(), raw->data() + raw->size(), v);
        if (ec != std::errc{} || p != raw->data() + raw->size()) {
            errors_.push_back(path_ + "." + key + ": expected integer, got \"" + *raw + "\"");
            return std::nullopt;
        }
        return v;
    }

    std::optional<double> real(const std::string& key, bool required) {
        auto raw = str(key, required);
        if (!raw.has_value()) return std::nullopt;
        double v = 0;
        auto [p, ec] = std::from_chars(raw->data(), raw->data() + raw->size(), v);
        if (ec != std::errc{} || p != raw->data() + raw->size()) {
            errors_.push_back(path_ + "." + key + ": expected number, got \"" + *raw + "\"");
            return std::nullopt;
        }
        return v;
    }

    void finish() {
        for (const auto& [key, value] : block_.values) {
            if (!block_.consumed.count(key)) {
                errors_.push_back(path_ + "." + key + ": unknown key");
            }
        }
    }

  private:
    Block& block_;
    std::string path_;
    std::vector<std::string>& errors_;
};

// key=value word list used by traffic/channel specs.
std::optional<std::map<std::string, std::string>> parse_kv_words(
    const std::vector<std::string>& words, const std::string& path,
    std::vector<std::string>& errors) {
    std::map<std::string, std::string> kv;
    for (const auto& w : words) {
        std::size_t eq = w.find('=');
        if (eq == std::string::npos || eq == 0) {
            errors.push_back(path + ": expected key=value, got \"" + w + "\"");
            return std::nullopt;
        }
        kv[w.substr(0, eq)] = w.substr(eq + 1);
    }
    return kv;
}

class SpecReader {
  public:
    SpecReader(std::map<std::string, std::string> kv, std::string path,
               std::vector<std::string>& errors)
        : kv_(std::move(kv)), path_(std::move(path)), errors_(errors) {}

    std::optional<long long> integer(const std::string& key, bool required,
                                     long long fallback = 0) {
        auto it = kv_.find(key);
        if (it == kv_.end()) {
            if (required) {
                errors_.push_back(path_ + "." + key + ": required");
                return std::nullopt;
            }
            return fallback;
        }
        consumed_[key] = true;
        long long v = 0;
        auto [p, ec] = std::from_chars(it->second.data(), it->second.data() + it->second.size(), v);
        if (ec != std::errc{} || p != it->second.data() + it->second.size()) {
            errors_.push_back(path_ + "." + key + ": expected integer, got \"" + it->second +
                              "\"");
            return std::nullopt;
        }
        return v;
    }

    std::optional<double> real(const std::string& key, bool required, double fallback = 0) {
        auto it = kv_.find(key);
        if (it == kv_.end()) {
            if (required) {
                errors_.push_back(path_ + "." + key + ": required");
                return std::nullopt;
            }
            return fallback;
        }
        consumed_[key] = true;
        double v = 0;
        auto [p, ec] = std::from_chars(it->second.data(), it->second.data() + it->second.size(), v);
        if (ec != std::errc{} || p != it->second.data() + it->second.size()) {
            errors_.push_back(path_ + "." + key + ": expected number, got \"" + it->second + "\"");
            return std::nullopt;
        }
        return v;
    }

    void finish() {
        for (const auto& [key, value] : kv_) {
            if (!consumed_.count(key)) errors_.push_back(path_ + "." + key + ": unknown key");
        }
    }

  private:
    std::map<std::string, std::string> kv_;
    std::map<std::string, bool> consumed_;
    std::string path_;
    std::vector<std::string>& errors_;
};

std::optional<TrafficSpec> parse_traffic(const std::string& raw, const std::string& path,
                                         std::vector<std::string>& errors) {
    std::istringstream in(raw);
    std::string kind;
    in >> kind;
    std::vector<std::string> words;
    for (std::string w; in >> w;) words.push_back(w);
    auto kv = parse_kv_words(words, path, errors);
    if (!kv.has_value()) return std::nullopt;
    SpecReader reader(*kv, path, errors);

    TrafficSpec spec;
    const std::size_t before = errors.size();
    if (kind == "voip") {
        VoipTraffic voip;
        if (auto v = reader.real("on_mean_s", true)) voip.on_mean_s = *v;
        if (auto v = reader.real("off_mean_s", true)) voip.off_mean_s = *v;
        if (auto v = reader.integer("pkt_bits", false, voip.pkt_bits)) voip.pkt_bits = *v;
        if (auto v = reader.integer("period_ttis", false, voip.period_ttis)) {
            voip.period_ttis = static_cast<int>(*v);
        }
        spec.model = voip;
    } else if (kind == "cbr_video") {
        CbrVideoTraffic cbr;
        if (auto v = reader.integer("rate_bps", true)) cbr.rate_bps = *v;
        if (auto v = reader.integer("frame_period_ttis", false, cbr.frame_period_ttis)) {
            cbr.frame_period_ttis = static_cast<int>(*v);
        }
        spec.model = cbr;
    } else if (kind == "fullbuffer") {
        FullBufferTraffic fb;
        if (auto v = reader.integer("target_bits", true)) fb.target_backlog_bits = *v;
        spec.model = fb;
    } else {
        errors.push_back(path + ": unknown traffic model \"" + kind +
                         "\" (valid: voip, cbr_video, fullbuffer)");
        return std::nullopt;
    }
    if (auto v = reader.integer("start_tti", false, 0)) spec.start_tti = *v;
    if (auto v = reader.integer("stop_tti", false, -1)) spec.stop_tti = *v;
    reader.finish();
    return errors.size() == before ? std::optional<TrafficSpec>(spec) : std::nullopt;
}

std::optional<ChannelSpec> parse_channel(const std::string& raw, const std::string& path,
                                         std::vector<std::string>& errors) {
    std::istringstream in(raw);
    std::string kind;
    in >> kind;
    std::vector<std::string> words;
    for (std::string w; in >> w;) words.push_back(w);
    auto kv = parse_kv_words(words, path, errors);
    if (!kv.has_value()) return std::nullopt;
    SpecReader reader(*kv, path, errors);

    ChannelSpec spec;
    const std::size_t before = errors.size();
    if (kind == "fixed") {
        FixedCqi fixed;
        if (auto v = reader.integer("cqi", true)) fixed.cqi = static_cast<int>(*v);
        spec.process = fixed;
    } else if (kind == "randomwalk") {
        RandomWalkCqi walk;
        if (auto v = reader.integer("start_cqi", true)) walk.start_cqi = static_cast<int>(*v);
        if (auto v = reader.integer("step_period_ttis", true)) {
            walk.step_period_ttis = static_cast<int>(*v);
        }
        if (auto v = reader.integer("min", false, walk.min_cqi)) walk.min_cqi = static_cast<int>(*v);
        if (auto v = reader.integer("max", false, walk.max_cqi)) walk.max_cqi = static_cast<int>(*v);
        spec.process = walk;
    } else {
        errors.push_back(path + ": unknown channel process \"" + kind +
                         "\" (valid: fixed, randomwalk)");
        return std::nullopt;
    }
    reader.finish();
    return errors.size() == before ? std::optional<ChannelSpec>(spec) : std::nullopt;
}

}  // namespace

ParseResult parse_scenario_text(const std::string& text) {
    ParseResult result;
    std::vector<std::string>& errors = result.errors;

    static const std::vector<std::string> kSections = {"cell", "sim",      "policy",
                                                       "tenant", "subslice", "ue"};

    // Pass 1: split into blocks.
    std::vector<Block> blocks;
    {
        std::istringstream in(text);
        std::string line;
        int line_no = 0;
        Block* current = nullptr;
        while (std::getline(in, line)) {
            ++line_no;
            if (std::size_t hash = line.find('#'); hash != std::string::npos) {
                line = line.substr(0, hash);
            }
            line = trim(line);
            if (line.empty()) continue;
            if (line.front() == '[') {
                if (line.back() != ']') {
                    errors.push_back("line " + std::to_string(line_no) +
                                     ": unterminated section header");
                    continue;
                }
                std::string name = trim(line.substr(1, line.size() - 2));
                if (std::find(kSections.begin(), kSections.end(), name) == kSections.end()) {
                    errors.push_back("line " + std::to_string(line_no) + ": unknown section [" +
                                     name + "]");
                    current = nullptr;
                    continue;
                }
                blocks.push_back(Block{name, line_no, {}, {}});
                current = &blocks.back();
                continue;
            }
            std::size_t eq = line.find('=');
            if (eq == std::string::npos) {
                errors.push_back("line " + std::to_string(line_no) + ": expected key = value");
                continue;
            }
            if (current == nullptr) {
                errors.push_back("line " + std::to_string(line_no) +
                                 ": key outside of any section");
                continue;
            }
            std::string key = trim(line.substr(0, eq));
            std::string value = trim(line.substr(eq + 1));
            if (key.empty()) {
                errors.push_back("line " + std::to_string(line_no) + ": empty key");
                continue;
            }
            if (!current->values.emplace(key, value).second) {
                errors.push_back("line " + std::to_string(line_no) + ": duplicate key \"" + key +
                                 "\" in [" + current->section + "]");
            }
        }
    }

    // Pass 2: interpret blocks in order.
    ParsedScenario parsed;
    bool saw_cell = false;
    bool saw_sim = false;
    bool saw_policy = false;
    TenantConfig* current_tenant = nullptr;
    int tenant_ordinal = 0;
    int ue_ordinal = 0;

    for (Block& block : blocks) {
        if (block.section == "cell") {
            if (saw_cell) {
                errors.push_back("line " + std::to_string(block.line) + ": duplicate [cell]");
                continue;
            }
            saw_cell = true;
            BlockReader reader(block, "cell", errors);
            if (auto v = reader.integer("num_rbs", true)) {
                parsed.scenario.num_rbs = static_cast<int>(*v);
            }
            reader.finish();
        } else if (block.section == "sim") {
            if (saw_sim) {
                errors.push_back("line " + std::to_string(block.line) + ": duplicate [sim]");
                continue;
            }
            saw_sim = true;
            BlockReader reader(block, "sim", errors);
            if (auto v = reader.integer("duration_ttis", true)) {
                if (*v < 0) {
                    errors.push_back("sim.duration_ttis: must be non-negative");
                } else {
                    parsed.duration_ttis = static_cast<long>(*v);
                }
            }
            if (reader.has("seed")) {
                if (auto v = reader.integer("seed", false)) {
                    parsed.seed = static_cast<std::uint64_t>(*v);
                }
            }
            reader.finish();
        } else if (block.section == "policy") {
            if (saw_policy) {
                errors.push_back("line " + std::to_string(block.line) + ": duplicate [policy]");
                continue;
            }
            saw_policy = true;
            BlockReader reader(block, "policy", errors);
            if (auto mode = reader.str("mode", true)) {
                if (auto policy = policy_from_string(*mode)) {
                    parsed.policy.mode = policy->mode;
                    parsed.policy.slicing = policy->slicing;
                } else {
                    std::string valid;
                    for (const auto& name : kPolicyNames) {
                        valid += valid.empty() ? name : ", " + name;
                    }
                    errors.push_back("policy.mode: invalid value \"" + *mode + "\" (valid: " +
                                     valid + ")");
                }
            }
            if (reader.has("decision_period")) {
                if (auto v = reader.integer("decision_period", false)) {
                    if (*v < 1) {
                        errors.push_back("policy.decision_period: must be >= 1");
                    } else {
                        parsed.policy.decision_period_ttis = static_cast<int>(*v);
                    }
                }
            }
            reader.finish();
        } else if (block.section == "tenant") {
            ++tenant_ordinal;
            const std::string path = "tenant#" + std::to_string(tenant_ordinal);
            BlockReader reader(block, path, errors);
            TenantConfig tenant;
            if (auto v = reader.integer("id", true)) tenant.tenant_id = static_cast<int>(*v);
            if (auto v = reader.str("name", false)) tenant.name = *v;
            if (auto v = reader.integer("dedicated_rbs", true)) {
                tenant.dedicated_rbs = static_cast<int>(*v);
            }
            reader.finish();
            parsed.scenario.tenants.push_back(std::move(tenant));
            current_tenant = &parsed.scenario.tenants.back();
        } else if (block.section == "subslice") {
            if (current_tenant == nullptr) {
                errors.push_back("line " + std::to_string(block.line) +
                                 ": [subslice] outside of any [tenant]");
                continue;
            }
            const std::string path = "tenant#" + std::to_string(tenant_ordinal) + ".subslice#" +
                                     std::to_string(current_tenant->subslices.size() + 1);
            BlockReader reader(block, path, errors);
            SubSliceConfig sub;
            if (auto v = reader.integer("id", true)) sub.subslice_id = static_cast<int>(*v);
            if (auto cls = reader.str("service_class", true)) {
                if (*cls == "gbr") {
                    sub.service_class = ServiceClass::kGbr;
                    if (auto v = reader.integer("gbr_bps", true)) sub.gbr_bps = *v;
                } else if (*cls == "nongbr") {
                    sub.service_class = ServiceClass::kNonGbr;
                    if (reader.has("weight")) {
                        if (auto v = reader.integer("weight", false)) {
                            sub.weight = static_cast<int>(*v);
                        }
                    }
                } else {
                    errors.push_back(path + ".service_class: invalid value \"" + *cls +
                                     "\" (valid: gbr, nongbr)");
                }
            }
            reader.finish();
            current_tenant->subslices.push_back(sub);
        } else if (block.section == "ue") {
            ++ue_ordinal;
            const std::string path = "ue#" + std::to_string(ue_ordinal);
            BlockReader reader(block, path, errors);
            UeConfig ue;
            if (auto v = reader.integer("id", true)) ue.ue_id = static_cast<int>(*v);
            if (auto v = reader.integer("tenant", true)) ue.tenant_id = static_cast<int>(*v);
            if (auto v = reader.integer("subslice", true)) ue.subslice_id = static_cast<int>(*v);
            if (auto raw = reader.str("traffic", true)) {
                if (auto spec = parse_traffic(*raw, path + ".traffic", errors)) {
                    ue.traffic = *spec;
                }
            }
            if (auto raw = reader.str("channel", true)) {
                if (auto spec = parse_channel(*raw, path + ".channel", errors)) {
                    ue.channel = *spec;
                }
            }
            reader.finish();
            parsed.scenario.ues.push_back(std::move(ue));
        }
    }

    if (!saw_cell) errors.push_back("cell.num_rbs: required");
    if (!saw_sim) errors.push_back("sim.duration_ttis: required");
    if (!saw_policy) errors.push_back("policy.mode: required");

    if (errors.empty()) result.value = std::move(parsed);
    return result;
}

ParseResult parse_scenario(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        ParseResult result;
        result.errors.push_back("cannot open scenario file: " + path);
        return result;
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_scenario_text(buf.str());
}

}  // namespace slicesim
