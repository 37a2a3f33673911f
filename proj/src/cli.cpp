#include "slicesim/cli.hpp"

#include <charconv>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "slicesim/engine.hpp"
#include "slicesim/output.hpp"
#include "slicesim/scenario_file.hpp"

namespace slicesim {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitRuntime = 1;
constexpr int kExitInvalidScenario = 2;

void print_errors(const std::vector<std::string>& errors) {
    for (const auto& e : errors) std::cerr << "error: " << e << "\n";
}

// Loads and validates, printing every problem on stderr.
std::optional<ParsedScenario> load_scenario(const std::string& path) {
    ParseResult parsed = parse_scenario(path);
    if (!parsed.value.has_value()) {
        print_errors(parsed.errors);
        return std::nullopt;
    }
    std::vector<std::string> errors = validate_scenario(parsed.value->scenario);
    if (!errors.empty()) {
        print_errors(errors);
        return std::nullopt;
    }
    return parsed.value;
}

// Default-seed resolution: an explicit --seed wins, then RANSLICE_SEED,
// then the scenario file, then 1.
std::optional<std::uint64_t> resolve_seed(const std::optional<std::uint64_t>& cli_seed,
                                          const std::optional<std::uint64_t>& file_seed) {
    if (cli_seed.has_value()) return cli_seed;
    if (const char* env = std::getenv("RANSLICE_SEED")) {
        std::uint64_t v = 0;
        std::string s(env);
        auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc{} || p != s.data() + s.size()) {
            std::cerr << "error: RANSLICE_SEED: expected integer, got \"" << s << "\"\n";
            return std::nullopt;
        }
        return v;
    }
    if (file_seed.has_value()) return file_seed;
    return 1;
}

std::vector<std::string> split_csv_list(const std::string& list) {
    std::vector<std::string> out;
    std::istringstream in(list);
    std::string item;
    while (std::getline(in, item, ',')) {
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

int cmd_run(const std::string& scenario_path, const std::optional<std::uint64_t>& cli_seed,
            const std::string& out_dir) {
    auto parsed = load_scenario(scenario_path);
    if (!parsed.has_value()) return kExitInvalidScenario;
    auto seed = resolve_seed(cli_seed, parsed->seed);
    if (!seed.has_value()) return kExitInvalidScenario;

    try {
        RunResult result = Engine::run(parsed->scenario, parsed->policy, *seed,
                                       parsed->duration_ttis);
        write_bundle(out_dir, *parsed, parsed->policy, *seed, result);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntime;
    }
    std::cout << "wrote " << out_dir << "/summary.csv, timeline.csv, run.json\n";
    return kExitOk;
}

int cmd_compare(const std::string& scenario_path, const std::string& policies_arg,
                const std::optional<std::uint64_t>& cli_seed, const std::string& out_dir) {
    auto parsed = load_scenario(scenario_path);
    if (!parsed.has_value()) return kExitInvalidScenario;

    std::vector<std::string> names = split_csv_list(policies_arg);
    if (names.empty()) {
        std::cerr << "error: --policies: at least one policy required\n";
        return kExitInvalidScenario;
    }
    std::vector<SharingPolicy> policies;
    for (const auto& name : names) {
        auto policy = policy_from_string(name);
        if (!policy.has_value()) {
            std::string valid;
            for (const auto& n : kPolicyNames) valid += valid.empty() ? n : ", " + n;
            std::cerr << "error: --policies: invalid value \"" << name << "\" (valid: " << valid
                      << ")\n";
            return kExitInvalidScenario;
        }
        policy->decision_period_ttis = parsed->policy.decision_period_ttis;
        policies.push_back(*policy);
    }

    auto seed = resolve_seed(cli_seed, parsed->seed);
    if (!seed.has_value()) return kExitInvalidScenario;

    try {
        std::vector<std::pair<std::string, Summary>> by_policy;
        for (std::size_t i = 0; i < policies.size(); ++i) {
            RunResult result = Engine::run(parsed->scenario, policies[i], *seed,
                                           parsed->duration_ttis);
            write_bundle(std::filesystem::path(out_dir) / names[i], *parsed, policies[i], *seed,
                         result);
            by_policy.emplace_back(names[i], result.summary);
        }
        write_text_file(std::filesystem::path(out_dir) / "compare.csv", compare_csv(by_policy));
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntime;
    }
    std::cout << "wrote " << out_dir << "/compare.csv (+" << policies.size()
              << " per-policy bundles)\n";
    return kExitOk;
}

int cmd_validate(const std::string& scenario_path) {
    auto parsed = load_scenario(scenario_path);
    if (!parsed.has_value()) return kExitInvalidScenario;
    std::size_t subslices = 0;
    for (const auto& tenant : parsed->scenario.tenants) subslices += tenant.subslices.size();
    std::cout << "scenario OK: " << parsed->scenario.tenants.size() << " tenant(s), " << subslices
              << " sub-slice(s), " << parsed->scenario.ues.size() << " ue(s)\n";
    return kExitOk;
}

}  // namespace

int execute(const std::vector<std::string>& args) {
    CLI::App app{"multi-tenant radio cell slicing simulator"};
    app.require_subcommand(1);

    std::string scenario_path;
    std::string out_dir = "out";
    std::string policies_arg;
    std::optional<std::uint64_t> seed;

    CLI::App* run = app.add_subcommand("run", "simulate one scenario and write a result bundle");
    run->add_option("--scenario", scenario_path, "scenario file")->required();
    run->add_option("--seed", seed, "run seed (default: RANSLICE_SEED, then the scenario file)");
    run->add_option("--out", out_dir, "output directory (default: out)");

    CLI::App* compare = app.add_subcommand(
        "compare", "run several policies on one scenario with the same seed");
    compare->add_option("--scenario", scenario_path, "scenario file")->required();
    compare->add_option("--policies", policies_arg, "comma-separated policy list")->required();
    compare->add_option("--seed", seed, "run seed shared by all policies");
    compare->add_option("--out", out_dir, "output directory")->required();

    CLI::App* validate = app.add_subcommand("validate", "check a scenario file and exit");
    validate->add_option("--scenario", scenario_path, "scenario file")->required();

    std::vector<const char*> argv;
    argv.push_back("slicesim");
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitRuntime;
    }

    if (run->parsed()) return cmd_run(scenario_path, seed, out_dir);
    if (compare->parsed()) return cmd_compare(scenario_path, policies_arg, seed, out_dir);
    if (validate->parsed()) return cmd_validate(scenario_path);
    return kExitRuntime;
}

}  // namespace slicesim
