#include <doctest.h>

#include <string>

#include "slicesim/model.hpp"
#include "test_scenarios.hpp"

using namespace slicesim;
using namespace slicesim::testutil;

namespace {

bool has_error_containing(const std::vector<std::string>& errors, const std::string& needle) {
    for (const auto& e : errors) {
        if (e.find(needle) != std::string::npos) return true;
    }
    return false;
}

}  // namespace

TEST_CASE("two tenants splitting the grid 13/12 validate cleanly") {
    Scenario s = two_tenant_scenario();
    CHECK(validate_scenario(s).empty());
}

TEST_CASE("dedicated shares must sum to the grid size") {
    Scenario s = two_tenant_scenario();
    s.tenants[1].dedicated_rbs = 13;  // 13 + 13 = 26 on a 25-RB grid
    auto errors = validate_scenario(s);
    REQUIRE_FALSE(errors.empty());
    CHECK(has_error_containing(errors, "dedicated shares sum 26 != 25"));
}

TEST_CASE("duplicate ue_id names both definitions") {
    Scenario s = two_tenant_scenario();
    s.ues.push_back(make_ue(7, 2, 1, full_buffer(1000), fixed_cqi(7)));
    auto errors = validate_scenario(s);
    REQUIRE_FALSE(errors.empty());
    CHECK(has_error_containing(errors, "duplicate ue_id 7"));
    CHECK(has_error_containing(errors, "#1"));
    CHECK(has_error_containing(errors, "#2"));
}

TEST_CASE("gbr sub-slice without a rate is rejected") {
    Scenario s = two_tenant_scenario();
    s.tenants[0].subslices.push_back(gbr_subslice(2, 0));
    auto errors = validate_scenario(s);
    CHECK(has_error_containing(errors, "gbr_bps"));
}

TEST_CASE("unknown tenant or sub-slice references are rejected") {
    Scenario s = two_tenant_scenario();
    s.ues.push_back(make_ue(42, 5, 1, full_buffer(1000), fixed_cqi(7)));
    s.ues.push_back(make_ue(43, 1, 9, full_buffer(1000), fixed_cqi(7)));
    auto errors = validate_scenario(s);
    CHECK(has_error_containing(errors, "ue[42]: unknown tenant/subslice reference"));
    CHECK(has_error_containing(errors, "ue[43]: unknown tenant/subslice reference"));
}

TEST_CASE("every violation is reported, not just the first") {
    Scenario s = two_tenant_scenario();
    s.tenants[0].dedicated_rbs = 14;                          // sum 26
    s.tenants[0].subslices.push_back(gbr_subslice(3, 0));     // missing rate
    s.ues.push_back(make_ue(9, 1, 1, full_buffer(1000), fixed_cqi(7)));  // duplicate
    auto errors = validate_scenario(s);
    CHECK(errors.size() >= 3);
}

TEST_CASE("validation is idempotent") {
    Scenario s = two_tenant_scenario();
    REQUIRE(validate_scenario(s).empty());
    CHECK(validate_scenario(s).empty());
}

TEST_CASE("validation normalizes tenant and ue order") {
    Scenario s = two_tenant_scenario();
    std::swap(s.tenants[0], s.tenants[1]);
    std::swap(s.ues[0], s.ues[1]);
    REQUIRE(validate_scenario(s).empty());
    CHECK(s.tenants[0].tenant_id == 1);
    CHECK(s.tenants[1].tenant_id == 2);
    CHECK(s.ues[0].ue_id == 7);
    CHECK(s.ues[1].ue_id == 9);
}

TEST_CASE("classify performs an exact registry lookup") {
    Scenario s = two_tenant_scenario();
    REQUIRE(validate_scenario(s).empty());
    Registry reg(s);

    auto addr = reg.classify(7);
    REQUIRE(addr.has_value());
    CHECK(*addr == UeAddress{1, 1});

    CHECK_FALSE(reg.classify(999).has_value());
}

TEST_CASE("classify is total over declared UEs") {
    Scenario s = two_tenant_scenario();
    REQUIRE(validate_scenario(s).empty());
    Registry reg(s);
    for (const auto& ue : s.ues) {
        auto addr = reg.classify(ue.ue_id);
        REQUIRE(addr.has_value());
        CHECK(addr->tenant_id == ue.tenant_id);
        CHECK(addr->subslice_id == ue.subslice_id);
    }
}

TEST_CASE("single-target scenario classifies every ue to the one sub-slice") {
    Scenario s;
    s.num_rbs = 25;
    TenantConfig t;
    t.tenant_id = 3;
    t.dedicated_rbs = 25;
    t.subslices = {nongbr_subslice(4)};
    s.tenants = {t};
    s.ues = {make_ue(1, 3, 4, full_buffer(1000), fixed_cqi(7)),
             make_ue(2, 3, 4, full_buffer(1000), fixed_cqi(7))};
    REQUIRE(validate_scenario(s).empty());
    Registry reg(s);
    for (const auto& ue : s.ues) {
        CHECK(*reg.classify(ue.ue_id) == UeAddress{3, 4});
    }
}
