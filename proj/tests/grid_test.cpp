#include <doctest.h>

#include <cmath>
#include <vector>

#include "slicesim/grid.hpp"

using namespace slicesim;

TEST_CASE("bits_per_rb matches the floored AMC table") {
    CHECK(bits_per_rb(1) == 25);    // floor(0.1523 * 168)
    CHECK(bits_per_rb(7) == 248);   // floor(1.4766 * 168)
    CHECK(bits_per_rb(15) == 933);  // floor(5.5547 * 168)

    for (int cqi = 1; cqi <= 15; ++cqi) {
        int expected = static_cast<int>(std::floor(kCqiEfficiency[cqi - 1] * 168.0));
        CHECK(bits_per_rb(cqi) == expected);
    }
}

TEST_CASE("bits_per_rb is monotone non-decreasing") {
    for (int cqi = 2; cqi <= 15; ++cqi) {
        CHECK(bits_per_rb(cqi) >= bits_per_rb(cqi - 1));
    }
}

TEST_CASE("bits_per_rb rejects out-of-range cqi") {
    CHECK_THROWS_AS(bits_per_rb(0), std::domain_error);
    CHECK_THROWS_AS(bits_per_rb(16), std::domain_error);
    CHECK_THROWS_AS(bits_per_rb(-3), std::domain_error);
}

TEST_CASE("valid_num_rbs accepts only the standard grid sizes") {
    for (int n : kValidNumRbs) CHECK(valid_num_rbs(n));
    CHECK_FALSE(valid_num_rbs(0));
    CHECK_FALSE(valid_num_rbs(24));
    CHECK_FALSE(valid_num_rbs(101));
}

TEST_CASE("assign_range marks exactly the requested slots") {
    RbMap map(25, 0);
    RbOwner x{1, 2, 7};
    map.assign_range(x, 0, 10);
    for (int rb = 0; rb < 10; ++rb) {
        REQUIRE(map.slot(rb).has_value());
        CHECK(*map.slot(rb) == x);
    }
    for (int rb = 10; rb < 25; ++rb) CHECK_FALSE(map.slot(rb).has_value());
}

TEST_CASE("assign_range rejects overlap and keeps the map unchanged") {
    RbMap map(25, 0);
    map.assign_range(RbOwner{1, 1, 1}, 0, 10);
    CHECK_THROWS_AS(map.assign_range(RbOwner{2, 1, 2}, 5, 3), GridConflictError);
    CHECK(map.assigned_count() == 10);
    CHECK(*map.slot(5) == RbOwner{1, 1, 1});
}

TEST_CASE("assign_range rejects out-of-bounds ranges") {
    RbMap map(25, 0);
    CHECK_THROWS_AS(map.assign_range(RbOwner{1, 1, 1}, 20, 10), GridBoundsError);
    CHECK(map.assigned_count() == 0);
}

TEST_CASE("utilization spans empty to full") {
    RbMap empty(25, 0);
    CHECK(empty.utilization() == doctest::Approx(0.0));

    RbMap full(25, 0);
    full.assign_range(RbOwner{1, 1, 1}, 0, 25);
    CHECK(full.utilization() == doctest::Approx(1.0));

    RbMap partial(25, 0);
    partial.assign_range(RbOwner{1, 1, 1}, 0, 20);
    CHECK(partial.utilization() == doctest::Approx(0.8));
}

TEST_CASE("no slot ever carries two owners under random assignment") {
    // Deterministic probe: mix valid and conflicting ranges and confirm
    // every slot keeps its first owner.
    RbMap map(50, 3);
    unsigned state = 12345;
    auto next = [&state]() {
        state = state * 1664525u + 1013904223u;
        return state >> 16;
    };
    std::vector<int> owner_of(50, -1);
    for (int i = 0; i < 200; ++i) {
        int start = static_cast<int>(next() % 50);
        int len = static_cast<int>(next() % 8);
        if (start + len > 50) len = 50 - start;
        bool free = true;
        for (int rb = start; rb < start + len; ++rb) free = free && owner_of[rb] < 0;
        if (free) {
            map.assign_range(RbOwner{i, 0, 0}, start, len);
            for (int rb = start; rb < start + len; ++rb) owner_of[rb] = i;
        } else if (len > 0) {
            CHECK_THROWS_AS(map.assign_range(RbOwner{i, 0, 0}, start, len), GridConflictError);
        }
    }
    for (int rb = 0; rb < 50; ++rb) {
        if (owner_of[rb] >= 0) {
            REQUIRE(map.slot(rb).has_value());
            CHECK(map.slot(rb)->tenant_id == owner_of[rb]);
        } else {
            CHECK_FALSE(map.slot(rb).has_value());
        }
    }
    CHECK(map.utilization() >= 0.0);
    CHECK(map.utilization() <= 1.0);
}
