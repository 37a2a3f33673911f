#include "slicesim/grid.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace slicesim {

bool valid_num_rbs(int num_rbs) {
    return std::find(kValidNumRbs.begin(), kValidNumRbs.end(), num_rbs) != kValidNumRbs.end();
}

int bits_per_rb(int cqi) {
    if (cqi < 1 || cqi > 15) {
        throw std::domain_error("cqi out of range 1..15: " + std::to_string(cqi));
    }
    return static_cast<int>(std::floor(kCqiEfficiency[cqi - 1] * kResourceElementsPerRb));
}

RbMap::RbMap(int num_rbs, long tti) : tti_(tti), slots_(num_rbs) {}

void RbMap::assign_range(const RbOwner& owner, int start, int len) {
    if (start < 0 || len < 0 || start + len > num_rbs()) {
        throw GridBoundsError("rb range [" + std::to_string(start) + "," +
                              std::to_string(start + len) + ") exceeds grid of " +
                              std::to_string(num_rbs()) + " rbs");
    }
    for (int rb = start; rb < start + len; ++rb) {
        if (slots_[rb].has_value()) {
            throw GridConflictError("rb " + std::to_string(rb) + " already assigned at tti " +
                                    std::to_string(tti_));
        }
    }
    for (int rb = start; rb < start + len; ++rb) {
        slots_[rb] = owner;
    }
}

int RbMap::assigned_count() const {
    int n = 0;
    for (const auto& s : slots_) {
        if (s.has_value()) ++n;
    }
    return n;
}

double RbMap::utilization() const {
    if (slots_.empty()) return 0.0;
    return static_cast<double>(assigned_count()) / static_cast<double>(num_rbs());
}

}  // namespace slicesim
