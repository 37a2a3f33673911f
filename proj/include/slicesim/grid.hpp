// grid.hpp -- per-TTI resource grid, CQI table, RB ownership map
#pragma once

#include <array>
#include <optional>
#include <stdexcept>
#include <vector>

namespace slicesim {

inline constexpr int kTtiUs = 1000;
inline constexpr int kResourceElementsPerRb = 168;  // 12 subcarriers x 14 symbols

// Standard 15-entry spectral efficiency table, bits per resource element.
inline constexpr std::array<double, 15> kCqiEfficiency = {
    0.1523, 0.2344, 0.3770, 0.6016, 0.8770, 1.1758, 1.4766, 1.9141,
    2.4063, 2.7305, 3.3223, 3.9023, 4.5234, 5.1152, 5.5547};

inline constexpr std::array<int, 6> kValidNumRbs = {6, 15, 25, 50, 75, 100};

bool valid_num_rbs(int num_rbs);

// Transport capacity of one RB for one TTI at the given CQI.
// Throws std::domain_error outside 1..15.
int bits_per_rb(int cqi);

struct RbOwner {
    int tenant_id = 0;
    int subslice_id = 0;
    int ue_id = 0;
    bool operator==(const RbOwner&) const = default;
};

class GridConflictError : public std::logic_error {
  public:
    using std::logic_error::logic_error;
};

class GridBoundsError : public std::out_of_range {
  public:
    using std::out_of_range::out_of_range;
};

// Ownership of the num_rbs resource blocks of a single TTI.
class RbMap {
  public:
    RbMap(int num_rbs, long tti);

    int num_rbs() const { return static_cast<int>(slots_.size()); }
    long tti() const { return tti_; }
    const std::optional<RbOwner>& slot(int rb) const { return slots_.at(rb); }

    // Marks [start, start+len) as owned. All affected slots must be free.
    void assign_range(const RbOwner& owner, int start, int len);

    int assigned_count() const;
    double utilization() const;

  private:
    long tti_;
    std::vector<std::optional<RbOwner>> slots_;
};

}  // namespace slicesim
