// model.hpp -- tenants, sub-slices, UEs and the UE routing registry
#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "slicesim/traffic.hpp"

namespace slicesim {

enum class ServiceClass { kGbr, kNonGbr };

struct SubSliceConfig {
    int subslice_id = 0;
    ServiceClass service_class = ServiceClass::kNonGbr;
    long long gbr_bps = 0;  // GBR only
    int weight = 1;         // NonGBR only
};

struct TenantConfig {
    int tenant_id = 0;
    std::string name;
    int dedicated_rbs = 0;
    std::vector<SubSliceConfig> subslices;
};

struct UeConfig {
    int ue_id = 0;
    int tenant_id = 0;
    int subslice_id = 0;
    TrafficSpec traffic;
    ChannelSpec channel;
};

struct Scenario {
    int num_rbs = 25;
    std::vector<TenantConfig> tenants;  // ascending tenant_id after validation
    std::vector<UeConfig> ues;          // ascending ue_id after validation

    const TenantConfig* find_tenant(int tenant_id) const;
    const SubSliceConfig* find_subslice(int tenant_id, int subslice_id) const;
};

// Checks every model invariant and reports all violations, each prefixed
// with the config path it was found at. Empty result means valid; a valid
// scenario is also normalized (tenants/ues sorted by id).
std::vector<std::string> validate_scenario(Scenario& scenario);

struct UeAddress {
    int tenant_id = 0;
    int subslice_id = 0;
    bool operator==(const UeAddress&) const = default;
};

// Destination lookup used by the slice coordinator: ue_id -> (tenant, sub-slice).
class Registry {
  public:
    Registry() = default;
    explicit Registry(const Scenario& scenario);

    // nullopt signals a routing error; callers count the packet as misrouted.
    std::optional<UeAddress> classify(int ue_id) const;

    std::size_t size() const { return by_ue_.size(); }

  private:
    std::map<int, UeAddress> by_ue_;
};

}  // namespace slicesim
