// stack.hpp -- downlink packet path: slice coordinator routing into the
// per-tenant MAC buffer array, RLC-style segmentation at serve time
#pragma once

#include <deque>
#include <map>
#include <vector>

#include "slicesim/model.hpp"
#include "slicesim/sdu.hpp"

namespace slicesim {

// Queued remainder of one SDU. An SDU enters as a single segment and is
// split when a serve budget ends inside it, so the pieces always partition
// the original size exactly.
struct Segment {
    long long size_bits = 0;
    long arrival_tti = 0;
    bool is_last = true;
};

struct PduChunk {
    long long bits = 0;
    long sdu_arrival_tti = 0;
    bool completes_sdu = false;
};

struct Pdu {
    long long size_bits = 0;
    int ue_id = 0;
    std::vector<PduChunk> chunks;
};

enum class DeliverOutcome { kQueued, kMisroute };

// One sub-slice's queues inside a tenant MAC.
struct UeQueue {
    std::deque<Segment> segments;
    long long backlog_bits = 0;
    long long delivered_bits = 0;
    long long served_bits = 0;
};

// The MAC buffer array fed through the slice coordinator. Every operation
// addresses a single tenant; the tenant MACs never exchange data.
class MacArray {
  public:
    MacArray() = default;
    MacArray(const Scenario& scenario, const Registry& registry);

    // Routes one SDU to its tenant MAC and sub-slice queue. Unknown UEs
    // are dropped and counted.
    DeliverOutcome deliver(const Sdu& sdu);

    long long backlog_bits(int tenant_id, int subslice_id) const;
    long long backlog_bits(int tenant_id, int subslice_id, int ue_id) const;

    // Drains up to budget_bits from the UE's FIFO queue, splitting the last
    // segment if the budget ends inside it. Total returned bits equal
    // min(budget_bits, prior backlog).
    std::vector<Pdu> serve(int tenant_id, int subslice_id, int ue_id, long long budget_bits);

    long long delivered_bits(int tenant_id, int subslice_id) const;
    long long served_bits(int tenant_id, int subslice_id) const;

    // Earliest queued arrival TTI across a sub-slice UE's queue, or -1.
    long head_arrival_tti(int tenant_id, int subslice_id, int ue_id) const;

    int misroute_count() const { return misroute_count_; }
    long long misroute_bits() const { return misroute_bits_; }

  private:
    using UeKey = std::pair<int, int>;  // (subslice_id, ue_id)
    struct TenantMac {
        std::map<UeKey, UeQueue> queues;
    };

    const UeQueue& queue_at(int tenant_id, int subslice_id, int ue_id) const;
    UeQueue& queue_at(int tenant_id, int subslice_id, int ue_id);

    Registry registry_;
    std::map<int, TenantMac> macs_;  // tenant_id -> MAC instance
    int misroute_count_ = 0;
    long long misroute_bits_ = 0;
};

}  // namespace slicesim
