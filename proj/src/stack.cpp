#include "slicesim/stack.hpp"

#include <stdexcept>
#include <string>

namespace slicesim {

namespace {

std::string key_str(int tenant_id, int subslice_id) {
    return "(" + std::to_string(tenant_id) + ", " + std::to_string(subslice_id) + ")";
}

}  // namespace

MacArray::MacArray(const Scenario& scenario, const Registry& registry) : registry_(registry) {
    for (const auto& tenant : scenario.tenants) {
        macs_[tenant.tenant_id];  // one MAC instance per tenant
    }
    for (const auto& ue : scenario.ues) {
        macs_[ue.tenant_id].queues[{ue.subslice_id, ue.ue_id}];
    }
}

DeliverOutcome MacArray::deliver(const Sdu& sdu) {
    auto addr = registry_.classify(sdu.ue_id);
    if (!addr.has_value()) {
        ++misroute_count_;
        misroute_bits_ += sdu.size_bits;
        return DeliverOutcome::kMisroute;
    }
    UeQueue& q = macs_[addr->tenant_id].queues[{addr->subslice_id, sdu.ue_id}];
    q.segments.push_back(Segment{sdu.size_bits, sdu.arrival_tti, true});
    q.backlog_bits += sdu.size_bits;
    q.delivered_bits += sdu.size_bits;
    return DeliverOutcome::kQueued;
}

const UeQueue& MacArray::queue_at(int tenant_id, int subslice_id, int ue_id) const {
    auto mac = macs_.find(tenant_id);
    if (mac == macs_.end()) {
        throw std::domain_error("unknown tenant " + std::to_string(tenant_id));
    }
    auto q = mac->second.queues.find({subslice_id, ue_id});
    if (q == mac->second.queues.end()) {
        throw std::domain_error("unknown queue " + key_str(tenant_id, subslice_id) + " ue " +
                                std::to_string(ue_id));
    }
    return q->second;
}

UeQueue& MacArray::queue_at(int tenant_id, int subslice_id, int ue_id) {
    return const_cast<UeQueue&>(
        static_cast<const MacArray*>(this)->queue_at(tenant_id, subslice_id, ue_id));
}

long long MacArray::backlog_bits(int tenant_id, int subslice_id) const {
    auto mac = macs_.find(tenant_id);
    if (mac == macs_.end()) {
        throw std::domain_error("unknown tenant " + std::to_string(tenant_id));
    }
    bool found = false;
    long long total = 0;
    for (const auto& [key, q] : mac->second.queues) {
        if (key.first == subslice_id) {
            found = true;
            total += q.backlog_bits;
        }
    }
    if (!found) {
        throw std::domain_error("unknown sub-slice " + key_str(tenant_id, subslice_id));
    }
    return total;
}

long long MacArray::backlog_bits(int tenant_id, int subslice_id, int ue_id) const {
    return queue_at(tenant_id, subslice_id, ue_id).backlog_bits;
}

std::vector<Pdu> MacArray::serve(int tenant_id, int subslice_id, int ue_id,
                                 long long budget_bits) {
    if (budget_bits < 0) {
        throw std::domain_error("negative serve budget");
    }
    UeQueue& q = queue_at(tenant_id, subslice_id, ue_id);

    std::vector<Pdu> pdus;
    if (budget_bits == 0 || q.backlog_bits == 0) return pdus;

    Pdu pdu;
    pdu.ue_id = ue_id;
    long long remaining = budget_bits;
    while (remaining > 0 && !q.segments.empty()) {
        Segment& head = q.segments.front();
        if (head.size_bits <= remaining) {
            pdu.chunks.push_back(PduChunk{head.size_bits, head.arrival_tti, head.is_last});
            pdu.size_bits += head.size_bits;
            remaining -= head.size_bits;
            q.backlog_bits -= head.size_bits;
            q.served_bits += head.size_bits;
            q.segments.pop_front();
        } else {
            // Budget ends inside this segment: emit the served piece and
            // keep the tail (which still ends the SDU) queued.
            pdu.chunks.push_back(PduChunk{remaining, head.arrival_tti, false});
            pdu.size_bits += remaining;
            head.size_bits -= remaining;
            q.backlog_bits -= remaining;
            q.served_bits += remaining;
            remaining = 0;
        }
    }
    pdus.push_back(std::move(pdu));
    return pdus;
}

long long MacArray::delivered_bits(int tenant_id, int subslice_id) const {
    long long total = 0;
    auto mac = macs_.find(tenant_id);
    if (mac == macs_.end()) {
        throw std::domain_error("unknown tenant " + std::to_string(tenant_id));
    }
    for (const auto& [key, q] : mac->second.queues) {
        if (key.first == subslice_id) total += q.delivered_bits;
    }
    return total;
}

long long MacArray::served_bits(int tenant_id, int subslice_id) const {
    long long total = 0;
    auto mac = macs_.find(tenant_id);
    if (mac == macs_.end()) {
        throw std::domain_error("unknown tenant " + std::to_string(tenant_id));
    }
    for (const auto& [key, q] : mac->second.queues) {
        if (key.first == subslice_id) total += q.served_bits;
    }
    return total;
}

long MacArray::head_arrival_tti(int tenant_id, int subslice_id, int ue_id) const {
    const UeQueue& q = queue_at(tenant_id, subslice_id, ue_id);
    if (q.segments.empty()) return -1;
    return q.segments.front().arrival_tti;
}

}  // namespace slicesim
