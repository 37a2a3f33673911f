#pragma once

namespace slicesim {

// Payload unit handed down from the IP side, routed to one tenant MAC.
struct Sdu {
    long long size_bits = 0;
    int ue_id = 0;
    long arrival_tti = 0;
};

}  // namespace slicesim
