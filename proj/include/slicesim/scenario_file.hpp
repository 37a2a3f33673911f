// scenario_file.hpp -- sectioned key-value scenario format
//
//   [cell]      num_rbs
//   [sim]       duration_ttis, seed (optional)
//   [policy]    mode (static-single | static-multi | shared-single |
//               shared-multi), decision_period (optional, default 1)
//   [tenant]    id, name (optional), dedicated_rbs
//   [subslice]  id, service_class (gbr | nongbr), gbr_bps | weight;
//               attaches to the most recent [tenant]
//   [ue]        id, tenant, subslice, traffic, channel
//
// traffic:  voip on_mean_s=.. off_mean_s=.. [pkt_bits=320] [period_ttis=20]
//           cbr_video rate_bps=.. [frame_period_ttis=33]
//           fullbuffer target_bits=..
//           any model also takes [start_tti=0] [stop_tti=..]
// channel:  fixed cqi=..
//           randomwalk start_cqi=.. step_period_ttis=.. [min=1] [max=15]
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "slicesim/controller.hpp"
#include "slicesim/model.hpp"

namespace slicesim {

struct ParsedScenario {
    Scenario scenario;
    SharingPolicy policy;
    long duration_ttis = 0;
    std::optional<std::uint64_t> seed;
};

struct ParseResult {
    std::optional<ParsedScenario> value;  // set iff errors is empty
    std::vector<std::string> errors;
};

ParseResult parse_scenario_text(const std::string& text);
ParseResult parse_scenario(const std::string& path);

}  // namespace slicesim
