// traffic.hpp -- seeded traffic generators and channel quality processes
#pragma once

#include <cstdint>
#include <random>
#include <variant>
#include <vector>

#include "slicesim/sdu.hpp"

namespace slicesim {

// Deterministic per-stream RNG. Distribution sampling is done from raw
// 64-bit draws so sequences are stable across standard library versions.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next_u64() { return gen_(); }

    // Uniform in [0, 1), 53 bits of resolution.
    double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    bool next_bool() { return (next_u64() & 1u) != 0; }

    double next_exp(double mean);

  private:
    std::mt19937_64 gen_;
};

// Stable mix of (run_seed, ue_id, stream tag) so every UE owns independent
// substreams and adding a UE never perturbs another UE's draws.
std::uint64_t mix_seed(std::uint64_t run_seed, std::uint64_t ue_id, std::uint64_t stream_tag);

struct VoipTraffic {
    double on_mean_s = 1.0;
    double off_mean_s = 1.0;
    long long pkt_bits = 320;
    int period_ttis = 20;
};

struct CbrVideoTraffic {
    long long rate_bps = 0;
    int frame_period_ttis = 33;
};

struct FullBufferTraffic {
    long long target_backlog_bits = 0;
};

// A traffic model plus the window of TTIs it is active in. stop_tti < 0
// means active until the end of the run.
struct TrafficSpec {
    std::variant<VoipTraffic, CbrVideoTraffic, FullBufferTraffic> model;
    long start_tti = 0;
    long stop_tti = -1;
};

struct FixedCqi {
    int cqi = 7;
};

struct RandomWalkCqi {
    int start_cqi = 7;
    int step_period_ttis = 1;
    int min_cqi = 1;
    int max_cqi = 15;
};

struct ChannelSpec {
    std::variant<FixedCqi, RandomWalkCqi> process;
};

// Per-UE arrival generator. arrivals() must be driven with non-decreasing
// TTIs; repeated calls for the same TTI return the same result.
class TrafficGen {
  public:
    TrafficGen(const TrafficSpec& spec, std::uint64_t run_seed, int ue_id);

    std::vector<Sdu> arrivals(long tti, long long current_backlog_bits);

  private:
    bool active_at(long tti) const;
    void advance_voip_to(long tti, const VoipTraffic& voip);

    TrafficSpec spec_;
    int ue_id_;
    Rng rng_;
    // voip state machine
    bool voip_started_ = false;
    bool voip_on_ = false;
    long voip_phase_end_ = 0;   // first tti of the next dwell
    long voip_on_start_ = 0;
    long last_tti_ = -1;
    std::vector<Sdu> last_result_;
};

// Per-UE channel quality process, held constant between steps.
class CqiGen {
  public:
    CqiGen(const ChannelSpec& spec, std::uint64_t run_seed, int ue_id);

    int cqi_at(long tti);

  private:
    ChannelSpec spec_;
    Rng rng_;
    int current_;
    long last_step_tti_ = 0;
};

}  // namespace slicesim
