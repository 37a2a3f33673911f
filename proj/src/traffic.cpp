#include "slicesim/traffic.hpp"

#include <cmath>

namespace slicesim {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

long dwell_ttis(double seconds) {
    long t = std::lround(seconds * 1000.0);
    return t < 1 ? 1 : t;
}

}  // namespace

double Rng::next_exp(double mean) {
    return -mean * std::log1p(-next_unit());
}

std::uint64_t mix_seed(std::uint64_t run_seed, std::uint64_t ue_id, std::uint64_t stream_tag) {
    std::uint64_t s = splitmix64(run_seed);
    s = splitmix64(s ^ ue_id);
    return splitmix64(s ^ stream_tag);
}

TrafficGen::TrafficGen(const TrafficSpec& spec, std::uint64_t run_seed, int ue_id)
    : spec_(spec),
      ue_id_(ue_id),
      rng_(mix_seed(run_seed, static_cast<std::uint64_t>(ue_id), 0x74726166ull)) {}

bool TrafficGen::active_at(long tti) const {
    if (tti < spec_.start_tti) return false;
    if (spec_.stop_tti >= 0 && tti >= spec_.stop_tti) return false;
    return true;
}

void TrafficGen::advance_voip_to(long tti, const VoipTraffic& voip) {
    if (!voip_started_) {
        // A call begins talking when its window opens.
        voip_started_ = true;
        voip_on_ = true;
        voip_on_start_ = spec_.start_tti;
        voip_phase_end_ = spec_.start_tti + dwell_ttis(rng_.next_exp(voip.on_mean_s));
    }
    while (tti >= voip_phase_end_) {
        voip_on_ = !voip_on_;
        double mean = voip_on_ ? voip.on_mean_s : voip.off_mean_s;
        if (voip_on_) voip_on_start_ = voip_phase_end_;
        voip_phase_end_ += dwell_ttis(rng_.next_exp(mean));
    }
}

std::vector<Sdu> TrafficGen::arrivals(long tti, long long current_backlog_bits) {
    if (tti == last_tti_) return last_result_;
    last_tti_ = tti;
    last_result_.clear();

    if (active_at(tti)) {
        if (const auto* voip = std::get_if<VoipTraffic>(&spec_.model)) {
            advance_voip_to(tti, *voip);
            if (voip_on_ && (tti - voip_on_start_) % voip->period_ttis == 0) {
                last_result_.push_back({voip->pkt_bits, ue_id_, tti});
            }
        } else if (const auto* cbr = std::get_if<CbrVideoTraffic>(&spec_.model)) {
            if ((tti - spec_.start_tti) % cbr->frame_period_ttis == 0) {
                long long bits = std::llround(static_cast<double>(cbr->rate_bps) *
                                              cbr->frame_period_ttis / 1000.0);
                if (bits > 0) last_result_.push_back({bits, ue_id_, tti});
            }
        } else if (const auto* fb = std::get_if<FullBufferTraffic>(&spec_.model)) {
            long long top_up = fb->target_backlog_bits - current_backlog_bits;
            if (top_up > 0) last_result_.push_back({top_up, ue_id_, tti});
        }
    }
    return last_result_;
}

CqiGen::CqiGen(const ChannelSpec& spec, std::uint64_t run_seed, int ue_id)
    : spec_(spec),
      rng_(mix_seed(run_seed, static_cast<std::uint64_t>(ue_id), 0x63716923ull)),
      current_(0) {
    if (const auto* fixed = std::get_if<FixedCqi>(&spec_.process)) {
        current_ = fixed->cqi;
    } else {
        current_ = std::get<RandomWalkCqi>(spec_.process).start_cqi;
    }
}

int CqiGen::cqi_at(long tti) {
    if (const auto* walk = std::get_if<RandomWalkCqi>(&spec_.process)) {
        while (last_step_tti_ + walk->step_period_ttis <= tti) {
            last_step_tti_ += walk->step_period_ttis;
            int next = current_ + (rng_.next_bool() ? 1 : -1);
            if (next < walk->min_cqi) next = walk->min_cqi;
            if (next > walk->max_cqi) next = walk->max_cqi;
            current_ = next;
        }
    }
    return current_;
}

}  // namespace slicesim
