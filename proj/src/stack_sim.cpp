#include "uavsim/stack_sim.hpp"

#include <cmath>
#include <deque>
#include <random>
#include <stdexcept>
#include <vector>

#include "uavsim/event_queue.hpp"

namespace uavsim {

namespace {

SimTime to_sim_time(double seconds) {
  return static_cast<SimTime>(std::llround(seconds * static_cast<double>(kNanosPerSecond)));
}

enum class EventKind { packet_arrival, slot_start };

// Arrivals at a slot boundary are visible to that slot.
constexpr int kArrivalPriority = 0;
constexpr int kSlotPriority = 1;

struct Segment {
  std::uint64_t seq = 0;
  std::uint32_t bytes = 0;
};

struct InFlightBlock {
  TransportBlock tb;
  std::vector<Segment> segments;
  std::int64_t due_slot = 0;
};

class UplinkSimulation {
 public:
  explicit UplinkSimulation(const ScenarioConfig& config)
      : cfg_(config),
        tracker_(config.bs_array, config.uav_array, config.beam_update_period),
        shadowing_({config.shadowing_sigma_db, config.shadowing_decorrelation, config.seed}),
        harq_rng_(config.seed ^ 0x9e3779b97f4a7c15ULL),
        bs_frame_(bs_array_frame(config.bs_position, config.trace->centroid())),
        uav_frame_(uav_array_frame()),
        window_ns_(to_sim_time(config.sim_window)),
        slot_ns_(to_sim_time(config.profile.slot_duration)),
        sched_delay_ns_(to_sim_time(config.profile.scheduling_delay)),
        arrival_ns_(inter_arrival(config) * static_cast<double>(kNanosPerSecond)),
        packet_bytes_(static_cast<std::uint32_t>(config.payload_bytes + config.header_bytes)) {
    log_.window = config.sim_window;
  }

  MetricsLog run() {
    if (window_ns_ <= 0) return std::move(log_);
    const auto expected_packets = static_cast<std::size_t>(
        std::ceil(static_cast<double>(window_ns_) / arrival_ns_));
    log_.packets.reserve(expected_packets);
    remaining_.reserve(expected_packets);
    log_.snr_series.reserve(static_cast<std::size_t>(window_ns_ / slot_ns_));

    events_.schedule(0, kArrivalPriority, EventKind::packet_arrival);
    if (slot_ns_ <= window_ns_) events_.schedule(0, kSlotPriority, EventKind::slot_start);
    while (!events_.empty()) {
      const auto e = events_.pop();
      if (e.payload == EventKind::packet_arrival) {
        on_arrival(e.time);
      } else {
        on_slot(e.time);
      }
    }
    // Anything unresolved stays in_flight.
    return std::move(log_);
  }

 private:
  SimTime generation_time(std::uint64_t seq) const {
    return static_cast<SimTime>(std::llround(static_cast<double>(seq) * arrival_ns_));
  }

  void on_arrival(SimTime now) {
    const std::uint64_t seq = log_.packets.size();
    PacketRecord rec;
    rec.seq = seq;
    rec.size_bits = packet_bytes_ * 8;
    rec.t_gen = to_seconds(now);
    if (queued_bytes_ + packet_bytes_ > cfg_.buffer_limit) {
      rec.outcome = PacketOutcome::dropped_buffer;
    } else {
      queue_.push_back(seq);
      queued_bytes_ += packet_bytes_;
    }
    log_.packets.push_back(rec);
    remaining_.push_back(packet_bytes_);

    const SimTime next = generation_time(seq + 1);
    if (next < window_ns_) events_.schedule(next, kArrivalPriority, EventKind::packet_arrival);
  }

  void on_slot(SimTime start) {
    const std::int64_t slot = start / slot_ns_;
    const double t = to_seconds(start);

    const auto ue = state_at(*cfg_.trace, t);
    const Vec3 bs_to_ue = ue.position - cfg_.bs_position;
    const auto gains = tracker_.gains(t, bs_frame_.geometry_toward(bs_to_ue),
                                      uav_frame_.geometry_toward(bs_to_ue * -1.0));
    const auto sample = sample_channel(cfg_.profile.link, ue, cfg_.bs_position, gains.tx_gain_db,
                                       gains.rx_gain_db, shadowing_, t);
    log_.snr_series.push_back(sample);
    const SimTime end = start + slot_ns_;

    if (!harq_.empty() && harq_.front().due_slot == slot) {
      // A pending retransmission takes the whole slot.
      InFlightBlock block = std::move(harq_.front());
      harq_.pop_front();
      transmit(std::move(block), sample.snr_db, slot, end);
    } else if (const auto mcs = select_mcs(cfg_.mcs_table, sample.snr_db)) {
      InFlightBlock block;
      block.tb.mcs = mcs->index;
      block.tb.created_slot = slot;
      fill(block, tb_bits(cfg_.profile, *mcs) / 8, start);
      if (!block.segments.empty()) transmit(std::move(block), sample.snr_db, slot, end);
    }

    if (end + slot_ns_ <= window_ns_) events_.schedule(end, kSlotPriority, EventKind::slot_start);
  }

  // FIFO byte-granular packing of packets whose first-transmission delay has
  // elapsed.
  void fill(InFlightBlock& block, std::int64_t capacity_bytes, SimTime now) {
    while (capacity_bytes > 0 && !queue_.empty()) {
      const std::uint64_t seq = queue_.front();
      if (generation_time(seq) + sched_delay_ns_ > now) break;
      const std::int64_t left = packet_bytes_ - head_offset_;
      const std::int64_t take = std::min(left, capacity_bytes);
      block.segments.push_back({seq, static_cast<std::uint32_t>(take)});
      capacity_bytes -= take;
      queued_bytes_ -= take;
      head_offset_ += take;
      if (head_offset_ == packet_bytes_) {
        queue_.pop_front();
        head_offset_ = 0;
      }
    }
    std::int64_t bytes = 0;
    for (const auto& s : block.segments) bytes += s.bytes;
    block.tb.bits = bytes * 8;
  }

  void transmit(InFlightBlock block, double snr_db, std::int64_t slot, SimTime end) {
    const auto& mcs = cfg_.mcs_table[static_cast<std::size_t>(block.tb.mcs)];
    const double draw = uniform_(harq_rng_);
    const auto decision = harq_step(block.tb, bler(mcs, snr_db), draw, slot,
                                    cfg_.profile.harq_rtt, cfg_.profile.max_harq_tx);
    switch (decision.outcome) {
      case HarqOutcome::delivered:
        for (const auto& s : block.segments) deliver_bytes(s, end);
        break;
      case HarqOutcome::retransmit:
        block.due_slot = decision.slot;
        harq_.push_back(std::move(block));
        break;
      case HarqOutcome::dropped:
        for (const auto& s : block.segments) drop_packet(s.seq);
        break;
    }
  }

  void deliver_bytes(const Segment& s, SimTime end) {
    auto& rec = log_.packets[s.seq];
    auto& left = remaining_[s.seq];
    left -= s.bytes;
    if (left == 0 && rec.outcome == PacketOutcome::in_flight) {
      rec.outcome = PacketOutcome::delivered;
      rec.t_deliver = to_seconds(end);
    }
  }

  void drop_packet(std::uint64_t seq) {
    auto& rec = log_.packets[seq];
    if (rec.outcome != PacketOutcome::in_flight) return;
    rec.outcome = PacketOutcome::dropped_harq;
    // Discard the unsent tail if the packet is still partly queued.
    if (!queue_.empty() && queue_.front() == seq) {
      queued_bytes_ -= packet_bytes_ - head_offset_;
      queue_.pop_front();
      head_offset_ = 0;
    }
  }

  const ScenarioConfig& cfg_;
  BeamTracker tracker_;
  ShadowingField shadowing_;
  std::mt19937_64 harq_rng_;
  std::uniform_real_distribution<double> uniform_{0.0, 1.0};
  ArrayFrame bs_frame_;
  ArrayFrame uav_frame_;
  SimTime window_ns_;
  SimTime slot_ns_;
  SimTime sched_delay_ns_;
  double arrival_ns_;
  std::uint32_t packet_bytes_;

  EventQueue<EventKind> events_;
  MetricsLog log_;
  std::vector<std::uint32_t> remaining_;  // bytes not yet delivered, per packet
  std::deque<std::uint64_t> queue_;
  std::int64_t head_offset_ = 0;
  std::int64_t queued_bytes_ = 0;
  std::deque<InFlightBlock> harq_;  // ordered by due slot
};

}  // namespace

void ScenarioConfig::validate() const {
  if (!trace) throw std::invalid_argument("scenario has no trace");
  profile.validate();
  bs_array.validate();
  uav_array.validate();
  if (!(beam_update_period > 0.0)) throw std::invalid_argument("beam update period must be > 0");
  if (!(source_rate > 0.0)) throw std::invalid_argument("source rate must be > 0");
  if (payload_bytes <= 0) throw std::invalid_argument("payload must be > 0");
  if (header_bytes < 0) throw std::invalid_argument("header overhead must be >= 0");
  if (!(sim_window >= 0.0) || !std::isfinite(sim_window)) {
    throw std::invalid_argument("simulation window must be >= 0");
  }
  if (buffer_limit <= 0) throw std::invalid_argument("buffer limit must be > 0");
  if (!(shadowing_sigma_db >= 0.0)) throw std::invalid_argument("shadowing sigma must be >= 0");
  if (!(shadowing_decorrelation > 0.0)) {
    throw std::invalid_argument("shadowing decorrelation distance must be > 0");
  }
  if (!(bs_position.z >= 0.0)) throw std::invalid_argument("BS height must be >= 0");
  uavsim::validate(mcs_table);
}

double inter_arrival(const ScenarioConfig& config) {
  return static_cast<double>(config.payload_bytes * 8) / config.source_rate;
}

ArrayFrame bs_array_frame(const Vec3& bs_position, const Vec3& mission_centroid) {
  const Vec3 toward = mission_centroid - bs_position;
  if (std::hypot(toward.x, toward.y) < 1.0) return ArrayFrame::facing({1.0, 0.0, 0.0});
  return ArrayFrame::facing(toward);
}

ArrayFrame uav_array_frame() { return ArrayFrame::facing({0.0, 0.0, -1.0}); }

MetricsLog run(const ScenarioConfig& config) {
  config.validate();
  return UplinkSimulation(config).run();
}

}  // namespace uavsim
