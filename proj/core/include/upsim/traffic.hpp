#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <vector>

#include "upsim/event_queue.hpp"
#include "upsim/rng.hpp"
#include "upsim/sim_time.hpp"

namespace upsim {

struct Packet {
  SimTime generated_us = 0;
  SimTime delivered_us = -1;  // -1 until the first successful delivery
  std::uint32_t id = 0;
  std::uint16_t aid = 0;
  bool stochastic = false;
};

// Flat storage for every packet of a run; ids are indices.
class PacketArena {
 public:
  std::uint32_t create(int aid, bool stochastic, SimTime now) {
    Packet p;
    p.id = static_cast<std::uint32_t>(pkts_.size());
    p.aid = static_cast<std::uint16_t>(aid);
    p.stochastic = stochastic;
    p.generated_us = now;
    pkts_.push_back(p);
    return p.id;
  }

  Packet& at(std::uint32_t id) { return pkts_[id]; }
  const Packet& at(std::uint32_t id) const { return pkts_[id]; }
  std::size_t size() const { return pkts_.size(); }
  const std::vector<Packet>& all() const { return pkts_; }

 private:
  std::vector<Packet> pkts_;
};

// Arrival process for one station. CBR sources tick at a fixed interval from
// a random phase; the stochastic sources draw exponential gaps. Arrivals are
// generated up to (not including) the horizon.
class TrafficSource {
 public:
  using Sink = std::function<void(std::uint32_t)>;

  TrafficSource(EventQueue& q, PacketArena& arena, RngStream rng, int aid, bool stochastic)
      : queue_(q), arena_(arena), rng_(std::move(rng)), aid_(aid), stochastic_(stochastic) {}

  void start_cbr(SimTime interval_us, SimTime horizon, Sink sink) {
    interval_us_ = interval_us;
    poisson_ = false;
    horizon_ = horizon;
    sink_ = std::move(sink);
    schedule(rng_.uniform_int(0, static_cast<int>(interval_us) - 1));
  }

  void start_poisson(double mean_us, SimTime horizon, Sink sink) {
    mean_us_ = mean_us;
    poisson_ = true;
    horizon_ = horizon;
    sink_ = std::move(sink);
    schedule(draw_gap());
  }

  std::int64_t generated() const { return generated_; }

 private:
  SimTime draw_gap() { return static_cast<SimTime>(std::llround(rng_.exponential(mean_us_))); }

  void schedule(SimTime delta) {
    const SimTime t = queue_.now() + delta;
    if (t >= horizon_) return;
    queue_.schedule_at(t, [this] { emit(); });
  }

  void emit() {
    const std::uint32_t id = arena_.create(aid_, stochastic_, queue_.now());
    ++generated_;
    sink_(id);
    schedule(poisson_ ? draw_gap() : interval_us_);
  }

  EventQueue& queue_;
  PacketArena& arena_;
  RngStream rng_;
  int aid_;
  bool stochastic_;
  bool poisson_ = false;
  SimTime interval_us_ = 0;
  double mean_us_ = 0;
  SimTime horizon_ = 0;
  Sink sink_;
  std::int64_t generated_ = 0;
};

}  // namespace upsim
