#pragma once

#include <cstdint>
#include <functional>
#include <queue>
#include <unordered_set>
#include <vector>

#include "upsim/sim_time.hpp"

namespace upsim {

struct EventHandle {
  std::uint64_t id = 0;
  bool valid() const { return id != 0; }
};

// Calendar-queue event engine. Events at equal timestamps fire in insertion
// order, which makes runs bit-reproducible: no behaviour may depend on heap
// internals.
class EventQueue {
 public:
  using Action = std::function<void()>;

  SimTime now() const { return now_; }

  EventHandle schedule_at(SimTime at, Action action);
  EventHandle schedule_in(SimTime delay, Action action) { return schedule_at(now_ + delay, action); }

  // Lazy cancellation: the entry stays in the heap and is skipped when popped.
  // Cancelling an already-fired or unknown handle is a no-op.
  void cancel(EventHandle h);

  // Runs every event with timestamp <= end, then advances the clock to end.
  void run_until(SimTime end);

  bool empty() const { return live_count_ == 0; }
  std::uint64_t events_executed() const { return executed_; }

 private:
  struct Entry {
    SimTime at;
    std::uint64_t seq;
    Action action;
  };
  struct Later {
    bool operator()(const Entry& a, const Entry& b) const {
      if (a.at != b.at) return a.at > b.at;
      return a.seq > b.seq;
    }
  };

  std::priority_queue<Entry, std::vector<Entry>, Later> heap_;
  std::unordered_set<std::uint64_t> cancelled_;
  SimTime now_ = 0;
  std::uint64_t next_seq_ = 1;
  std::uint64_t live_count_ = 0;
  std::uint64_t executed_ = 0;
};

}  // namespace upsim
