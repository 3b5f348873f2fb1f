#pragma once

#include <map>
#include <vector>

#include "upsim/sim_time.hpp"

namespace upsim {

// AP-side roster of stations considered active for aging-based polling.
// A station enters (or refreshes) when the AP decodes an uplink data frame
// from it, and silently drops out once `window` elapses without another one.
// Selection rotates: each pick starts where the previous one left off, so a
// roster larger than the RU budget is served across consecutive exchanges.
class PollingList {
 public:
  explicit PollingList(SimTime window) : window_(window) {}

  void on_uplink_data(int aid, SimTime now) { expires_[aid] = now + window_; }

  bool active(int aid, SimTime now) const {
    auto it = expires_.find(aid);
    return it != expires_.end() && now < it->second;
  }

  void prune(SimTime now) {
    for (auto it = expires_.begin(); it != expires_.end();) {
      if (now >= it->second)
        it = expires_.erase(it);
      else
        ++it;
    }
  }

  // Up to k active aids in ascending-aid rotation order.
  std::vector<int> select(SimTime now, int k);

  size_t active_count(SimTime now) {
    prune(now);
    return expires_.size();
  }

  SimTime window() const { return window_; }

 private:
  SimTime window_;
  std::map<int, SimTime> expires_;
  int cursor_ = 0;  // next pick starts at the first active aid >= cursor_
};

}  // namespace upsim
