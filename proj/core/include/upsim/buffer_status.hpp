#pragma once

#include <utility>
#include <vector>

#include "upsim/sim_time.hpp"

namespace upsim {

enum class TriggerKind { kBsrp, kBasic };

// Contents of a trigger frame as scheduled by the AP. Per-station grants sit
// on the low RU indices; the last ra_rus RUs are open for random access.
struct TriggerFrame {
  TriggerKind kind = TriggerKind::kBsrp;
  int ra_rus = 0;
  std::vector<std::pair<int, int>> grants;  // (ru index, aid)
};

struct BufferReport {
  long bytes = 0;
  SimTime stamp = -1;  // last report instant, -1 while nothing was ever heard
};

// The AP's view of station queues, fed by explicit reports and by the queue
// size piggybacked on delivered data frames.
class BufferStatusTable {
 public:
  explicit BufferStatusTable(int max_aid) : rows_(static_cast<size_t>(max_aid) + 1) {}

  void update(int aid, long bytes, SimTime at) {
    rows_[static_cast<size_t>(aid)] = BufferReport{bytes, at};
  }

  const BufferReport& get(int aid) const { return rows_[static_cast<size_t>(aid)]; }

  // Up to k aids with a positive outstanding claim, oldest report first
  // (ties broken by aid). When `allowed` is non-empty, only aids flagged
  // in it are considered.
  std::vector<int> claimants(int k, const std::vector<char>& allowed = {}) const;

 private:
  std::vector<BufferReport> rows_;
};

// Ring walker over aids [first, last]. BSRP polling advances by exactly the
// number of slots handed out; the scheduler's filler additionally skips aids
// that already hold a grant.
class RoundRobinCursor {
 public:
  RoundRobinCursor(int first_aid, int last_aid) : first_(first_aid), last_(last_aid), next_(first_aid) {}

  int ring_size() const { return last_ - first_ + 1; }

  // k consecutive ring members starting at the cursor; cursor moves past them.
  std::vector<int> take(int k);

  // Up to k ring members not flagged in `skip`, scanning at most one full
  // lap. The cursor moves past every aid examined, taken or skipped.
  std::vector<int> take_skipping(int k, const std::vector<char>& skip);

  int peek() const { return next_; }

 private:
  void advance() { next_ = (next_ == last_) ? first_ : next_ + 1; }

  int first_;
  int last_;
  int next_;
};

}  // namespace upsim
