#include "upsim/event_queue.hpp"

#include <stdexcept>
#include <utility>

namespace upsim {

EventHandle EventQueue::schedule_at(SimTime at, Action action) {
  if (at < now_) throw std::logic_error("EventQueue: scheduling into the past");
  const std::uint64_t seq = next_seq_++;
  heap_.push(Entry{at, seq, std::move(action)});
  ++live_count_;
  return EventHandle{seq};
}

void EventQueue::cancel(EventHandle h) {
  if (!h.valid()) return;
  if (cancelled_.insert(h.id).second && live_count_ > 0) --live_count_;
}

void EventQueue::run_until(SimTime end) {
  while (!heap_.empty() && heap_.top().at <= end) {
    Entry e = std::move(const_cast<Entry&>(heap_.top()));
    heap_.pop();
    if (auto it = cancelled_.find(e.seq); it != cancelled_.end()) {
      cancelled_.erase(it);
      continue;
    }
    --live_count_;
    now_ = e.at;
    ++executed_;
    e.action();
  }
  if (end > now_) now_ = end;
}

}  // namespace upsim
