#include "upsim/medium.hpp"

#include <algorithm>

namespace upsim {

std::uint64_t Medium::transmit(const TxSpec& spec, TxCallback done) {
  const SimTime now = queue_.now();
  Active a;
  a.rec.id = next_id_++;
  a.rec.kind = spec.kind;
  a.rec.source_aid = spec.source_aid;
  a.rec.res = spec.res;
  a.rec.start = now;
  a.rec.end = now + spec.duration;
  a.rec.exchange_id = spec.exchange_id;
  a.rec.phase = spec.phase;
  a.done = std::move(done);

  // Mark collisions against everything still on the air. Records whose end
  // equals `now` are over (half-open interval) even if their end event has
  // not popped yet in this timestamp batch.
  for (Active& other : active_) {
    if (other.rec.end > now && other.rec.res.conflicts(a.rec.res)) {
      other.rec.outcome = TxOutcome::kCollided;
      a.rec.outcome = TxOutcome::kCollided;
    }
  }

  const bool was_idle = active_.empty();
  const std::uint64_t id = a.rec.id;
  active_.push_back(std::move(a));
  queue_.schedule_in(spec.duration, [this, id] { finish(id); });

  if (was_idle) {
    // Snapshot: a listener reacting to busy-start must not mutate the list
    // mid-iteration.
    auto snapshot = listeners_;
    for (MediumListener* l : snapshot) l->on_busy_start(now);
  }
  return id;
}

void Medium::finish(std::uint64_t id) {
  auto it = std::find_if(active_.begin(), active_.end(),
                         [id](const Active& a) { return a.rec.id == id; });
  if (it == active_.end()) return;

  TxRecord rec = it->rec;
  TxCallback done = std::move(it->done);
  *it = std::move(active_.back());
  active_.pop_back();

  if (rec.outcome == TxOutcome::kPending) rec.outcome = TxOutcome::kDelivered;
  if (rec.outcome == TxOutcome::kCollided) ++collided_count_;
  if (logging_) log_.push_back(rec);

  if (active_.empty()) {
    idle_since_ = queue_.now();
    auto snapshot = listeners_;
    for (MediumListener* l : snapshot) l->on_idle_start(queue_.now());
  }
  if (done) done(rec);
}

void Medium::subscribe(MediumListener* l) {
  if (std::find(listeners_.begin(), listeners_.end(), l) == listeners_.end())
    listeners_.push_back(l);
}

void Medium::unsubscribe(MediumListener* l) {
  listeners_.erase(std::remove(listeners_.begin(), listeners_.end(), l), listeners_.end());
}

}  // namespace upsim
