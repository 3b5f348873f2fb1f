#include "upsim/edca.hpp"

#include <algorithm>

namespace upsim {

EdcaContender::EdcaContender(EventQueue& q, Medium& m, RngStream& rng,
                             const ProtocolTimings& t, EdcaParams base)
    : queue_(q), medium_(m), rng_(rng), t_(t), base_(base), cw_(base.cw_min) {}

EdcaContender::~EdcaContender() {
  if (subscribed_) medium_.unsubscribe(this);
}

EdcaParams EdcaContender::effective(SimTime now) const {
  if (override_until_ >= 0 && now < override_until_) return override_params_;
  return base_;
}

void EdcaContender::request_access(std::function<void()> on_win) {
  if (effective(queue_.now()).disabled())
    throw InvariantError("request_access while EDCA is disabled (aifsn == 0)");
  on_win_ = std::move(on_win);
  if (want_) return;  // countdown already in progress, keep its state
  want_ = true;
  slots_left_ = rng_.uniform_int(0, cw_);
  if (!subscribed_) {
    medium_.subscribe(this);
    subscribed_ = true;
  }
  try_arm(queue_.now());
}

void EdcaContender::abandon() {
  if (armed_) queue_.cancel(fire_ev_);
  armed_ = false;
  want_ = false;
  on_win_ = nullptr;
  if (subscribed_) {
    medium_.unsubscribe(this);
    subscribed_ = false;
  }
}

void EdcaContender::on_outcome(bool delivered) {
  if (delivered) {
    cw_ = base_.cw_min;
    retry_count_ = 0;
  } else {
    cw_ = std::min(2 * cw_ + 1, base_.cw_max);
    ++retry_count_;
  }
}

void EdcaContender::apply_override(EdcaParams p, SimTime until) {
  override_params_ = p;
  override_until_ = until;
  if (effective(queue_.now()).disabled() && armed_) {
    // Pause the countdown; remaining slots survive until re-enabled.
    queue_.cancel(fire_ev_);
    armed_ = false;
  }
}

void EdcaContender::poke() { try_arm(queue_.now()); }

void EdcaContender::try_arm(SimTime idle_from) {
  if (!want_ || armed_) return;
  const SimTime now = queue_.now();
  if (effective(now).disabled()) return;
  if (medium_.busy_now()) return;  // on_idle_start will re-enter
  anchor_ = std::max(idle_from, now);
  const SimTime fire_at = anchor_ + effective(now).aifs_us(t_) + SimTime(slots_left_) * t_.slot_us;
  armed_ = true;
  fire_ev_ = queue_.schedule_at(fire_at, [this] { fire(); });
}

void EdcaContender::fire() {
  armed_ = false;
  want_ = false;
  slots_left_ = 0;
  if (subscribed_) {
    medium_.unsubscribe(this);
    subscribed_ = false;
  }
  auto cb = std::move(on_win_);
  on_win_ = nullptr;
  if (cb) cb();
}

void EdcaContender::on_busy_start(SimTime at) {
  if (!armed_) return;
  const SimTime aifs_done = anchor_ + effective(at).aifs_us(t_);
  const SimTime fire_at = aifs_done + SimTime(slots_left_) * t_.slot_us;
  if (fire_at <= at) {
    // The countdown expires at this very instant: the frame goes out anyway
    // and collides with whatever just started. Leave the event armed.
    return;
  }
  SimTime consumed = 0;
  if (at > aifs_done) consumed = (at - aifs_done) / t_.slot_us;
  consumed = std::min<SimTime>(consumed, slots_left_);
  slots_left_ -= static_cast<int>(consumed);
  queue_.cancel(fire_ev_);
  armed_ = false;
}

void EdcaContender::on_idle_start(SimTime at) { try_arm(at); }

}  // namespace upsim
