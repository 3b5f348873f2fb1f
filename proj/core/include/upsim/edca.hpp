#pragma once

#include <functional>

#include "upsim/event_queue.hpp"
#include "upsim/medium.hpp"
#include "upsim/phy.hpp"
#include "upsim/rng.hpp"

namespace upsim {

// Contention parameters for one access category (the study uses AC_VO
// everywhere). aifsn == 0 is the "EDCA disabled" sentinel pushed through the
// MU EDCA Parameter Set.
struct EdcaParams {
  int aifsn = 2;
  int cw_min = 3;
  int cw_max = 7;

  bool disabled() const { return aifsn == 0; }
  SimTime aifs_us(const ProtocolTimings& t) const { return t.sifs_us + aifsn * t.slot_us; }
};

// Single-TXOP contention state machine for one device. The owner calls
// request_access() once per frame it wants to send; when the countdown
// completes, on_win fires and the owner must start its transmission within
// the same event (so that two countdowns expiring at the same instant really
// do collide on the medium).
//
// Freeze rule: backoff decrements once per fully elapsed idle slot after
// AIFS; a busy medium preserves the remaining slots, and the AIFS wait starts
// over at the next idle transition.
class EdcaContender : public MediumListener {
 public:
  EdcaContender(EventQueue& q, Medium& m, RngStream& rng, const ProtocolTimings& t,
                EdcaParams base);
  ~EdcaContender() override;

  void request_access(std::function<void()> on_win);
  // Drops a pending request (frame withdrawn or EDCA turned off mid-wait).
  void abandon();
  // Re-evaluates a paused request, e.g. right after an override expires.
  void poke();

  // Binary exponential backoff bookkeeping: delivered resets CW, a collision
  // doubles it (cw := min(2*cw + 1, cw_max)).
  void on_outcome(bool delivered);

  // MU EDCA Parameter Set override, in force until `until`.
  void apply_override(EdcaParams p, SimTime until);
  EdcaParams effective(SimTime now) const;
  SimTime override_until() const { return override_until_; }

  bool contending() const { return want_; }
  int current_cw() const { return cw_; }
  int retry_count() const { return retry_count_; }

  void on_busy_start(SimTime at) override;
  void on_idle_start(SimTime at) override;

 private:
  void try_arm(SimTime idle_from);
  void fire();

  EventQueue& queue_;
  Medium& medium_;
  RngStream& rng_;
  const ProtocolTimings& t_;
  EdcaParams base_;
  EdcaParams override_params_;
  SimTime override_until_ = -1;

  std::function<void()> on_win_;
  int cw_;
  int retry_count_ = 0;
  int slots_left_ = 0;
  bool want_ = false;
  bool armed_ = false;
  bool subscribed_ = false;
  SimTime anchor_ = 0;  // idle instant the current AIFS wait is measured from
  EventHandle fire_ev_{};
};

}  // namespace upsim
