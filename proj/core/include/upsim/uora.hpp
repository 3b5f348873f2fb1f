#pragma once

#include "upsim/errors.hpp"
#include "upsim/rng.hpp"

namespace upsim {

struct OcwRange {
  int min = 7;
  int max = 127;
};

// Per-station random-access backoff for trigger-based contention. The OBO
// counter is compared against the number of RA RUs in each eligible trigger
// frame before decrementing: a station whose OBO is already <= the RU count
// transmits in this window and its OBO goes to zero, otherwise OBO drops by
// the RU count and the station stays silent.
class UoraState {
 public:
  UoraState(OcwRange range, RngStream& rng) : range_(range), rng_(rng), ocw_(range.min) {
    obo_ = rng_.uniform_int(0, ocw_);
  }

  // Returns true when this trigger's RA allocation admits a transmission.
  bool on_trigger(int n_ra_rus) {
    if (n_ra_rus < 1) throw InvariantError("on_trigger needs at least one RA RU");
    if (obo_ <= n_ra_rus) {
      obo_ = 0;
      return true;
    }
    obo_ -= n_ra_rus;
    return false;
  }

  // Uniform choice among the RA RUs of the current trigger.
  int pick_ra_ru(int n_ra_rus) { return rng_.uniform_int(0, n_ra_rus - 1); }

  // Outcome of an RA transmission: success resets OCW to its floor, failure
  // doubles it (capped). A fresh OBO is drawn either way.
  void on_tx_result(bool delivered) {
    if (delivered)
      ocw_ = range_.min;
    else
      ocw_ = std::min(2 * ocw_ + 1, range_.max);
    obo_ = rng_.uniform_int(0, ocw_);
  }

  int obo() const { return obo_; }
  int ocw() const { return ocw_; }

 private:
  OcwRange range_;
  RngStream& rng_;
  int ocw_;
  int obo_;
};

}  // namespace upsim
