#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "upsim/errors.hpp"
#include "upsim/sim_time.hpp"
#include "upsim/traffic.hpp"

namespace upsim {

// Box-plot statistics with linearly interpolated quantiles (the convention
// numpy calls "linear"). n == 0 leaves the values meaningless; callers must
// check.
struct DelaySummary {
  std::size_t n = 0;
  double mean = 0;
  double median = 0;
  double q1 = 0;
  double q3 = 0;
  double min = 0;
  double max = 0;
};

DelaySummary summarize(std::vector<double> values);
double quantile_sorted(const std::vector<double>& sorted, double p);

struct SampleRow {
  std::uint32_t packet_id = 0;
  int aid = 0;
  SimTime generated_us = 0;
  SimTime delivered_us = 0;
};

// Records first deliveries and keeps the per-packet delay samples that feed
// the result tables. Recording the same packet twice is a hard bug: callers
// that can legitimately see a retransmission of an already delivered packet
// (a lost ack forces one) must check delivered_us themselves and call
// note_redundant() instead.
class MetricsCollector {
 public:
  MetricsCollector(SimTime warmup_end, bool exclude_warmup, bool capture_rows)
      : warmup_end_(warmup_end), exclude_warmup_(exclude_warmup), capture_rows_(capture_rows) {}

  void record_delivery(Packet& p, SimTime now) {
    if (p.delivered_us >= 0)
      throw InvariantError("packet " + std::to_string(p.id) + " delivered twice");
    p.delivered_us = now;
    ++delivered_;
    if (p.stochastic) {
      ++stoch_delivered_;
      if (!exclude_warmup_ || p.generated_us >= warmup_end_) {
        stoch_delays_us_.push_back(now - p.generated_us);
        if (capture_rows_) rows_.push_back({p.id, p.aid, p.generated_us, now});
      }
    }
  }

  void note_redundant() { ++redundant_; }

  std::int64_t delivered() const { return delivered_; }
  std::int64_t stoch_delivered() const { return stoch_delivered_; }
  std::int64_t redundant() const { return redundant_; }
  SimTime warmup_end() const { return warmup_end_; }
  std::vector<SimTime>& stoch_delays_us() { return stoch_delays_us_; }
  std::vector<SampleRow>& rows() { return rows_; }

 private:
  SimTime warmup_end_;
  bool exclude_warmup_;
  bool capture_rows_;
  std::int64_t delivered_ = 0;
  std::int64_t stoch_delivered_ = 0;
  std::int64_t redundant_ = 0;
  std::vector<SimTime> stoch_delays_us_;
  std::vector<SampleRow> rows_;
};

}  // namespace upsim
