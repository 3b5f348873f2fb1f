#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "upsim/edca.hpp"
#include "upsim/medium.hpp"
#include "upsim/metrics.hpp"
#include "upsim/phy.hpp"
#include "upsim/sim_time.hpp"
#include "upsim/uora.hpp"

namespace upsim {

enum class Scheme { kEdca, kSaOfdma, kUora, kA2p };

const char* to_string(Scheme s);
Scheme scheme_from_string(const std::string& s);  // throws ConfigError

// Everything one run needs. Durations are microseconds unless named
// otherwise. A value of -1 on the optional knobs means "scheme default".
struct ScenarioConfig {
  Scheme scheme = Scheme::kUora;
  int n_stochastic = 10;
  int n_deterministic = 9;
  int ra_rus = 5;  // BSRP random-access RUs; forced to 0 for sa_ofdma/a2p
  OcwRange ocw{7, 127};
  double exp_mean_s = 0.1;  // stochastic inter-arrival mean, seconds
  SimTime det_interval_us = 2080;
  int msdu_bytes = 1700;
  int mac_overhead_bytes = 30;

  SimTime duration_us = seconds(30);
  SimTime startup_gate_us = millis(100);
  SimTime warmup_extra_us = seconds(4);
  bool exclude_warmup = true;

  SimTime ari_us = -1;            // gap between exchanges; default 16, a2p 128
  SimTime a2p_window_us = -1;     // polling-list expiry; default 8 TU
  SimTime mu_edca_window_us = -1; // per-delivery EDCA holdoff (a2p); default 8 TU

  EdcaParams edca_vo{2, 3, 7};
  ProtocolTimings timings{};
  int bandwidth_mhz = 20;
  int ru_tones = 26;

  std::uint64_t seed = 1;

  int total_rus() const { return ru_count(bandwidth_mhz, ru_tones); }
  int n_total() const { return n_deterministic + n_stochastic; }
  // Random access only exists in the uora scheme; elsewhere the knob is inert.
  int effective_ra() const { return scheme == Scheme::kUora ? ra_rus : 0; }
  SimTime ari() const {
    if (ari_us >= 0) return ari_us;
    return scheme == Scheme::kA2p ? 128 : 16;
  }
  SimTime a2p_window() const { return a2p_window_us >= 0 ? a2p_window_us : 8 * kTimeUnitUs; }
  SimTime mu_edca_window() const {
    return mu_edca_window_us >= 0 ? mu_edca_window_us : 8 * kTimeUnitUs;
  }
  SimTime warmup_end() const { return startup_gate_us + warmup_extra_us; }
  SimTime data_ppdu_us() const {
    return ppdu_duration_us(frame_payload_bits(1, msdu_bytes, mac_overhead_bytes),
                            PpduClass::kPerRu, timings);
  }

  void validate() const;  // throws ConfigError
  std::string to_json() const;
  static ScenarioConfig from_json(const std::string& text);  // partial keys over defaults
};

struct RunCapture {
  bool samples = false;
  bool tx_log = false;
};

struct RunResult {
  std::int64_t generated = 0;
  std::int64_t stoch_generated = 0;
  std::int64_t delivered = 0;
  std::int64_t stoch_delivered = 0;
  std::int64_t duplicates = 0;
  std::int64_t queued_at_end = 0;
  std::vector<SimTime> stoch_delays_us;  // per spec, warm-up generation excluded
  std::vector<SampleRow> samples;
  double throughput_pps = 0;  // all first deliveries over the full run
  std::uint64_t transmissions = 0;
  std::uint64_t collisions = 0;
  std::int64_t exchanges = 0;
  SimTime duration_us = 0;
  SimTime warmup_end_us = 0;
  std::vector<TxRecord> tx_log;

  double mean_delay_us() const;  // 0 when no samples
};

RunResult run_scenario(const ScenarioConfig& cfg, const RunCapture& capture = {});

}  // namespace upsim
