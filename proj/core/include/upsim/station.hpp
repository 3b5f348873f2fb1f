#pragma once

#include <deque>
#include <memory>
#include <optional>

#include "upsim/edca.hpp"
#include "upsim/event_queue.hpp"
#include "upsim/medium.hpp"
#include "upsim/metrics.hpp"
#include "upsim/scenario.hpp"
#include "upsim/traffic.hpp"
#include "upsim/uora.hpp"

namespace upsim {

class AccessPoint;

// One non-AP STA: a FIFO of MSDUs fed by its arrival process, an EDCA
// contender for standalone access, and the trigger-based responder state
// (buffer report flag, random-access backoff).
class Station {
 public:
  Station(EventQueue& q, Medium& m, PacketArena& arena, MetricsCollector& metrics,
          const ScenarioConfig& cfg, int aid, bool stochastic);

  void set_ap(AccessPoint* ap) { ap_ = ap; }
  void start_traffic(SimTime horizon);

  int aid() const { return aid_; }
  bool stochastic() const { return stochastic_; }
  int queue_len() const { return static_cast<int>(queue_.size()); }
  long queue_bytes() const { return static_cast<long>(queue_.size()) * cfg_.msdu_bytes; }
  const std::deque<std::uint32_t>& queue() const { return queue_; }
  bool report_pending() const { return pending_report_; }
  const UoraState& uora() const { return uora_; }
  EdcaContender& contender() { return contender_; }

  // --- trigger-based plumbing, driven by the AP ---

  struct BsrPlan {
    bool tx = false;
    bool ra = false;
    int ru = -1;  // random-access choice; polled stations use their grant RU
    long bytes = 0;
  };
  // Response on a dedicated polled RU: always sent, even with nothing queued.
  BsrPlan plan_polled_bsr();
  // Random-access response: runs the OBO procedure iff a report is pending.
  BsrPlan plan_ra_bsr(int n_ra_rus);
  // success means the report went through and the AP's ack came back.
  void on_bsr_outcome(bool success, bool was_ra);

  struct DataPlan {
    bool tx = false;
    std::uint32_t pkt = 0;
    long piggyback_bytes = 0;  // queue occupancy after this MSDU, for the AP table
  };
  DataPlan plan_data();
  void on_data_outcome(bool success, std::uint32_t pkt);

  // --- EDCA path ---
  void on_edca_ack(bool delivered, const std::vector<std::uint32_t>& ids);

  // Scheme hooks.
  void on_gate();  // uora / sa_ofdma: EDCA off for the rest of the run

 private:
  void on_arrival(std::uint32_t id);
  void maybe_start_edca();
  void edca_win();
  void on_edca_data_end(const TxRecord& rec, std::vector<std::uint32_t> ids, long piggyback);
  void hold_off_edca(SimTime until);

  EventQueue& queue_ev_;
  Medium& medium_;
  PacketArena& arena_;
  MetricsCollector& metrics_;
  const ScenarioConfig& cfg_;
  AccessPoint* ap_ = nullptr;

  int aid_;
  bool stochastic_;
  RngStream mac_rng_;
  std::deque<std::uint32_t> queue_;
  bool pending_report_ = false;
  bool edca_busy_ = false;  // a TXOP of ours is on the air or awaiting its ack
  long edca_piggy_ = 0;     // remainder claimed by the EDCA frame in flight
  long ofdma_piggy_ = 0;    // remainder claimed by the last granted data frame
  UoraState uora_;
  EdcaContender contender_;
  std::unique_ptr<TrafficSource> traffic_;
  EventHandle edca_resume_ev_{};
};

}  // namespace upsim
