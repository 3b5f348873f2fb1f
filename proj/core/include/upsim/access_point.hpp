#pragma once

#include <vector>

#include "upsim/a2p.hpp"
#include "upsim/buffer_status.hpp"
#include "upsim/edca.hpp"
#include "upsim/event_queue.hpp"
#include "upsim/medium.hpp"
#include "upsim/scenario.hpp"

namespace upsim {

class Station;

// The AP side: wins one EDCA TXOP per polling exchange, runs the
// BSRP / BSR / BA / Basic-Trigger / data / BA ladder with SIFS gaps, keeps
// the buffer-status table, and acks standalone EDCA uplink.
class AccessPoint {
 public:
  AccessPoint(EventQueue& q, Medium& m, PacketArena& arena, MetricsCollector& metrics,
              const ScenarioConfig& cfg);

  // stations[aid] must be valid for aids 1..n_total; slot 0 unused.
  void set_stations(std::vector<Station*> by_aid) { stations_ = std::move(by_aid); }

  void start();  // schedules the first access attempt at the startup gate

  // A station's EDCA data PPDU was decoded: refresh the table from the
  // piggybacked queue size, admit it to the polling roster, and ack.
  void on_edca_data(int aid, std::vector<std::uint32_t> ids, long piggyback_bytes);

  std::int64_t exchanges() const { return exchanges_; }
  const BufferStatusTable& table() const { return table_; }
  PollingList& polling_list() { return list_; }

 private:
  struct BsrSlot {
    int aid = 0;
    bool ra = false;
    long bytes = 0;
    bool delivered = false;
  };
  struct DataSlot {
    int aid = 0;
    std::uint32_t pkt = 0;
    long piggyback = 0;
    bool delivered = false;
  };

  void request_access();
  void defer(SimTime by);
  void begin_exchange();
  void bsr_phase();
  void bsr_window_end();
  void ba1_end(const TxRecord& rec);
  void basic_phase();
  void data_phase();
  void data_window_end();
  void ba2_end(const TxRecord& rec);

  std::vector<std::pair<int, int>> basic_grants();  // (ru, aid)

  EventQueue& queue_;
  Medium& medium_;
  PacketArena& arena_;
  MetricsCollector& metrics_;
  const ScenarioConfig& cfg_;
  std::vector<Station*> stations_;

  RngStream rng_;
  EdcaContender contender_;
  BufferStatusTable table_;
  RoundRobinCursor bsrp_cursor_;
  RoundRobinCursor fill_cursor_;
  PollingList list_;

  std::int32_t ex_seq_ = 0;
  std::int64_t exchanges_ = 0;
  SimTime data_ppdu_us_;

  // State of the exchange in flight.
  TriggerFrame tf1_;
  bool tf1_ok_ = false;
  bool tf2_ok_ = false;
  std::vector<BsrSlot> bsr_slots_;
  std::vector<std::pair<int, int>> grants2_;
  std::vector<DataSlot> data_slots_;
};

}  // namespace upsim
