#include "upsim/station.hpp"

#include <string>

#include "upsim/access_point.hpp"
#include "upsim/errors.hpp"

namespace upsim {

Station::Station(EventQueue& q, Medium& m, PacketArena& arena, MetricsCollector& metrics,
                 const ScenarioConfig& cfg, int aid, bool stochastic)
    : queue_ev_(q),
      medium_(m),
      arena_(arena),
      metrics_(metrics),
      cfg_(cfg),
      aid_(aid),
      stochastic_(stochastic),
      mac_rng_(cfg.seed, "sta.mac." + std::to_string(aid)),
      uora_(cfg.ocw, mac_rng_),
      contender_(q, m, mac_rng_, cfg.timings, cfg.edca_vo) {}

void Station::start_traffic(SimTime horizon) {
  traffic_ = std::make_unique<TrafficSource>(
      queue_ev_, arena_, RngStream(cfg_.seed, "sta.arr." + std::to_string(aid_)), aid_,
      stochastic_);
  auto sink = [this](std::uint32_t id) { on_arrival(id); };
  if (stochastic_)
    traffic_->start_poisson(cfg_.exp_mean_s * 1e6, horizon, sink);
  else
    traffic_->start_cbr(cfg_.det_interval_us, horizon, sink);
}

void Station::on_arrival(std::uint32_t id) {
  queue_.push_back(id);
  // Only the empty -> non-empty transition raises the flag: while earlier
  // bytes are still claimed at the AP, polling keeps the report fresh.
  if (queue_.size() == 1) pending_report_ = true;
  maybe_start_edca();
}

void Station::maybe_start_edca() {
  if (queue_.empty() || edca_busy_ || contender_.contending()) return;
  if (contender_.effective(queue_ev_.now()).disabled()) return;
  contender_.request_access([this] { edca_win(); });
}

void Station::edca_win() {
  if (queue_.empty()) return;  // drained by a trigger grant while counting down
  const int max_agg =
      cfg_.scheme == Scheme::kEdca
          ? max_msdus_in_txop(cfg_.timings, cfg_.msdu_bytes, cfg_.mac_overhead_bytes)
          : 1;  // before the gate the hybrid schemes send plain single-MSDU frames
  const int n = std::min<int>(queue_len(), max_agg);
  std::vector<std::uint32_t> ids(queue_.begin(), queue_.begin() + n);
  const long bits = frame_payload_bits(n, cfg_.msdu_bytes, cfg_.mac_overhead_bytes);
  const SimTime dur = ppdu_duration_us(bits, PpduClass::kFullBand, cfg_.timings);
  const long piggy = static_cast<long>(queue_len() - n) * cfg_.msdu_bytes;

  edca_busy_ = true;
  edca_piggy_ = piggy;
  Medium::TxSpec spec;
  spec.kind = TxKind::kEdcaData;
  spec.source_aid = aid_;
  spec.res = Resource::band();
  spec.duration = dur;
  medium_.transmit(spec, [this, ids = std::move(ids), piggy](const TxRecord& rec) {
    on_edca_data_end(rec, ids, piggy);
  });
}

void Station::on_edca_data_end(const TxRecord& rec, std::vector<std::uint32_t> ids,
                               long piggyback) {
  if (rec.outcome == TxOutcome::kDelivered) {
    for (std::uint32_t id : ids) {
      Packet& p = arena_.at(id);
      if (p.delivered_us < 0)
        metrics_.record_delivery(p, rec.end);
      else
        metrics_.note_redundant();  // retransmission after a lost ack
    }
    pending_report_ = false;  // the piggybacked queue size reaches the AP
    ap_->on_edca_data(aid_, std::move(ids), piggyback);
    // edca_busy_ stays set until the ack resolves.
  } else {
    edca_busy_ = false;
    contender_.on_outcome(false);
    maybe_start_edca();
  }
}

void Station::on_edca_ack(bool delivered, const std::vector<std::uint32_t>& ids) {
  edca_busy_ = false;
  if (delivered) {
    for (std::uint32_t id : ids) {
      if (queue_.empty() || queue_.front() != id)
        throw InvariantError("acked frame is not at the head of the queue");
      queue_.pop_front();
    }
    // Bytes that slipped in after a zero-remainder report would otherwise
    // never be announced again.
    if (edca_piggy_ == 0 && !queue_.empty()) pending_report_ = true;
    contender_.on_outcome(true);
    if (cfg_.scheme == Scheme::kA2p) hold_off_edca(queue_ev_.now() + cfg_.mu_edca_window());
  } else {
    // Lost ack: the frames stay queued and go out again; the AP already
    // counted the delivery, so the repeat is flagged redundant above.
    contender_.on_outcome(false);
  }
  maybe_start_edca();
}

Station::BsrPlan Station::plan_polled_bsr() {
  BsrPlan p;
  p.tx = true;
  p.ra = false;
  p.bytes = queue_bytes();
  return p;
}

Station::BsrPlan Station::plan_ra_bsr(int n_ra_rus) {
  BsrPlan p;
  if (!pending_report_) return p;
  if (!uora_.on_trigger(n_ra_rus)) return p;
  p.tx = true;
  p.ra = true;
  p.ru = uora_.pick_ra_ru(n_ra_rus);
  p.bytes = queue_bytes();
  return p;
}

void Station::on_bsr_outcome(bool success, bool was_ra) {
  if (was_ra) uora_.on_tx_result(success);
  if (success) pending_report_ = false;
}

Station::DataPlan Station::plan_data() {
  DataPlan p;
  if (queue_.empty() || edca_busy_) return p;
  p.tx = true;
  p.pkt = queue_.front();
  p.piggyback_bytes = static_cast<long>(queue_len() - 1) * cfg_.msdu_bytes;
  ofdma_piggy_ = p.piggyback_bytes;
  return p;
}

void Station::on_data_outcome(bool success, std::uint32_t pkt) {
  if (!success) return;  // claim persists, the AP will grant again
  if (queue_.empty() || queue_.front() != pkt)
    throw InvariantError("granted frame is not at the head of the queue");
  Packet& p = arena_.at(pkt);
  if (p.delivered_us < 0)
    metrics_.record_delivery(p, queue_ev_.now());
  else
    metrics_.note_redundant();
  queue_.pop_front();
  // The delivered frame doubles as a report: nothing further is pending
  // unless it claimed zero and the queue has since refilled.
  pending_report_ = (ofdma_piggy_ == 0 && !queue_.empty());
  if (queue_.empty() && contender_.contending()) contender_.abandon();
  if (cfg_.scheme == Scheme::kA2p) hold_off_edca(queue_ev_.now() + cfg_.mu_edca_window());
  maybe_start_edca();
}

void Station::hold_off_edca(SimTime until) {
  EdcaParams off = cfg_.edca_vo;
  off.aifsn = 0;
  contender_.apply_override(off, until);
  queue_ev_.cancel(edca_resume_ev_);
  edca_resume_ev_ = queue_ev_.schedule_at(until, [this] {
    contender_.poke();
    maybe_start_edca();
  });
}

void Station::on_gate() {
  EdcaParams off = cfg_.edca_vo;
  off.aifsn = 0;
  contender_.apply_override(off, cfg_.duration_us + 1);
  contender_.abandon();
  queue_ev_.cancel(edca_resume_ev_);
}

}  // namespace upsim
