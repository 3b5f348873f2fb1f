#include "upsim/access_point.hpp"

#include <algorithm>

#include "upsim/station.hpp"

namespace upsim {

AccessPoint::AccessPoint(EventQueue& q, Medium& m, PacketArena& arena, MetricsCollector& metrics,
                         const ScenarioConfig& cfg)
    : queue_(q),
      medium_(m),
      arena_(arena),
      metrics_(metrics),
      cfg_(cfg),
      rng_(cfg.seed, "ap"),
      contender_(q, m, rng_, cfg.timings, cfg.edca_vo),
      table_(cfg.n_total()),
      bsrp_cursor_(1, cfg.n_total()),
      fill_cursor_(1, cfg.n_total()),
      list_(cfg.a2p_window()),
      data_ppdu_us_(cfg.data_ppdu_us()) {}

void AccessPoint::start() {
  if (cfg_.scheme == Scheme::kEdca) return;  // pure contention, no trigger plane
  queue_.schedule_at(cfg_.startup_gate_us, [this] { request_access(); });
}

void AccessPoint::request_access() {
  contender_.request_access([this] { begin_exchange(); });
}

void AccessPoint::defer(SimTime by) {
  queue_.schedule_in(by, [this] { request_access(); });
}

// Won the channel: put the BSRP trigger on the air. The ladder that follows
// is pinned to the trigger by SIFS gaps, so only this first frame can ever
// meet a colliding EDCA transmission.
void AccessPoint::begin_exchange() {
  const SimTime now = queue_.now();
  tf1_ = TriggerFrame{};
  tf1_.kind = TriggerKind::kBsrp;
  tf1_.ra_rus = cfg_.effective_ra();

  if (cfg_.scheme == Scheme::kA2p) {
    std::vector<int> polled = list_.select(now, cfg_.total_rus());
    if (polled.empty()) {
      // Nobody on the roster: hold off and look again, without transmitting.
      defer(cfg_.ari());
      return;
    }
    for (size_t i = 0; i < polled.size(); ++i)
      tf1_.grants.emplace_back(static_cast<int>(i), polled[i]);
  } else {
    const int sa_n = cfg_.total_rus() - tf1_.ra_rus;
    std::vector<int> polled = bsrp_cursor_.take(sa_n);
    for (size_t i = 0; i < polled.size(); ++i)
      tf1_.grants.emplace_back(static_cast<int>(i), polled[i]);
  }

  ++ex_seq_;
  Medium::TxSpec spec;
  spec.kind = TxKind::kTriggerBsrp;
  spec.source_aid = 0;
  spec.res = Resource::band();
  spec.duration = cfg_.timings.trigger_us;
  spec.exchange_id = ex_seq_;
  spec.phase = ExchangePhase::kBsrpTf;
  medium_.transmit(spec, [this](const TxRecord& rec) {
    tf1_ok_ = rec.outcome == TxOutcome::kDelivered;
    contender_.on_outcome(tf1_ok_);
    queue_.schedule_in(cfg_.timings.sifs_us, [this] { bsr_phase(); });
  });
}

void AccessPoint::bsr_phase() {
  bsr_slots_.clear();
  const int ra = tf1_.ra_rus;
  const int sa_n = cfg_.total_rus() - ra;

  if (tf1_ok_) {
    std::vector<char> polled(static_cast<size_t>(cfg_.n_total()) + 1, 0);
    for (const auto& [ru, aid] : tf1_.grants) polled[static_cast<size_t>(aid)] = 1;

    for (const auto& [ru, aid] : tf1_.grants) {
      Station::BsrPlan plan = stations_[static_cast<size_t>(aid)]->plan_polled_bsr();
      if (!plan.tx) continue;
      bsr_slots_.push_back({aid, false, plan.bytes, false});
      const size_t idx = bsr_slots_.size() - 1;
      Medium::TxSpec spec;
      spec.kind = TxKind::kBsr;
      spec.source_aid = aid;
      spec.res = Resource::on_ru(ru);
      spec.duration = cfg_.timings.bsr_us;
      spec.exchange_id = ex_seq_;
      spec.phase = ExchangePhase::kBsr;
      medium_.transmit(spec, [this, idx](const TxRecord& rec) {
        bsr_slots_[idx].delivered = rec.outcome == TxOutcome::kDelivered;
      });
    }

    if (ra > 0) {
      // Every station that was not polled runs the RA backoff against this
      // trigger, whether or not it ends up transmitting.
      for (int aid = 1; aid <= cfg_.n_total(); ++aid) {
        if (polled[static_cast<size_t>(aid)]) continue;
        Station::BsrPlan plan = stations_[static_cast<size_t>(aid)]->plan_ra_bsr(ra);
        if (!plan.tx) continue;
        bsr_slots_.push_back({aid, true, plan.bytes, false});
        const size_t idx = bsr_slots_.size() - 1;
        Medium::TxSpec spec;
        spec.kind = TxKind::kBsr;
        spec.source_aid = aid;
        spec.res = Resource::on_ru(sa_n + plan.ru);
        spec.duration = cfg_.timings.bsr_us;
        spec.exchange_id = ex_seq_;
        spec.phase = ExchangePhase::kBsr;
        medium_.transmit(spec, [this, idx](const TxRecord& rec) {
          bsr_slots_[idx].delivered = rec.outcome == TxOutcome::kDelivered;
        });
      }
    }
  }
  // The report window is reserved whether anyone used it or not.
  queue_.schedule_in(cfg_.timings.bsr_us, [this] { bsr_window_end(); });
}

void AccessPoint::bsr_window_end() {
  const SimTime now = queue_.now();
  for (const BsrSlot& s : bsr_slots_) {
    if (s.delivered) table_.update(s.aid, s.bytes, now);
    stations_[static_cast<size_t>(s.aid)]->on_bsr_outcome(s.delivered, s.ra);
  }
  queue_.schedule_in(cfg_.timings.sifs_us, [this] {
    Medium::TxSpec spec;
    spec.kind = TxKind::kBlockAck;
    spec.source_aid = 0;
    spec.res = Resource::band();
    spec.duration = cfg_.timings.msta_ba_us;
    spec.exchange_id = ex_seq_;
    spec.phase = ExchangePhase::kBsrAck;
    medium_.transmit(spec, [this](const TxRecord& rec) { ba1_end(rec); });
  });
}

void AccessPoint::ba1_end(const TxRecord&) {
  queue_.schedule_in(cfg_.timings.sifs_us, [this] { basic_phase(); });
}

std::vector<std::pair<int, int>> AccessPoint::basic_grants() {
  const SimTime now = queue_.now();
  const int k = cfg_.total_rus();
  std::vector<char> taken(static_cast<size_t>(cfg_.n_total()) + 1, 0);
  std::vector<int> chosen;

  if (cfg_.scheme == Scheme::kA2p) {
    std::vector<char> listed(static_cast<size_t>(cfg_.n_total()) + 1, 0);
    for (int aid = 1; aid <= cfg_.n_total(); ++aid)
      if (list_.active(aid, now)) listed[static_cast<size_t>(aid)] = 1;
    chosen = table_.claimants(k, listed);
    for (int aid : chosen) taken[static_cast<size_t>(aid)] = 1;
    // Spare RUs go to other roster members; never to unlisted stations, so
    // a short roster leaves RUs idle.
    std::vector<char> skip(taken);
    for (size_t aid = 1; aid < skip.size(); ++aid)
      if (!listed[aid]) skip[aid] = 1;
    for (int aid : fill_cursor_.take_skipping(k - static_cast<int>(chosen.size()), skip))
      chosen.push_back(aid);
  } else {
    chosen = table_.claimants(k);
    for (int aid : chosen) taken[static_cast<size_t>(aid)] = 1;
    for (int aid : fill_cursor_.take_skipping(k - static_cast<int>(chosen.size()), taken))
      chosen.push_back(aid);
  }

  std::vector<std::pair<int, int>> grants;
  for (size_t i = 0; i < chosen.size(); ++i)
    grants.emplace_back(static_cast<int>(i), chosen[i]);
  return grants;
}

void AccessPoint::basic_phase() {
  grants2_ = basic_grants();
  if (grants2_.empty()) {
    // A2P roster emptied mid-exchange; nothing left to schedule.
    defer(cfg_.ari());
    return;
  }
  Medium::TxSpec spec;
  spec.kind = TxKind::kTriggerBasic;
  spec.source_aid = 0;
  spec.res = Resource::band();
  spec.duration = cfg_.timings.trigger_us;
  spec.exchange_id = ex_seq_;
  spec.phase = ExchangePhase::kBasicTf;
  medium_.transmit(spec, [this](const TxRecord& rec) {
    tf2_ok_ = rec.outcome == TxOutcome::kDelivered;
    queue_.schedule_in(cfg_.timings.sifs_us, [this] { data_phase(); });
  });
}

void AccessPoint::data_phase() {
  data_slots_.clear();
  if (tf2_ok_) {
    for (const auto& [ru, aid] : grants2_) {
      Station::DataPlan plan = stations_[static_cast<size_t>(aid)]->plan_data();
      if (!plan.tx) continue;  // stale claim or empty queue: the RU idles
      data_slots_.push_back({aid, plan.pkt, plan.piggyback_bytes, false});
      const size_t idx = data_slots_.size() - 1;
      Medium::TxSpec spec;
      spec.kind = TxKind::kOfdmaData;
      spec.source_aid = aid;
      spec.res = Resource::on_ru(ru);
      spec.duration = data_ppdu_us_;
      spec.exchange_id = ex_seq_;
      spec.phase = ExchangePhase::kData;
      medium_.transmit(spec, [this, idx](const TxRecord& rec) {
        data_slots_[idx].delivered = rec.outcome == TxOutcome::kDelivered;
      });
    }
  }
  // Trigger-based PPDUs are padded to a common length; the window is fixed.
  queue_.schedule_in(data_ppdu_us_, [this] { data_window_end(); });
}

void AccessPoint::data_window_end() {
  const SimTime now = queue_.now();
  for (const DataSlot& s : data_slots_) {
    if (s.delivered) {
      table_.update(s.aid, s.piggyback, now);
      if (cfg_.scheme == Scheme::kA2p) list_.on_uplink_data(s.aid, now);
    }
    stations_[static_cast<size_t>(s.aid)]->on_data_outcome(s.delivered, s.pkt);
  }
  queue_.schedule_in(cfg_.timings.sifs_us, [this] {
    Medium::TxSpec spec;
    spec.kind = TxKind::kBlockAck;
    spec.source_aid = 0;
    spec.res = Resource::band();
    spec.duration = cfg_.timings.msta_ba_us;
    spec.exchange_id = ex_seq_;
    spec.phase = ExchangePhase::kDataAck;
    medium_.transmit(spec, [this](const TxRecord& rec) { ba2_end(rec); });
  });
}

void AccessPoint::ba2_end(const TxRecord&) {
  ++exchanges_;
  defer(cfg_.ari());
}

void AccessPoint::on_edca_data(int aid, std::vector<std::uint32_t> ids, long piggyback_bytes) {
  const SimTime now = queue_.now();
  table_.update(aid, piggyback_bytes, now);
  if (cfg_.scheme == Scheme::kA2p) list_.on_uplink_data(aid, now);
  queue_.schedule_in(cfg_.timings.sifs_us, [this, aid, ids = std::move(ids)] {
    Medium::TxSpec spec;
    spec.kind = TxKind::kAck;
    spec.source_aid = 0;
    spec.res = Resource::band();
    spec.duration = cfg_.timings.ack_us;
    medium_.transmit(spec, [this, aid, ids](const TxRecord& rec) {
      stations_[static_cast<size_t>(aid)]->on_edca_ack(rec.outcome == TxOutcome::kDelivered,
                                                       ids);
    });
  });
}

}  // namespace upsim
