#include "upsim/scenario.hpp"

#include <memory>
#include <numeric>

#include "json.hpp"
#include "upsim/access_point.hpp"
#include "upsim/station.hpp"

namespace upsim {

const char* to_string(Scheme s) {
  switch (s) {
    case Scheme::kEdca: return "edca";
    case Scheme::kSaOfdma: return "sa_ofdma";
    case Scheme::kUora: return "uora";
    case Scheme::kA2p: return "a2p";
  }
  return "?";
}

Scheme scheme_from_string(const std::string& s) {
  if (s == "edca") return Scheme::kEdca;
  if (s == "sa_ofdma") return Scheme::kSaOfdma;
  if (s == "uora") return Scheme::kUora;
  if (s == "a2p") return Scheme::kA2p;
  throw ConfigError("unknown scheme '" + s + "' (expected edca, sa_ofdma, uora or a2p)");
}

void ScenarioConfig::validate() const {
  total_rus();  // throws on an unsupported channelization
  if (n_stochastic < 0) throw ConfigError("n_stochastic must be >= 0");
  if (n_deterministic < 0) throw ConfigError("n_deterministic must be >= 0");
  if (n_total() < 1) throw ConfigError("at least one station is required");
  if (scheme == Scheme::kUora && (ra_rus < 1 || ra_rus > total_rus()))
    throw ConfigError("uora needs between 1 and " + std::to_string(total_rus()) + " RA RUs");
  if (ocw.min < 0 || ocw.min > ocw.max)
    throw ConfigError("OCW range must satisfy 0 <= min <= max");
  if (exp_mean_s <= 0) throw ConfigError("exp_mean_s must be positive");
  if (det_interval_us <= 0) throw ConfigError("det_interval_us must be positive");
  if (msdu_bytes <= 0) throw ConfigError("msdu_bytes must be positive");
  if (mac_overhead_bytes < 0) throw ConfigError("mac_overhead_bytes must be >= 0");
  if (duration_us <= 0) throw ConfigError("duration_us must be positive");
  if (startup_gate_us < 0 || startup_gate_us > duration_us)
    throw ConfigError("startup_gate_us must lie within the run");
  if (warmup_extra_us < 0) throw ConfigError("warmup_extra_us must be >= 0");
  if (exclude_warmup && warmup_end() >= duration_us)
    throw ConfigError("warm-up covers the whole run; no delay samples would remain");
  if (edca_vo.aifsn < 1) throw ConfigError("base EDCA aifsn must be >= 1");
  if (edca_vo.cw_min < 0 || edca_vo.cw_min > edca_vo.cw_max)
    throw ConfigError("EDCA CW range must satisfy 0 <= min <= max");
  if (ari() < 0) throw ConfigError("ari_us must be >= 0");
  if (a2p_window() <= 0) throw ConfigError("a2p_window_us must be positive");
  if (mu_edca_window() <= 0) throw ConfigError("mu_edca_window_us must be positive");
  if (data_ppdu_us() > timings.txop_limit_us)
    throw ConfigError("a single-MSDU trigger-based PPDU does not fit the TXOP limit");
}

std::string ScenarioConfig::to_json() const {
  nlohmann::json j;
  j["scheme"] = to_string(scheme);
  j["n_stochastic"] = n_stochastic;
  j["n_deterministic"] = n_deterministic;
  j["ra_rus"] = ra_rus;
  j["ocw_min"] = ocw.min;
  j["ocw_max"] = ocw.max;
  j["exp_mean_s"] = exp_mean_s;
  j["det_interval_us"] = det_interval_us;
  j["msdu_bytes"] = msdu_bytes;
  j["mac_overhead_bytes"] = mac_overhead_bytes;
  j["duration_us"] = duration_us;
  j["startup_gate_us"] = startup_gate_us;
  j["warmup_extra_us"] = warmup_extra_us;
  j["exclude_warmup"] = exclude_warmup;
  j["ari_us"] = ari_us;
  j["a2p_window_us"] = a2p_window_us;
  j["mu_edca_window_us"] = mu_edca_window_us;
  j["edca"] = {{"aifsn", edca_vo.aifsn}, {"cw_min", edca_vo.cw_min}, {"cw_max", edca_vo.cw_max}};
  j["timings"] = {{"sifs_us", timings.sifs_us},
                  {"slot_us", timings.slot_us},
                  {"trigger_us", timings.trigger_us},
                  {"bsr_us", timings.bsr_us},
                  {"msta_ba_us", timings.msta_ba_us},
                  {"ack_us", timings.ack_us},
                  {"txop_limit_us", timings.txop_limit_us},
                  {"symbol_tenths_us", timings.symbol_tenths_us},
                  {"bits_per_symbol_ru", timings.bits_per_symbol_ru},
                  {"bits_per_symbol_full", timings.bits_per_symbol_full},
                  {"preamble_tb_us", timings.preamble_tb_us},
                  {"preamble_full_us", timings.preamble_full_us},
                  {"service_bits", timings.service_bits},
                  {"tail_bits", timings.tail_bits}};
  j["bandwidth_mhz"] = bandwidth_mhz;
  j["ru_tones"] = ru_tones;
  j["seed"] = seed;
  return j.dump(2);
}

ScenarioConfig ScenarioConfig::from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("bad config JSON: ") + e.what());
  }
  ScenarioConfig c;  // absent keys keep their defaults
  try {
    if (j.contains("scheme")) c.scheme = scheme_from_string(j["scheme"].get<std::string>());
    c.n_stochastic = j.value("n_stochastic", c.n_stochastic);
    c.n_deterministic = j.value("n_deterministic", c.n_deterministic);
    c.ra_rus = j.value("ra_rus", c.ra_rus);
    c.ocw.min = j.value("ocw_min", c.ocw.min);
    c.ocw.max = j.value("ocw_max", c.ocw.max);
    c.exp_mean_s = j.value("exp_mean_s", c.exp_mean_s);
    c.det_interval_us = j.value("det_interval_us", c.det_interval_us);
    c.msdu_bytes = j.value("msdu_bytes", c.msdu_bytes);
    c.mac_overhead_bytes = j.value("mac_overhead_bytes", c.mac_overhead_bytes);
    c.duration_us = j.value("duration_us", c.duration_us);
    c.startup_gate_us = j.value("startup_gate_us", c.startup_gate_us);
    c.warmup_extra_us = j.value("warmup_extra_us", c.warmup_extra_us);
    c.exclude_warmup = j.value("exclude_warmup", c.exclude_warmup);
    c.ari_us = j.value("ari_us", c.ari_us);
    c.a2p_window_us = j.value("a2p_window_us", c.a2p_window_us);
    c.mu_edca_window_us = j.value("mu_edca_window_us", c.mu_edca_window_us);
    if (j.contains("edca")) {
      const auto& e = j["edca"];
      c.edca_vo.aifsn = e.value("aifsn", c.edca_vo.aifsn);
      c.edca_vo.cw_min = e.value("cw_min", c.edca_vo.cw_min);
      c.edca_vo.cw_max = e.value("cw_max", c.edca_vo.cw_max);
    }
    if (j.contains("timings")) {
      const auto& t = j["timings"];
      c.timings.sifs_us = t.value("sifs_us", c.timings.sifs_us);
      c.timings.slot_us = t.value("slot_us", c.timings.slot_us);
      c.timings.trigger_us = t.value("trigger_us", c.timings.trigger_us);
      c.timings.bsr_us = t.value("bsr_us", c.timings.bsr_us);
      c.timings.msta_ba_us = t.value("msta_ba_us", c.timings.msta_ba_us);
      c.timings.ack_us = t.value("ack_us", c.timings.ack_us);
      c.timings.txop_limit_us = t.value("txop_limit_us", c.timings.txop_limit_us);
      c.timings.symbol_tenths_us = t.value("symbol_tenths_us", c.timings.symbol_tenths_us);
      c.timings.bits_per_symbol_ru = t.value("bits_per_symbol_ru", c.timings.bits_per_symbol_ru);
      c.timings.bits_per_symbol_full =
          t.value("bits_per_symbol_full", c.timings.bits_per_symbol_full);
      c.timings.preamble_tb_us = t.value("preamble_tb_us", c.timings.preamble_tb_us);
      c.timings.preamble_full_us = t.value("preamble_full_us", c.timings.preamble_full_us);
      c.timings.service_bits = t.value("service_bits", c.timings.service_bits);
      c.timings.tail_bits = t.value("tail_bits", c.timings.tail_bits);
    }
    c.bandwidth_mhz = j.value("bandwidth_mhz", c.bandwidth_mhz);
    c.ru_tones = j.value("ru_tones", c.ru_tones);
    c.seed = j.value("seed", c.seed);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("bad config JSON: ") + e.what());
  }
  return c;
}

double RunResult::mean_delay_us() const {
  if (stoch_delays_us.empty()) return 0;
  const double sum = std::accumulate(stoch_delays_us.begin(), stoch_delays_us.end(), 0.0);
  return sum / static_cast<double>(stoch_delays_us.size());
}

RunResult run_scenario(const ScenarioConfig& cfg, const RunCapture& capture) {
  cfg.validate();

  EventQueue q;
  Medium medium(q);
  medium.set_logging(capture.tx_log);
  PacketArena arena;
  MetricsCollector metrics(cfg.warmup_end(), cfg.exclude_warmup, capture.samples);
  AccessPoint ap(q, medium, arena, metrics, cfg);

  std::vector<std::unique_ptr<Station>> stations;
  std::vector<Station*> by_aid(static_cast<size_t>(cfg.n_total()) + 1, nullptr);
  for (int aid = 1; aid <= cfg.n_total(); ++aid) {
    const bool stochastic = aid > cfg.n_deterministic;
    stations.push_back(std::make_unique<Station>(q, medium, arena, metrics, cfg, aid, stochastic));
    stations.back()->set_ap(&ap);
    by_aid[static_cast<size_t>(aid)] = stations.back().get();
  }
  ap.set_stations(by_aid);

  for (auto& s : stations) s->start_traffic(cfg.duration_us);
  if (cfg.scheme == Scheme::kUora || cfg.scheme == Scheme::kSaOfdma) {
    // Contention is only a bootstrap for these schemes; past the gate every
    // station lives off the trigger plane alone.
    q.schedule_at(cfg.startup_gate_us, [&stations] {
      for (auto& s : stations) s->on_gate();
    });
  }
  ap.start();

  q.run_until(cfg.duration_us);

  RunResult r;
  r.generated = static_cast<std::int64_t>(arena.size());
  for (const Packet& p : arena.all())
    if (p.stochastic) ++r.stoch_generated;
  r.delivered = metrics.delivered();
  r.stoch_delivered = metrics.stoch_delivered();
  r.duplicates = metrics.redundant();
  for (auto& s : stations) r.queued_at_end += s->queue_len();

  // Every packet must be accounted for: delivered, or still sitting in its
  // station's queue (a frame in flight at the horizon is still queued, since
  // the queue pops only on a completed handshake).
  std::vector<char> queued(arena.size(), 0);
  for (auto& s : stations)
    for (std::uint32_t id : s->queue()) queued[id] = 1;
  for (const Packet& p : arena.all())
    if (p.delivered_us < 0 && !queued[p.id])
      throw InvariantError("packet " + std::to_string(p.id) +
                           " neither delivered nor queued at end of run");

  r.stoch_delays_us = std::move(metrics.stoch_delays_us());
  r.samples = std::move(metrics.rows());
  r.throughput_pps = static_cast<double>(r.delivered) /
                     (static_cast<double>(cfg.duration_us) / 1e6);
  r.transmissions = medium.transmissions();
  r.collisions = medium.collisions();
  r.exchanges = ap.exchanges();
  r.duration_us = cfg.duration_us;
  r.warmup_end_us = cfg.warmup_end();
  if (capture.tx_log) r.tx_log = medium.log();
  return r;
}

}  // namespace upsim
