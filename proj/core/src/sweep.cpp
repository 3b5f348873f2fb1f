#include "upsim/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <map>
#include <thread>

#include "json.hpp"
#include "upsim/rng.hpp"

namespace upsim {

namespace {

int scheme_index(Scheme s) { return static_cast<int>(s); }

double mean_of(const std::vector<double>& v) {
  if (v.empty()) return 0;
  double s = 0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

double sample_sd(const std::vector<double>& v) {
  if (v.size() < 2) return 0;
  const double m = mean_of(v);
  double acc = 0;
  for (double x : v) acc += (x - m) * (x - m);
  return std::sqrt(acc / static_cast<double>(v.size() - 1));
}

std::string fmt(const char* spec, double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), spec, x);
  return buf;
}

// Fixed-point microsecond formatting; "nan" marks absent statistics.
std::string us(double x, bool absent) { return absent ? "nan" : fmt("%.3f", x); }

}  // namespace

std::uint64_t cell_seed(std::uint64_t seed_base, const CellKey& key, int run_index) {
  std::uint64_t s = mix64(seed_base);
  s = mix64(s ^ static_cast<std::uint64_t>(scheme_index(key.scheme) + 1));
  s = mix64(s ^ static_cast<std::uint64_t>(key.n_stochastic + 1));
  s = mix64(s ^ static_cast<std::uint64_t>(key.ra_rus + 1));
  s = mix64(s ^ static_cast<std::uint64_t>(key.ocw_min + 1));
  s = mix64(s ^ static_cast<std::uint64_t>(run_index + 1));
  return s;
}

ScenarioConfig cell_config(const ScenarioConfig& base, const CellKey& key) {
  ScenarioConfig cfg = base;
  cfg.scheme = key.scheme;
  cfg.n_stochastic = key.n_stochastic;
  cfg.ra_rus = key.scheme == Scheme::kUora ? key.ra_rus : 0;
  cfg.ocw.min = key.ocw_min;
  cfg.exp_mean_s = key.exp_mean_s;
  return cfg;
}

CellResult run_cell(const ScenarioConfig& base, const CellKey& key, int t_runs,
                    std::uint64_t seed_base, bool capture_samples) {
  CellResult out;
  out.key = key;
  out.seed_base = seed_base;
  out.t_runs = t_runs;

  ScenarioConfig cfg = cell_config(base, key);
  RunCapture cap;
  cap.samples = capture_samples;

  for (int t = 0; t < t_runs; ++t) {
    cfg.seed = cell_seed(seed_base, key, t);
    RunResult r = run_scenario(cfg, cap);
    out.run_throughput.push_back(r.throughput_pps);
    if (r.stoch_delivered == 0 || r.stoch_delays_us.empty()) {
      out.excluded = true;
      out.note = "run " + std::to_string(t) + " produced no stochastic delay samples";
    } else {
      double s = 0;
      for (SimTime d : r.stoch_delays_us) s += static_cast<double>(d);
      out.run_mean_us.push_back(s / static_cast<double>(r.stoch_delays_us.size()));
    }
    if (capture_samples)
      for (const SampleRow& row : r.samples) out.samples.push_back({t, row});
  }

  out.delay = summarize(out.run_mean_us);
  out.mean_delay_us = mean_of(out.run_mean_us);
  out.sd_delay_us = sample_sd(out.run_mean_us);
  out.mean_throughput_pps = mean_of(out.run_throughput);
  return out;
}

int ocw_star(const std::vector<CellResult>& family) {
  int best = -1;
  double best_delay = 0;
  for (const CellResult& c : family) {
    if (c.excluded || c.run_mean_us.empty()) continue;
    if (best < 0 || c.mean_delay_us < best_delay ||
        (c.mean_delay_us == best_delay && c.key.ocw_min < best)) {
      best = c.key.ocw_min;
      best_delay = c.mean_delay_us;
    }
  }
  return best;
}

double delay_gain_percent(double d_base_us, double d_min_us) {
  return (d_base_us - d_min_us) / d_base_us * 100.0;
}

std::vector<std::string> sweep_preset_names() { return {"quick", "acceptance", "full"}; }

SweepSpec sweep_preset(const std::string& name) {
  SweepSpec spec;
  spec.name = name;
  if (name == "quick") {
    spec.t_runs = 3;
    spec.cells = {
        {Scheme::kEdca, 1, 0, 7, 0.1},
        {Scheme::kSaOfdma, 10, 0, 7, 0.1},
        {Scheme::kUora, 10, 5, 7, 0.1},
        {Scheme::kA2p, 10, 0, 7, 0.1},
    };
    return spec;
  }
  if (name == "acceptance") {
    spec.t_runs = 3;
    spec.cells = {
        {Scheme::kEdca, 1, 0, 7, 0.1},   {Scheme::kSaOfdma, 1, 0, 7, 0.1},
        {Scheme::kSaOfdma, 10, 0, 7, 0.1}, {Scheme::kUora, 1, 5, 7, 0.1},
        {Scheme::kUora, 10, 1, 7, 0.1},  {Scheme::kUora, 10, 5, 7, 0.1},
        {Scheme::kUora, 10, 9, 7, 0.1},  {Scheme::kA2p, 1, 0, 7, 0.1},
        {Scheme::kA2p, 10, 0, 7, 0.1},   {Scheme::kA2p, 20, 0, 7, 0.1},
    };
    return spec;
  }
  if (name == "full") {
    // Every grid of the study. At the default 30 s x T=10 this is hours of
    // wall time; it exists so the complete grids are one flag away.
    spec.t_runs = 10;
    const std::vector<int> ns = {1, 10, 20, 30, 40, 50, 60, 70, 80, 90};
    const std::vector<int> rs = {1, 3, 5, 7, 9};
    const std::vector<int> ocws = {0, 1, 3, 7, 15, 31, 63};
    spec.cells.push_back({Scheme::kEdca, 1, 0, 7, 0.1});
    for (int n : ns) spec.cells.push_back({Scheme::kSaOfdma, n, 0, 7, 0.1});
    for (int n : ns)
      for (int r : rs)
        for (int w : ocws) spec.cells.push_back({Scheme::kUora, n, r, w, 0.1});
    for (int n : {1, 10, 20, 30, 40, 50, 60}) spec.cells.push_back({Scheme::kA2p, n, 0, 7, 0.1});
    for (int n : {10, 90})
      for (double mean : {0.03, 0.05, 0.3, 0.5, 1.0}) {
        spec.cells.push_back({Scheme::kSaOfdma, n, 0, 7, mean});
        for (int r : rs)
          for (int w : ocws) spec.cells.push_back({Scheme::kUora, n, r, w, mean});
      }
    return spec;
  }
  throw ConfigError("unknown sweep preset '" + name + "' (try quick, acceptance, full)");
}

std::vector<CellResult> run_sweep(const ScenarioConfig& base, const SweepSpec& spec,
                                  std::uint64_t seed_base, int threads, bool capture_samples) {
  std::vector<CellResult> results(spec.cells.size());
  if (threads <= 1) {
    for (size_t i = 0; i < spec.cells.size(); ++i)
      results[i] = run_cell(base, spec.cells[i], spec.t_runs, seed_base, capture_samples);
    return results;
  }
  std::atomic<size_t> next{0};
  auto worker = [&] {
    for (;;) {
      const size_t i = next.fetch_add(1);
      if (i >= spec.cells.size()) return;
      results[i] = run_cell(base, spec.cells[i], spec.t_runs, seed_base, capture_samples);
    }
  };
  std::vector<std::thread> pool;
  const int n = std::min<int>(threads, static_cast<int>(spec.cells.size()));
  pool.reserve(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  return results;
}

std::string summary_csv(const std::vector<CellResult>& cells) {
  std::string out =
      "scheme,n_stochastic,ra_rus,ocw_min,exp_mean,seed_base,t_runs,mean_delay_us,"
      "median_delay_us,q1_us,q3_us,min_us,max_us,throughput_pps\n";
  for (const CellResult& c : cells) {
    const bool absent = c.excluded || c.run_mean_us.empty();
    const int ra = c.key.scheme == Scheme::kUora ? c.key.ra_rus : 0;
    out += to_string(c.key.scheme);
    out += ',' + std::to_string(c.key.n_stochastic);
    out += ',' + std::to_string(ra);
    out += ',' + std::to_string(c.key.ocw_min);
    out += ',' + fmt("%g", c.key.exp_mean_s);
    out += ',' + std::to_string(c.seed_base);
    out += ',' + std::to_string(c.t_runs);
    out += ',' + us(c.mean_delay_us, absent);
    out += ',' + us(c.delay.median, absent);
    out += ',' + us(c.delay.q1, absent);
    out += ',' + us(c.delay.q3, absent);
    out += ',' + us(c.delay.min, absent);
    out += ',' + us(c.delay.max, absent);
    out += ',' + fmt("%.3f", c.mean_throughput_pps);
    out += '\n';
  }
  return out;
}

std::string samples_filename(const CellKey& key) {
  const int ra = key.scheme == Scheme::kUora ? key.ra_rus : 0;
  return std::string(to_string(key.scheme)) + "_N" + std::to_string(key.n_stochastic) + "_R" +
         std::to_string(ra) + "_OCW" + std::to_string(key.ocw_min) + "_samples.csv";
}

std::string samples_csv(const CellResult& cell) {
  std::string out = "run_index,packet_id,source_aid,generated_at_us,delivered_at_us,delay_us\n";
  for (const CellSample& s : cell.samples) {
    out += std::to_string(s.run_index);
    out += ',' + std::to_string(s.row.packet_id);
    out += ',' + std::to_string(s.row.aid);
    out += ',' + std::to_string(s.row.generated_us);
    out += ',' + std::to_string(s.row.delivered_us);
    out += ',' + std::to_string(s.row.delivered_us - s.row.generated_us);
    out += '\n';
  }
  return out;
}

std::string gain_csv(const std::vector<CellResult>& cells) {
  // One row per (N, exp_mean) family holding an R=0 baseline and uora cells.
  std::map<std::pair<int, double>, std::vector<const CellResult*>> families;
  std::map<std::pair<int, double>, const CellResult*> baselines;
  for (const CellResult& c : cells) {
    const auto k = std::make_pair(c.key.n_stochastic, c.key.exp_mean_s);
    if (c.key.scheme == Scheme::kSaOfdma)
      baselines[k] = &c;
    else if (c.key.scheme == Scheme::kUora)
      families[k].push_back(&c);
  }
  std::string out =
      "n_stochastic,exp_mean,d_base_us,sd_base_us,d_min_us,sd_min_us,r_star,ocw_star,"
      "gain_percent\n";
  for (const auto& [k, family] : families) {
    auto bit = baselines.find(k);
    if (bit == baselines.end()) continue;
    const CellResult* base = bit->second;
    if (base->excluded || base->run_mean_us.empty() || base->mean_delay_us <= 0) continue;
    const CellResult* best = nullptr;
    for (const CellResult* c : family) {
      if (c->excluded || c->run_mean_us.empty()) continue;
      if (!best || c->mean_delay_us < best->mean_delay_us) best = c;
    }
    if (!best) continue;
    out += std::to_string(k.first);
    out += ',' + fmt("%g", k.second);
    out += ',' + fmt("%.3f", base->mean_delay_us);
    out += ',' + fmt("%.3f", base->sd_delay_us);
    out += ',' + fmt("%.3f", best->mean_delay_us);
    out += ',' + fmt("%.3f", best->sd_delay_us);
    out += ',' + std::to_string(best->key.ra_rus);
    out += ',' + std::to_string(best->key.ocw_min);
    out += ',' + fmt("%.2f", delay_gain_percent(base->mean_delay_us, best->mean_delay_us));
    out += '\n';
  }
  return out;
}

std::string sweep_json(const ScenarioConfig& base, const std::vector<CellResult>& cells) {
  nlohmann::json j;
  j["meta"] = {
      {"duration_us", base.duration_us},
      {"startup_gate_us", base.startup_gate_us},
      {"exclude_warmup", base.exclude_warmup},
      {"warmup_end_us", base.warmup_end()},
      {"quartile_convention", "linear interpolation between order statistics"},
      {"base_config", nlohmann::json::parse(base.to_json())},
  };
  j["cells"] = nlohmann::json::array();
  for (const CellResult& c : cells) {
    nlohmann::json cj;
    cj["scheme"] = to_string(c.key.scheme);
    cj["n_stochastic"] = c.key.n_stochastic;
    cj["ra_rus"] = c.key.scheme == Scheme::kUora ? c.key.ra_rus : 0;
    cj["ocw_min"] = c.key.ocw_min;
    cj["exp_mean"] = c.key.exp_mean_s;
    cj["seed_base"] = c.seed_base;
    cj["t_runs"] = c.t_runs;
    cj["excluded"] = c.excluded;
    if (c.excluded) cj["note"] = c.note;
    const bool absent = c.excluded || c.run_mean_us.empty();
    if (!absent) {
      cj["mean_delay_us"] = c.mean_delay_us;
      cj["sd_delay_us"] = c.sd_delay_us;
      cj["median_delay_us"] = c.delay.median;
      cj["q1_us"] = c.delay.q1;
      cj["q3_us"] = c.delay.q3;
      cj["min_us"] = c.delay.min;
      cj["max_us"] = c.delay.max;
      cj["run_mean_us"] = c.run_mean_us;
    }
    cj["mean_throughput_pps"] = c.mean_throughput_pps;
    cj["run_throughput_pps"] = c.run_throughput;
    j["cells"].push_back(cj);
  }
  return j.dump(2);
}

}  // namespace upsim
