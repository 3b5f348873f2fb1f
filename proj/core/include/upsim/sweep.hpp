#pragma once

#include <cstdint>
#include <string>
#include <tuple>
#include <vector>

#include "upsim/metrics.hpp"
#include "upsim/scenario.hpp"

namespace upsim {

// One sweep cell: the study grids vary these five knobs, everything else
// rides on the base ScenarioConfig.
struct CellKey {
  Scheme scheme = Scheme::kUora;
  int n_stochastic = 10;
  int ra_rus = 5;  // ignored outside uora
  int ocw_min = 7;
  double exp_mean_s = 0.1;

  auto tie() const { return std::tie(scheme, n_stochastic, ra_rus, ocw_min, exp_mean_s); }
  bool operator==(const CellKey& o) const { return tie() == o.tie(); }
  bool operator<(const CellKey& o) const { return tie() < o.tie(); }
};

// Stable per-run seed: cells are reproducible in isolation, so a sweep can be
// sliced or parallelized freely. exp_mean is deliberately not folded in; runs
// at different traffic intensities reuse the same underlying randomness.
std::uint64_t cell_seed(std::uint64_t seed_base, const CellKey& key, int run_index);

// A delay sample row tagged with the run it came from.
struct CellSample {
  int run_index = 0;
  SampleRow row;
};

struct CellResult {
  CellKey key;
  std::uint64_t seed_base = 0;
  int t_runs = 0;
  std::vector<double> run_mean_us;     // D_t of each run that produced samples
  std::vector<double> run_throughput;  // every run
  bool excluded = false;               // some run had no stochastic delivery
  std::string note;                    // exclusion diagnostic
  DelaySummary delay;                  // box statistics over run_mean_us
  double mean_delay_us = 0;            // D-bar: mean of run_mean_us
  double sd_delay_us = 0;              // sample sd of run_mean_us
  double mean_throughput_pps = 0;
  std::vector<CellSample> samples;     // only when requested
};

// Applies the key to a copy of `base` (ra_rus forced to 0 outside uora).
ScenarioConfig cell_config(const ScenarioConfig& base, const CellKey& key);

CellResult run_cell(const ScenarioConfig& base, const CellKey& key, int t_runs,
                    std::uint64_t seed_base, bool capture_samples = false);

// argmin over D-bar within one (scheme, N, R, exp_mean) family; ties go to the
// smaller ocw_min. Excluded cells do not compete.
int ocw_star(const std::vector<CellResult>& family);

// (d_base - d_min) / d_base × 100; callers guard d_base > 0.
double delay_gain_percent(double d_base_us, double d_min_us);

struct SweepSpec {
  std::string name;
  std::vector<CellKey> cells;
  int t_runs = 10;
};

// Named grids: "full" is the complete study protocol, "acceptance" is the
// reduced all-schemes grid the test suite runs, "quick" is a smoke check.
SweepSpec sweep_preset(const std::string& name);
std::vector<std::string> sweep_preset_names();

// Runs every cell of `spec` (optionally on `threads` workers, one engine per
// cell) and returns results in its cell order.
std::vector<CellResult> run_sweep(const ScenarioConfig& base, const SweepSpec& spec,
                                  std::uint64_t seed_base, int threads = 1,
                                  bool capture_samples = false);

// --- emission ---

std::string summary_csv(const std::vector<CellResult>& cells);
std::string samples_csv(const CellResult& cell);
std::string samples_filename(const CellKey& key);
// Per-(N, exp_mean) D_gain rows for families that include an R=0 baseline and
// at least one uora cell.
std::string gain_csv(const std::vector<CellResult>& cells);
std::string sweep_json(const ScenarioConfig& base, const std::vector<CellResult>& cells);

}  // namespace upsim
