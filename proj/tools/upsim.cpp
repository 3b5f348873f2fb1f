// Command-line front end: single scenario cells or named sweep presets, with
// CSV/JSON emission for plotting.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "upsim/scenario.hpp"
#include "upsim/sweep.hpp"

namespace fs = std::filesystem;

namespace {

void write_file(const fs::path& p, const std::string& content) {
  std::ofstream f(p, std::ios::binary);
  if (!f) throw upsim::ConfigError("cannot open '" + p.string() + "' for writing");
  f << content;
  if (!f) throw upsim::ConfigError("short write to '" + p.string() + "'");
  std::cout << "wrote " << p.string() << "\n";
}

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw upsim::ConfigError("cannot read config file '" + path + "'");
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"uplink BSS polling/OFDMA scheme simulator"};

  std::string scheme = "uora";
  int n_stochastic = 10;
  int ra_rus = 5;
  int ocw_min = 7;
  double exp_mean = 0.1;
  double duration_s = 30.0;
  int runs = 10;
  std::uint64_t seed = 1;
  std::string out_dir = ".";
  std::string format = "csv";
  std::string config_path;
  std::string sweep_name;
  bool with_samples = false;
  int threads = 1;

  auto* f_scheme = app.add_option("--scheme", scheme, "edca | sa_ofdma | uora | a2p");
  auto* f_n = app.add_option("--n-stochastic", n_stochastic, "number of stochastic STAs");
  auto* f_ra = app.add_option("--ra-rus", ra_rus, "BSRP random-access RUs (uora)");
  auto* f_ocw = app.add_option("--ocw-min", ocw_min, "initial OFDMA contention window");
  auto* f_mean = app.add_option("--exp-mean", exp_mean, "stochastic inter-arrival mean, seconds");
  auto* f_dur = app.add_option("--duration", duration_s, "run duration, seconds");
  app.add_option("--runs", runs, "repetitions per cell (T)");
  app.add_option("--seed", seed, "base seed");
  app.add_option("--out", out_dir, "output directory");
  app.add_option("--format", format, "csv | json | both")
      ->check(CLI::IsMember({"csv", "json", "both"}));
  app.add_option("--config", config_path, "JSON config file (partial keys over defaults)");
  app.add_option("--sweep", sweep_name, "named preset: quick | acceptance | full");
  app.add_flag("--samples", with_samples, "also emit per-packet delay sample files");
  app.add_option("--threads", threads, "sweep worker threads (one engine per cell)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    upsim::ScenarioConfig base;
    if (!config_path.empty()) base = upsim::ScenarioConfig::from_json(slurp(config_path));
    if (f_scheme->count()) base.scheme = upsim::scheme_from_string(scheme);
    if (f_n->count()) base.n_stochastic = n_stochastic;
    if (f_ra->count()) base.ra_rus = ra_rus;
    if (f_ocw->count()) base.ocw.min = ocw_min;
    if (f_mean->count()) base.exp_mean_s = exp_mean;
    if (f_dur->count()) base.duration_us = static_cast<upsim::SimTime>(duration_s * 1e6);
    if (runs < 1) throw upsim::ConfigError("--runs must be >= 1");

    fs::create_directories(out_dir);
    const bool csv = format == "csv" || format == "both";
    const bool json = format == "json" || format == "both";

    std::vector<upsim::CellResult> cells;
    std::string stem;
    if (!sweep_name.empty()) {
      upsim::SweepSpec spec = upsim::sweep_preset(sweep_name);
      spec.t_runs = runs;
      cells = upsim::run_sweep(base, spec, seed, threads, with_samples);
      stem = spec.name;
    } else {
      upsim::CellKey key;
      key.scheme = base.scheme;
      key.n_stochastic = base.n_stochastic;
      key.ra_rus = base.effective_ra();
      key.ocw_min = base.ocw.min;
      key.exp_mean_s = base.exp_mean_s;
      cells.push_back(upsim::run_cell(base, key, runs, seed, with_samples));
      stem = "cell";
    }

    if (csv) {
      write_file(fs::path(out_dir) / (stem + "_summary.csv"), upsim::summary_csv(cells));
      const std::string gains = upsim::gain_csv(cells);
      if (gains.find('\n') != gains.rfind('\n'))  // more than the header line
        write_file(fs::path(out_dir) / (stem + "_gain.csv"), gains);
    }
    if (json)
      write_file(fs::path(out_dir) / (stem + "_sweep.json"), upsim::sweep_json(base, cells));
    if (with_samples)
      for (const upsim::CellResult& c : cells)
        write_file(fs::path(out_dir) / upsim::samples_filename(c.key), upsim::samples_csv(c));

    for (const upsim::CellResult& c : cells)
      if (c.excluded)
        std::cout << "note: cell " << upsim::samples_filename(c.key) << " excluded: " << c.note
                  << "\n";
    return 0;
  } catch (const upsim::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const upsim::InvariantError& e) {
    std::cerr << "invariant violated: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
