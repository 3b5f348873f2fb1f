#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace upsim {

// Deterministic per-entity random stream. Each simulated entity (station MAC,
// AP, traffic source) owns one stream seeded from (run_seed, label) so that
// adding or removing an entity never perturbs the draws of the others.
//
// mt19937_64 is fully specified by the standard; the distribution wrappers
// below avoid std::uniform_int_distribution et al. on purpose, because their
// algorithms are implementation-defined and would break cross-platform
// reproducibility of a given seed.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::string_view label);

  // Inclusive bounds, unbiased (rejection sampling). lo == hi is allowed and
  // consumes no engine output.
  int uniform_int(int lo, int hi);

  // Uniform in [0, 1) with 53 random mantissa bits.
  double uniform01();

  // Exponential with the given mean (same unit as the result).
  double exponential(double mean);

  std::uint64_t next_u64() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

// splitmix64; used for seed derivation everywhere so derived seeds are
// platform-stable. Public because the sweep harness derives per-cell seeds
// with the same mixer.
std::uint64_t mix64(std::uint64_t x);

// FNV-1a over a label, for folding stream names into seeds.
std::uint64_t hash_label(std::string_view s);

}  // namespace upsim
