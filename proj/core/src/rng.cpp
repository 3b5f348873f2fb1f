#include "upsim/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace upsim {

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t hash_label(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

RngStream::RngStream(std::uint64_t seed, std::string_view label)
    : engine_(mix64(seed ^ mix64(hash_label(label)))) {}

int RngStream::uniform_int(int lo, int hi) {
  if (lo > hi) throw std::logic_error("uniform_int: lo > hi");
  const std::uint64_t range = static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo) + 1;
  if (range == 1) return lo;
  // Rejection sampling on the top of the 64-bit range keeps every value
  // exactly equally likely.
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % range;
  std::uint64_t v;
  do {
    v = engine_();
  } while (v >= limit);
  return lo + static_cast<int>(v % range);
}

double RngStream::uniform01() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double RngStream::exponential(double mean) {
  // -mean * ln(1 - U); 1 - U is in (0, 1], so log() never sees zero.
  return -mean * std::log(1.0 - uniform01());
}

}  // namespace upsim
