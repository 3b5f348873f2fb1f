#pragma once

#include <cstdint>

namespace upsim {

// All simulation time is kept in integer microseconds. Sub-microsecond PHY
// quantities (the 13.6 us OFDM symbol) are handled inside the duration
// calculators with exact integer arithmetic, so nothing downstream ever sees
// a fractional timestamp.
using SimTime = std::int64_t;

constexpr SimTime kTimeUnitUs = 1024;  // one 802.11 TU

constexpr SimTime micros(std::int64_t v) { return v; }
constexpr SimTime millis(std::int64_t v) { return v * 1000; }
constexpr SimTime seconds(std::int64_t v) { return v * 1000000; }

}  // namespace upsim
