#include "upsim/phy.hpp"

namespace upsim {

int ru_count(int bandwidth_mhz, int ru_tones) {
  if (bandwidth_mhz == 20 && ru_tones == 26) return 9;
  throw ConfigError("unsupported channelization: " + std::to_string(bandwidth_mhz) +
                    " MHz / " + std::to_string(ru_tones) + "-tone RUs");
}

SimTime ppdu_duration_us(long payload_bits, PpduClass cls, const ProtocolTimings& t) {
  if (payload_bits <= 0) throw ConfigError("ppdu payload must be positive");
  const long bps = cls == PpduClass::kPerRu ? t.bits_per_symbol_ru : t.bits_per_symbol_full;
  const long total_bits = t.service_bits + payload_bits + t.tail_bits;
  const long symbols = (total_bits + bps - 1) / bps;
  const long tenths = symbols * t.symbol_tenths_us;
  const SimTime preamble = cls == PpduClass::kPerRu ? t.preamble_tb_us : t.preamble_full_us;
  return preamble + (tenths + 9) / 10;
}

long frame_payload_bits(int n_msdus, int msdu_bytes, int mac_overhead_bytes) {
  return static_cast<long>(n_msdus) * (msdu_bytes + mac_overhead_bytes) * 8L;
}

int max_msdus_in_txop(const ProtocolTimings& t, int msdu_bytes, int mac_overhead_bytes) {
  int n = 1;
  while (ppdu_duration_us(frame_payload_bits(n + 1, msdu_bytes, mac_overhead_bytes),
                          PpduClass::kFullBand, t) <= t.txop_limit_us) {
    ++n;
  }
  return n;
}

}  // namespace upsim
