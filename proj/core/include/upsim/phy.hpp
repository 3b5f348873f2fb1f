#pragma once

#include "upsim/errors.hpp"
#include "upsim/sim_time.hpp"

namespace upsim {

// Fixed MAC/PHY timing constants. Everything here is overridable through the
// scenario config; the defaults model a 20 MHz HE BSS carved into nine
// 26-tone RUs, MCS 8, 0.8 us GI.
struct ProtocolTimings {
  SimTime sifs_us = 16;
  SimTime slot_us = 9;

  // Control frame airtimes. Trigger frames carry one user-info field per
  // solicited station and go out at a low legacy rate, hence the larger
  // constant; BSRs are QoS Null TB PPDUs on one RU; the multi-STA BlockAck
  // and legacy ACK are full-band.
  SimTime trigger_us = 128;
  SimTime bsr_us = 68;
  SimTime msta_ba_us = 68;
  SimTime ack_us = 44;

  SimTime txop_limit_us = 2080;

  // OFDM symbol = 12.8 us + 0.8 us GI = 13.6 us, kept as tenths of us so all
  // duration math stays in integers.
  int symbol_tenths_us = 136;
  // MCS 8 (256-QAM, r=3/4): a 26-tone RU has 24 data tones -> 144 bits per
  // symbol; the full 20 MHz (242-tone, 234 data tones) carries 1404.
  int bits_per_symbol_ru = 144;
  int bits_per_symbol_full = 1404;
  // Trigger-based PPDUs carry the longer HE preamble.
  SimTime preamble_tb_us = 40;
  SimTime preamble_full_us = 20;

  int service_bits = 16;
  int tail_bits = 6;
};

enum class PpduClass {
  kFullBand,  // EDCA data, control frames
  kPerRu,     // trigger-based uplink on one 26-tone RU
};

// Number of equal RUs the channel splits into. Only the 20 MHz / 26-tone
// layout of the study is supported; anything else is a configuration error.
int ru_count(int bandwidth_mhz, int ru_tones);

// PPDU airtime: preamble + ceil((service + payload + tail) / bits_per_symbol)
// symbols, rounded up to a whole microsecond.
SimTime ppdu_duration_us(long payload_bits, PpduClass cls, const ProtocolTimings& t);

// Payload bits for n MSDUs of msdu_bytes each, with per-MSDU MAC overhead.
long frame_payload_bits(int n_msdus, int msdu_bytes, int mac_overhead_bytes);

// Largest MSDU count whose full-band PPDU still fits the TXOP limit.
// Always at least 1.
int max_msdus_in_txop(const ProtocolTimings& t, int msdu_bytes, int mac_overhead_bytes);

}  // namespace upsim
