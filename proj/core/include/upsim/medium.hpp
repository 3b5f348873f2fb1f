#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "upsim/event_queue.hpp"
#include "upsim/sim_time.hpp"

namespace upsim {

enum class TxKind : std::uint8_t {
  kTriggerBsrp,
  kTriggerBasic,
  kBsr,
  kOfdmaData,
  kEdcaData,
  kAck,
  kBlockAck,
};

enum class TxOutcome : std::uint8_t { kPending, kDelivered, kCollided };

// A transmission either occupies the whole 20 MHz channel or a single RU.
struct Resource {
  bool full_band = true;
  int ru = -1;

  static Resource band() { return {true, -1}; }
  static Resource on_ru(int idx) { return {false, idx}; }

  bool conflicts(const Resource& o) const {
    if (full_band || o.full_band) return true;
    return ru == o.ru;
  }
};

// Exchange phases, used only to tag the transmission log for analysis.
enum class ExchangePhase : std::int8_t {
  kNone = -1,
  kBsrpTf = 0,
  kBsr = 1,
  kBsrAck = 2,
  kBasicTf = 3,
  kData = 4,
  kDataAck = 5,
};

struct TxRecord {
  std::uint64_t id = 0;
  TxKind kind = TxKind::kEdcaData;
  int source_aid = 0;  // 0 = AP
  Resource res;
  SimTime start = 0;
  SimTime end = 0;
  TxOutcome outcome = TxOutcome::kPending;
  std::int32_t exchange_id = -1;
  ExchangePhase phase = ExchangePhase::kNone;
};

// Carrier-sense callbacks for EDCA contenders.
class MediumListener {
 public:
  virtual ~MediumListener() = default;
  virtual void on_busy_start(SimTime at) = 0;
  virtual void on_idle_start(SimTime at) = 0;
};

// Ideal shared channel: zero propagation delay, no capture, no noise losses.
// A PPDU is lost if and only if another PPDU overlaps it in time on a
// conflicting resource; every party to an overlap is lost. Intervals are
// half-open, so a frame starting exactly when another ends does not collide.
class Medium {
 public:
  using TxCallback = std::function<void(const TxRecord&)>;

  explicit Medium(EventQueue& q) : queue_(q) {}

  struct TxSpec {
    TxKind kind;
    int source_aid = 0;
    Resource res = Resource::band();
    SimTime duration = 0;
    std::int32_t exchange_id = -1;
    ExchangePhase phase = ExchangePhase::kNone;
  };

  // Starts a transmission now. `done` fires at the end instant, after the
  // outcome is final.
  std::uint64_t transmit(const TxSpec& spec, TxCallback done);

  // Half-open intervals: a record ending exactly now no longer occupies the
  // medium, even if its end event has not popped yet.
  bool busy_now() const {
    for (const Active& a : active_)
      if (a.rec.end > queue_.now()) return true;
    return false;
  }
  // Instant the channel last became idle (0 if it has never been busy).
  SimTime idle_since() const { return idle_since_; }

  void subscribe(MediumListener* l);
  void unsubscribe(MediumListener* l);

  void set_logging(bool on) { logging_ = on; }
  const std::vector<TxRecord>& log() const { return log_; }

  std::uint64_t transmissions() const { return next_id_ - 1; }
  std::uint64_t collisions() const { return collided_count_; }

 private:
  struct Active {
    TxRecord rec;
    TxCallback done;
  };

  void finish(std::uint64_t id);

  EventQueue& queue_;
  std::vector<Active> active_;
  std::vector<MediumListener*> listeners_;
  std::vector<TxRecord> log_;
  SimTime idle_since_ = 0;
  std::uint64_t next_id_ = 1;
  std::uint64_t collided_count_ = 0;
  bool logging_ = false;
};

}  // namespace upsim
