#include "upsim/a2p.hpp"

namespace upsim {

std::vector<int> PollingList::select(SimTime now, int k) {
  prune(now);
  std::vector<int> out;
  if (expires_.empty() || k <= 0) return out;

  auto it = expires_.lower_bound(cursor_);
  const size_t budget = std::min(static_cast<size_t>(k), expires_.size());
  while (out.size() < budget) {
    if (it == expires_.end()) it = expires_.begin();
    out.push_back(it->first);
    ++it;
  }
  cursor_ = (it == expires_.end()) ? expires_.begin()->first : it->first;
  return out;
}

}  // namespace upsim
