#include "upsim/buffer_status.hpp"

#include <algorithm>

namespace upsim {

std::vector<int> BufferStatusTable::claimants(int k, const std::vector<char>& allowed) const {
  std::vector<int> out;
  for (size_t aid = 1; aid < rows_.size(); ++aid) {
    if (rows_[aid].bytes <= 0) continue;
    if (!allowed.empty() && (aid >= allowed.size() || !allowed[aid])) continue;
    out.push_back(static_cast<int>(aid));
  }
  std::sort(out.begin(), out.end(), [this](int a, int b) {
    const auto& ra = rows_[static_cast<size_t>(a)];
    const auto& rb = rows_[static_cast<size_t>(b)];
    if (ra.stamp != rb.stamp) return ra.stamp < rb.stamp;
    return a < b;
  });
  if (static_cast<int>(out.size()) > k) out.resize(static_cast<size_t>(k));
  return out;
}

std::vector<int> RoundRobinCursor::take(int k) {
  std::vector<int> out;
  out.reserve(static_cast<size_t>(k));
  for (int i = 0; i < k && i < ring_size(); ++i) {
    out.push_back(next_);
    advance();
  }
  return out;
}

std::vector<int> RoundRobinCursor::take_skipping(int k, const std::vector<char>& skip) {
  std::vector<int> out;
  for (int scanned = 0; scanned < ring_size() && static_cast<int>(out.size()) < k; ++scanned) {
    const int aid = next_;
    advance();
    const bool skipped =
        static_cast<size_t>(aid) < skip.size() && skip[static_cast<size_t>(aid)];
    if (!skipped) out.push_back(aid);
  }
  return out;
}

}  // namespace upsim
