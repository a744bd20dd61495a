#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <limits>
#include <optional>
#include <thread>
#include <vector>

namespace parayb {

struct Exec {
  unsigned jobs = 1;
};

// Smallest i in [0, count) with fails(i). Work is split into chunks handed
// out in increasing order, so the answer does not depend on the job count.
template <class Pred>
std::optional<std::uint64_t> first_failure(std::uint64_t count, const Exec& ex, Pred fails) {
  constexpr std::uint64_t none = std::numeric_limits<std::uint64_t>::max();
  unsigned jobs = std::max(1u, ex.jobs);
  if (jobs == 1 || count < 4096) {
    for (std::uint64_t i = 0; i < count; ++i)
      if (fails(i)) return i;
    return std::nullopt;
  }
  const std::uint64_t chunk = std::max<std::uint64_t>(1024, count / (jobs * 64));
  std::atomic<std::uint64_t> next{0}, best{none};
  auto worker = [&] {
    for (;;) {
      std::uint64_t start = next.fetch_add(chunk);
      if (start >= count || start >= best.load()) return;
      std::uint64_t stop = std::min(count, start + chunk);
      for (std::uint64_t i = start; i < stop; ++i) {
        if (fails(i)) {
          std::uint64_t cur = best.load();
          while (i < cur && !best.compare_exchange_weak(cur, i)) {
          }
          return;
        }
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < jobs; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (best.load() == none) return std::nullopt;
  return best.load();
}

// Splits a linear index into mixed-radix digits, most significant first.
inline std::vector<std::uint32_t> digits(std::uint64_t idx, const std::vector<std::uint32_t>& radix) {
  std::vector<std::uint32_t> out(radix.size());
  for (std::size_t k = radix.size(); k-- > 0;) {
    out[k] = static_cast<std::uint32_t>(idx % radix[k]);
    idx /= radix[k];
  }
  return out;
}

inline std::uint64_t space_size(const std::vector<std::uint32_t>& radix) {
  std::uint64_t s = 1;
  for (auto r : radix) s *= r;
  return s;
}

}  // namespace parayb
