#include "lcover/kernels.hpp"

#include <algorithm>

#include <omp.h>

namespace lcover::kernels {

void mark_segments(u64 n, u64 ell, std::span<const u64> slopes, Bitmap& out) {
  const auto count = static_cast<std::int64_t>(slopes.size());
#pragma omp parallel
  {
    // Private bitmaps avoid atomic updates; merged once per thread.
    Bitmap local(n);
#pragma omp for schedule(dynamic, 16) nowait
    for (std::int64_t i = 0; i < count; ++i) {
      const u64 slope = slopes[static_cast<std::size_t>(i)] % n;
      u64 acc = 0;
      for (u64 x = 0; x <= ell; ++x) {
        local.set(acc);
        acc += slope;
        if (acc >= n) acc -= n;
        if (acc == 0) break;
      }
    }
#pragma omp critical(lcover_mark_segments)
    out |= local;
  }
}

Bitmap gcd_threshold_mask(u64 n, u64 max_gcd, std::span<const u64> divisors_of_n) {
  // gcd(y, n) > max_gcd iff some divisor d > max_gcd of n divides y; only the
  // minimal such divisors need sieving.
  std::vector<u64> bad;
  for (u64 d : divisors_of_n) {
    if (d <= max_gcd) continue;
    const bool minimal = std::none_of(bad.begin(), bad.end(), [d](u64 b) { return d % b == 0; });
    if (minimal) bad.push_back(d);
  }
  Bitmap out(n);
  out.fill();
  const u64 words = (n + 63) / 64;
  constexpr u64 kChunkWords = 1024;
  const auto chunks = static_cast<std::int64_t>((words + kChunkWords - 1) / kChunkWords);
#pragma omp parallel for schedule(static)
  for (std::int64_t c = 0; c < chunks; ++c) {
    const u64 lo = static_cast<u64>(c) * kChunkWords * 64;
    const u64 hi = std::min(n, lo + kChunkWords * 64);
    for (u64 d : bad) {
      for (u64 y = (lo + d - 1) / d * d; y < hi; y += d) out.reset(y);
    }
  }
  return out;
}

std::vector<std::uint32_t> segment_gains(u64 n, u64 ell, std::span<const u64> pool,
                                         const Bitmap& live) {
  std::vector<std::uint32_t> gains(pool.size(), 0);
  const auto count = static_cast<std::int64_t>(pool.size());
#pragma omp parallel for schedule(dynamic, 8)
  for (std::int64_t i = 0; i < count; ++i) {
    const u64 slope = pool[static_cast<std::size_t>(i)] % n;
    std::uint32_t g = 0;
    u64 acc = 0;
    for (u64 x = 0; x <= ell; ++x) {
      g += live.test(acc);
      acc += slope;
      if (acc >= n) acc -= n;
      if (acc == 0) break;  // multiples repeat from here on
    }
    gains[static_cast<std::size_t>(i)] = g;
  }
  return gains;
}

}  // namespace lcover::kernels
