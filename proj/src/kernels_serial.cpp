#include <numeric>

#include "lcover/kernels.hpp"

namespace lcover::kernels::serial {

void mark_segments(u64 n, u64 ell, std::span<const u64> slopes, Bitmap& out) {
  for (u64 slope : slopes) {
    for (u64 x = 0; x <= ell && x < n; ++x) out.set(mul_mod(slope, x, n));
  }
}

Bitmap gcd_threshold_mask(u64 n, u64 max_gcd) {
  Bitmap out(n);
  for (u64 y = 0; y < n; ++y) {
    if (std::gcd(y, n) <= max_gcd) out.set(y);
  }
  return out;
}

std::vector<std::uint32_t> segment_gains(u64 n, u64 ell, std::span<const u64> pool,
                                         const Bitmap& live) {
  std::vector<std::uint32_t> gains(pool.size(), 0);
  for (std::size_t i = 0; i < pool.size(); ++i) {
    Bitmap seen(n);
    for (u64 x = 0; x <= ell && x < n; ++x) {
      const u64 y = mul_mod(pool[i], x, n);
      if (live.test(y) && !seen.test(y)) {
        seen.set(y);
        ++gains[i];
      }
    }
  }
  return gains;
}

}  // namespace lcover::kernels::serial
