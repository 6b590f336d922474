#pragma once

// Data-parallel inner loops of the covering pipeline. Each kernel has a plain
// serial reference in kernels::serial with identical results; the tests check
// them against each other and bench/ times them.

#include <cstdint>
#include <span>
#include <vector>

#include "lcover/bitmap.hpp"
#include "lcover/numtheory.hpp"

namespace lcover::kernels {

/// out |= union over slopes of {slope * x mod n : 0 <= x <= ell}.
/// ell may exceed n - 1; the multiples simply wrap.
void mark_segments(u64 n, u64 ell, std::span<const u64> slopes, Bitmap& out);

/// Residues y in [0, n) with gcd(y, n) <= max_gcd; gcd(0, n) is taken as n.
/// `divisors_of_n` must hold every divisor of n.
Bitmap gcd_threshold_mask(u64 n, u64 max_gcd, std::span<const u64> divisors_of_n);

/// For each slope p in pool: |{p*x mod n : 0 <= x <= ell} intersected with
/// `live`|, counting each residue once.
std::vector<std::uint32_t> segment_gains(u64 n, u64 ell, std::span<const u64> pool,
                                         const Bitmap& live);

namespace serial {

void mark_segments(u64 n, u64 ell, std::span<const u64> slopes, Bitmap& out);
Bitmap gcd_threshold_mask(u64 n, u64 max_gcd);
std::vector<std::uint32_t> segment_gains(u64 n, u64 ell, std::span<const u64> pool,
                                         const Bitmap& live);

}  // namespace serial
}  // namespace lcover::kernels
