#pragma once

// Segment algebra over Z_n and the exact counts of how many unit slopes reach
// a given residue.

#include <span>
#include <vector>

#include "lcover/bitmap.hpp"
#include "lcover/numtheory.hpp"

namespace lcover {

/// {slope * x mod n : 0 <= x <= length}.
struct Segment {
  u64 n = 2;
  u64 slope = 0;
  u64 length = 0;
};

/// Z_{n,d} = {x in Z_n : gcd(x, n) = d}; its size is phi(n / d).
struct ResidueClass {
  u64 n = 1;
  u64 d = 1;

  u64 size() const;
  std::vector<u64> members() const;
};

/// Throws std::invalid_argument unless n >= 2, slope < n and length < n.
Bitmap segment_elements(const Segment& seg);

/// Number of x in Z*_n with x*b == y (mod n) for some 0 <= b <= ell:
///   phi(n/d, ell/d) * phi(n) / phi(n/d),   d = gcd(y, n).
/// For y == 0 this evaluates to phi(n) (b = 0 always works).
u64 coverage_count(const Factorization& f, u64 ell, u64 y);
u64 coverage_count(u64 n, u64 ell, u64 y);

/// phi(n) / phi(n/d) as an exact integer, read off the two factorizations.
u64 totient_ratio(const Factorization& f, u64 d);

/// Number of x in Z*_{dn} with x*b == y (mod n) for some b in `units`:
///   |units| * phi(dn) / phi(n).
/// Requires gcd(y, n) = 1, every element of `units` a distinct unit of Z_n and
/// d*n < 2^63.
u64 lemma_tau_count(u64 n, u64 d, u64 y, std::span<const u64> units);

}  // namespace lcover
