#pragma once

// The divisor semigroup (D_n, odot) with a odot b = gcd(ab, n), and bases B
// satisfying D_n^{<=s} odot B = D_n.

#include <optional>
#include <string_view>
#include <vector>

#include "lcover/numtheory.hpp"

namespace lcover {

enum class BasisKind { kLargeDivisorsPlusOne, kDivisorLatticeOfM, kTrivial };

std::string_view to_string(BasisKind kind);

struct DivisorBasis {
  u64 n = 1;
  double s = 1.0;
  std::vector<u64> basis;  // sorted ascending
  BasisKind kind = BasisKind::kTrivial;
  u64 m = 0;  // the chosen large divisor, for kDivisorLatticeOfM
};

/// gcd(a*b, n). Throws std::invalid_argument unless a | n and b | n.
u64 odot(u64 a, u64 b, u64 n);

/// {d | n : d > s} with 1 added; s is clamped to at least 1.
DivisorBasis basis_above_threshold(const Factorization& f, double s);

/// A divisor m >= r of n with small divisor count and sigma(m) = O(m).
///
/// If some full prime-power block p^e of n reaches r (primes scanned in
/// increasing order, first hit wins), returns the least power p^k >= r.
/// Otherwise orders the blocks by weight e*p*ln(p), heaviest first, and
/// returns the shortest prefix product that reaches r.
u64 large_divisor_linear_sigma(const Factorization& f, u64 r);

/// B = D_m with m = large_divisor_linear_sigma(f, ceil(n / s)).
DivisorBasis basis_divisor_lattice(const Factorization& f, double s);

struct DivisorCoverCheck {
  bool covered = false;
  std::optional<u64> witness;  // smallest divisor not reached
};

inline constexpr std::size_t kDivisorCheckCap = 1'000'000;

/// Enumerates D_n^{<=s} odot B and compares it against D_n.
/// Throws std::out_of_range when d(n) exceeds kDivisorCheckCap.
DivisorCoverCheck check_divisor_cover(const Factorization& f, double s,
                                      const std::vector<u64>& basis);

}  // namespace lcover
