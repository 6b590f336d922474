#pragma once

// Exact 64-bit arithmetic used by every covering construction: factorization,
// divisor enumeration, multiplicative functions and the relative totient.

#include <cstdint>
#include <span>
#include <vector>

namespace lcover {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

/// Largest modulus accepted by factorize(): n < 2^63.
inline constexpr u64 kMaxModulus = (u64{1} << 63) - 1;

struct PrimePower {
  u64 prime = 0;
  unsigned exponent = 0;

  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

/// A positive integer together with its prime factorization. Primes are
/// strictly increasing; the list is empty exactly when n == 1.
struct Factorization {
  u64 n = 1;
  std::vector<PrimePower> factors;

  unsigned omega() const { return static_cast<unsigned>(factors.size()); }
  /// Exponent of `p` in n (0 if p does not divide n).
  unsigned valuation(u64 p) const;
};

struct ArithProfile {
  u64 n = 1;
  u64 phi = 1;
  u64 sigma = 1;
  u64 d = 1;
  unsigned omega = 0;
  u64 radical = 1;
};

u64 mul_mod(u64 a, u64 b, u64 m);
u64 pow_mod(u64 base, u64 exp, u64 m);

/// Checked a*b; throws std::overflow_error when the product exceeds 2^64-1.
u64 checked_mul(u64 a, u64 b);

/// Inverse of a modulo m; requires gcd(a, m) == 1 and m >= 1.
u64 inverse_mod(u64 a, u64 m);

/// Deterministic Miller-Rabin, exact for all 64-bit inputs.
bool is_prime(u64 n);

/// Throws std::invalid_argument for n == 0 and std::out_of_range for n >= 2^63.
Factorization factorize(u64 n);

/// Rebuilds a factorization from a prime-power list, validating it.
Factorization from_factors(std::vector<PrimePower> factors);

/// Factorization of n / d for a divisor d of n, derived without refactoring.
Factorization quotient(const Factorization& f, u64 d);

/// All divisors in ascending order.
std::vector<u64> divisors(const Factorization& f);

/// Throws std::overflow_error when sigma(n) does not fit below 2^63.
ArithProfile arith_profile(const Factorization& f);

u64 euler_phi(const Factorization& f);

/// |{1 <= x <= ell : gcd(x, n) = 1}|, with the Z_1 convention that 0 is a
/// unit, so phi_relative(1, 0) == 1. Requires ell < n.
u64 phi_relative(const Factorization& f, u64 ell);

/// Diagnostic lower estimate for phi_relative with constant c:
///   ell > c log^5 n  ->  (ell/n) phi(n) / 4
///   ell > c log n    ->  ell / (4 log ell)
///   otherwise        ->  0
/// where log(x) = max(ln x, 1).
double phi_lower_estimate(const Factorization& f, u64 ell, double c);

inline constexpr u64 kPrimeSieveCap = 100'000'000;

/// Sieve of Eratosthenes; throws std::out_of_range above `cap`.
std::vector<u64> primes_up_to(u64 x, u64 cap = kPrimeSieveCap);

/// max(ln x, 1).
double clamped_log(double x);

}  // namespace lcover
