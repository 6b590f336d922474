#include "lcover/numtheory.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace lcover {
namespace {

constexpr u64 kTrialLimit = 1000;

u64 pollard_brent(u64 n, u64 c) {
  auto f = [&](u64 x) { return (mul_mod(x, x, n) + c) % n; };
  u64 y = 2, r = 1, q = 1, g = 1, x = 0, ys = 0;
  constexpr u64 kBatch = 128;
  while (g == 1) {
    x = y;
    for (u64 i = 0; i < r; ++i) y = f(y);
    u64 k = 0;
    while (k < r && g == 1) {
      ys = y;
      for (u64 i = 0; i < std::min(kBatch, r - k); ++i) {
        y = f(y);
        q = mul_mod(q, x > y ? x - y : y - x, n);
      }
      g = std::gcd(q, n);
      k += kBatch;
    }
    r <<= 1;
  }
  if (g == n) {
    do {
      ys = f(ys);
      g = std::gcd(x > ys ? x - ys : ys - x, n);
    } while (g == 1);
  }
  return g;
}

// Appends the prime factors of m (with multiplicity) to out.
void split(u64 m, std::vector<u64>& out) {
  if (m == 1) return;
  if (is_prime(m)) {
    out.push_back(m);
    return;
  }
  for (u64 c = 1;; ++c) {
    const u64 g = pollard_brent(m, c);
    if (g != m) {
      split(g, out);
      split(m / g, out);
      return;
    }
  }
}

}  // namespace

unsigned Factorization::valuation(u64 p) const {
  for (const auto& pp : factors) {
    if (pp.prime == p) return pp.exponent;
  }
  return 0;
}

u64 mul_mod(u64 a, u64 b, u64 m) {
  return static_cast<u64>(static_cast<u128>(a) * b % m);
}

u64 pow_mod(u64 base, u64 exp, u64 m) {
  u64 result = 1 % m;
  base %= m;
  while (exp > 0) {
    if (exp & 1) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1;
  }
  return result;
}

u64 checked_mul(u64 a, u64 b) {
  u64 out = 0;
  if (__builtin_mul_overflow(a, b, &out)) {
    throw std::overflow_error("64-bit multiplication overflow");
  }
  return out;
}

u64 inverse_mod(u64 a, u64 m) {
  if (m == 1) return 0;
  // Extended Euclid on signed 128-bit to avoid sign juggling.
  __int128 old_r = static_cast<__int128>(a % m), r = m;
  __int128 old_s = 1, s = 0;
  while (r != 0) {
    const __int128 q = old_r / r;
    std::swap(old_r, r);
    r -= q * old_r;
    std::swap(old_s, s);
    s -= q * old_s;
  }
  if (old_r != 1) throw std::invalid_argument("inverse_mod: not invertible");
  __int128 inv = old_s % static_cast<__int128>(m);
  if (inv < 0) inv += m;
  return static_cast<u64>(inv);
}

bool is_prime(u64 n) {
  if (n < 2) return false;
  constexpr std::array<u64, 12> kBases = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  for (u64 p : kBases) {
    if (n % p == 0) return n == p;
  }
  u64 d = n - 1;
  const int s = std::countr_zero(d);
  d >>= s;
  for (u64 a : kBases) {
    u64 x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

Factorization factorize(u64 n) {
  if (n == 0) throw std::invalid_argument("factorize: n must be positive");
  if (n > kMaxModulus) throw std::out_of_range("factorize: n must be below 2^63");
  Factorization f;
  f.n = n;
  u64 m = n;
  for (u64 p = 2; p <= kTrialLimit && p * p <= m; p += (p == 2 ? 1 : 2)) {
    if (m % p != 0) continue;
    unsigned e = 0;
    while (m % p == 0) {
      m /= p;
      ++e;
    }
    f.factors.push_back({p, e});
  }
  if (m > 1) {
    std::vector<u64> rest;
    split(m, rest);
    std::sort(rest.begin(), rest.end());
    for (u64 p : rest) {
      if (!f.factors.empty() && f.factors.back().prime == p) {
        ++f.factors.back().exponent;
      } else {
        f.factors.push_back({p, 1});
      }
    }
  }
  return f;
}

Factorization from_factors(std::vector<PrimePower> factors) {
  Factorization f;
  u64 n = 1;
  for (std::size_t i = 0; i < factors.size(); ++i) {
    const auto& pp = factors[i];
    if (pp.exponent == 0 || !is_prime(pp.prime)) {
      throw std::invalid_argument("from_factors: bad prime power");
    }
    if (i > 0 && factors[i - 1].prime >= pp.prime) {
      throw std::invalid_argument("from_factors: primes must increase");
    }
    for (unsigned e = 0; e < pp.exponent; ++e) n = checked_mul(n, pp.prime);
  }
  if (n > kMaxModulus) throw std::out_of_range("from_factors: n must be below 2^63");
  f.n = n;
  f.factors = std::move(factors);
  return f;
}

Factorization quotient(const Factorization& f, u64 d) {
  if (d == 0 || f.n % d != 0) throw std::invalid_argument("quotient: d must divide n");
  Factorization q;
  q.n = f.n / d;
  for (const auto& pp : f.factors) {
    unsigned e = pp.exponent;
    while (d % pp.prime == 0) {
      d /= pp.prime;
      --e;
    }
    if (e > 0) q.factors.push_back({pp.prime, e});
  }
  return q;
}

std::vector<u64> divisors(const Factorization& f) {
  std::vector<u64> out{1};
  for (const auto& pp : f.factors) {
    const std::size_t base = out.size();
    u64 power = 1;
    for (unsigned e = 1; e <= pp.exponent; ++e) {
      power *= pp.prime;
      for (std::size_t i = 0; i < base; ++i) out.push_back(out[i] * power);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

u64 euler_phi(const Factorization& f) {
  u64 phi = 1;
  for (const auto& pp : f.factors) {
    phi *= pp.prime - 1;
    for (unsigned e = 1; e < pp.exponent; ++e) phi *= pp.prime;
  }
  return phi;
}

ArithProfile arith_profile(const Factorization& f) {
  ArithProfile out;
  out.n = f.n;
  out.phi = euler_phi(f);
  out.omega = f.omega();
  u64 sigma = 1;
  for (const auto& pp : f.factors) {
    out.d *= pp.exponent + 1;
    out.radical *= pp.prime;
    u64 block = 1, power = 1;
    for (unsigned e = 1; e <= pp.exponent; ++e) {
      power = checked_mul(power, pp.prime);
      block += power;
      if (block < power) throw std::overflow_error("arith_profile: sigma overflow");
    }
    sigma = checked_mul(sigma, block);
  }
  if (sigma > kMaxModulus) throw std::overflow_error("arith_profile: sigma(n) >= 2^63");
  out.sigma = sigma;
  return out;
}

u64 phi_relative(const Factorization& f, u64 ell) {
  if (ell >= f.n) throw std::invalid_argument("phi_relative: requires ell < n");
  if (f.n == 1) return 1;  // Z_1 = {0} and 0 is a unit there
  if (ell == 0) return 0;
  const unsigned omega = f.omega();

  if (omega >= 64 || (u64{1} << omega) > ell) {
    // Scan: ell * omega work.
    u64 count = 0;
    for (u64 x = 1; x <= ell; ++x) {
      bool coprime = true;
      for (const auto& pp : f.factors) {
        if (x % pp.prime == 0) {
          coprime = false;
          break;
        }
      }
      count += coprime;
    }
    return count;
  }

  // Inclusion-exclusion over squarefree q | rad(n); branches with q > ell
  // contribute nothing and are pruned.
  __int128 total = 0;
  auto walk = [&](auto&& self, std::size_t i, u64 q, int sign) -> void {
    if (i == f.factors.size()) {
      total += sign * static_cast<__int128>(ell / q);
      return;
    }
    self(self, i + 1, q, sign);
    const u64 p = f.factors[i].prime;
    if (q <= ell / p) self(self, i + 1, q * p, -sign);
  };
  walk(walk, 0, 1, 1);
  return static_cast<u64>(total);
}

double clamped_log(double x) { return x > 0 ? std::max(std::log(x), 1.0) : 1.0; }

double phi_lower_estimate(const Factorization& f, u64 ell, double c) {
  if (ell < 1) throw std::invalid_argument("phi_lower_estimate: requires ell >= 1");
  const double n = static_cast<double>(f.n);
  const double logn = clamped_log(n);
  const double l = static_cast<double>(ell);
  if (l > c * std::pow(logn, 5)) {
    return l / n * static_cast<double>(euler_phi(f)) / 4.0;
  }
  if (l > c * logn) return l / (4.0 * clamped_log(l));
  return 0.0;
}

std::vector<u64> primes_up_to(u64 x, u64 cap) {
  if (x > cap) {
    throw std::out_of_range("primes_up_to: " + std::to_string(x) + " exceeds cap " +
                            std::to_string(cap));
  }
  std::vector<u64> out;
  if (x < 2) return out;
  std::vector<bool> composite(x + 1, false);
  for (u64 p = 2; p <= x; ++p) {
    if (composite[p]) continue;
    out.push_back(p);
    for (u64 m = p * p; m <= x; m += p) composite[m] = true;
  }
  return out;
}

}  // namespace lcover
