#include "lcover/segments.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace lcover {

u64 ResidueClass::size() const {
  if (d == 0 || n % d != 0) throw std::invalid_argument("ResidueClass: d must divide n");
  return euler_phi(factorize(n / d));
}

std::vector<u64> ResidueClass::members() const {
  if (d == 0 || n % d != 0) throw std::invalid_argument("ResidueClass: d must divide n");
  std::vector<u64> out;
  for (u64 x = 0; x < n; x += d) {
    if (std::gcd(x, n) == d) out.push_back(x);
  }
  return out;
}

Bitmap segment_elements(const Segment& seg) {
  if (seg.n < 2 || seg.slope >= seg.n || seg.length >= seg.n) {
    throw std::invalid_argument("segment_elements: requires n >= 2, slope < n, length < n");
  }
  Bitmap out(seg.n);
  u64 acc = 0;
  for (u64 x = 0; x <= seg.length; ++x) {
    out.set(acc);
    acc += seg.slope;
    if (acc >= seg.n) acc -= seg.n;
    if (acc == 0) break;  // the multiples have wrapped around
  }
  return out;
}

u64 totient_ratio(const Factorization& f, u64 d) {
  if (d == 0 || f.n % d != 0) throw std::invalid_argument("totient_ratio: d must divide n");
  // phi(p^e) / phi(p^e') = p^(e-e') when e' >= 1, and (p-1) p^(e-1) when e' = 0.
  u64 ratio = 1;
  for (const auto& pp : f.factors) {
    unsigned removed = 0;
    u64 rest = d;
    while (rest % pp.prime == 0) {
      rest /= pp.prime;
      ++removed;
    }
    if (removed == 0) continue;
    const unsigned kept = pp.exponent - removed;
    if (kept == 0) {
      ratio = checked_mul(ratio, pp.prime - 1);
      for (unsigned e = 1; e < pp.exponent; ++e) ratio = checked_mul(ratio, pp.prime);
    } else {
      for (unsigned e = 0; e < removed; ++e) ratio = checked_mul(ratio, pp.prime);
    }
  }
  return ratio;
}

u64 coverage_count(const Factorization& f, u64 ell, u64 y) {
  if (y >= f.n || ell >= f.n) throw std::invalid_argument("coverage_count: requires y, ell < n");
  const u64 d = std::gcd(y, f.n);  // gcd(0, n) = n
  const Factorization reduced = quotient(f, d);
  return checked_mul(phi_relative(reduced, ell / d), totient_ratio(f, d));
}

u64 coverage_count(u64 n, u64 ell, u64 y) { return coverage_count(factorize(n), ell, y); }

u64 lemma_tau_count(u64 n, u64 d, u64 y, std::span<const u64> units) {
  if (n == 0 || d == 0) throw std::invalid_argument("lemma_tau_count: n, d must be positive");
  const u64 dn = checked_mul(d, n);
  if (dn > kMaxModulus) throw std::out_of_range("lemma_tau_count: d*n must be below 2^63");
  if (std::gcd(y % n, n) != 1) throw std::invalid_argument("lemma_tau_count: y must be a unit");
  std::vector<u64> sorted(units.begin(), units.end());
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw std::invalid_argument("lemma_tau_count: units must be distinct");
  }
  for (u64 b : sorted) {
    if (b >= n || std::gcd(b, n) != 1) {
      throw std::invalid_argument("lemma_tau_count: every b must lie in Z*_n");
    }
  }
  if (sorted.empty()) return 0;
  // phi(dn) / phi(n) = d * prod over primes p | d, p not dividing n, of (1 - 1/p).
  const Factorization fd = factorize(d);
  u64 ratio = d;
  for (const auto& pp : fd.factors) {
    if (n % pp.prime != 0) ratio = ratio / pp.prime * (pp.prime - 1);
  }
  return checked_mul(static_cast<u64>(sorted.size()), ratio);
}

}  // namespace lcover
