#include "lcover/divisor_cover.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace lcover {

std::string_view to_string(BasisKind kind) {
  switch (kind) {
    case BasisKind::kLargeDivisorsPlusOne:
      return "large-divisors-plus-one";
    case BasisKind::kDivisorLatticeOfM:
      return "divisor-lattice-of-m";
    case BasisKind::kTrivial:
      return "trivial";
  }
  return "unknown";
}

u64 odot(u64 a, u64 b, u64 n) {
  if (n == 0 || a == 0 || b == 0 || n % a != 0 || n % b != 0) {
    throw std::invalid_argument("odot: operands must divide n");
  }
  return std::gcd(mul_mod(a, b, n), n);
}

DivisorBasis basis_above_threshold(const Factorization& f, double s) {
  DivisorBasis out;
  out.n = f.n;
  out.s = std::max(s, 1.0);
  out.kind = BasisKind::kLargeDivisorsPlusOne;
  for (u64 d : divisors(f)) {
    if (d == 1 || static_cast<double>(d) > out.s) out.basis.push_back(d);
  }
  return out;
}

u64 large_divisor_linear_sigma(const Factorization& f, u64 r) {
  if (r < 1 || r > f.n) throw std::invalid_argument("large_divisor_linear_sigma: requires 1 <= r <= n");

  for (const auto& pp : f.factors) {
    u64 block = 1;
    for (unsigned e = 0; e < pp.exponent; ++e) block *= pp.prime;
    if (block < r) continue;
    u64 m = 1;
    while (m < r) m *= pp.prime;
    return m;
  }

  struct Weighted {
    double weight;
    u64 prime;
    u64 block;
  };
  std::vector<Weighted> order;
  for (const auto& pp : f.factors) {
    u64 block = 1;
    for (unsigned e = 0; e < pp.exponent; ++e) block *= pp.prime;
    const double p = static_cast<double>(pp.prime);
    order.push_back({pp.exponent * p * std::log(p), pp.prime, block});
  }
  std::sort(order.begin(), order.end(), [](const Weighted& a, const Weighted& b) {
    if (a.weight != b.weight) return a.weight > b.weight;
    return a.prime > b.prime;
  });
  u64 m = 1;
  for (const auto& w : order) {
    m *= w.block;
    if (m >= r) return m;
  }
  return m;  // unreachable for r <= n
}

DivisorBasis basis_divisor_lattice(const Factorization& f, double s) {
  DivisorBasis out;
  out.n = f.n;
  out.s = std::max(s, 1.0);
  out.kind = BasisKind::kDivisorLatticeOfM;
  // r = ceil(n / s), nudged so that r * s >= n holds in floating point too.
  const double n = static_cast<double>(f.n);
  u64 r = static_cast<u64>(std::min(std::ceil(n / out.s), n));
  r = std::clamp<u64>(r, 1, f.n);
  while (r < f.n && static_cast<double>(r) * out.s < n) ++r;
  out.m = large_divisor_linear_sigma(f, r);
  out.basis = divisors(quotient(f, f.n / out.m));
  return out;
}

DivisorCoverCheck check_divisor_cover(const Factorization& f, double s,
                                      const std::vector<u64>& basis) {
  const std::vector<u64> all = divisors(f);
  if (all.size() > kDivisorCheckCap) {
    throw std::out_of_range("check_divisor_cover: too many divisors");
  }
  std::vector<u64> small;
  for (u64 d : all) {
    if (static_cast<double>(d) <= s) small.push_back(d);
  }
  std::vector<char> hit(all.size(), 0);
  for (u64 b : basis) {
    if (b == 0 || f.n % b != 0) throw std::invalid_argument("check_divisor_cover: basis element must divide n");
    for (u64 d1 : small) {
      const u64 d = odot(d1, b, f.n);
      const auto it = std::lower_bound(all.begin(), all.end(), d);
      hit[static_cast<std::size_t>(it - all.begin())] = 1;
    }
  }
  DivisorCoverCheck out;
  for (std::size_t i = 0; i < all.size(); ++i) {
    if (!hit[i]) {
      out.witness = all[i];
      return out;
    }
  }
  out.covered = true;
  return out;
}

}  // namespace lcover
