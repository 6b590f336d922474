#include <stdexcept>
#include <vector>

#include "lcover/oracle.hpp"

namespace lcover::oracle {

u64 gcd(u64 a, u64 b) {
  while (b != 0) {
    const u64 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

u64 totient_scan(u64 n) {
  if (n == 1) return 1;
  u64 c = 0;
  for (u64 x = 1; x < n; ++x) c += gcd(x, n) == 1;
  return c;
}

u64 phi_relative_scan(u64 n, u64 ell) {
  if (n == 0) throw std::invalid_argument("phi_relative_scan: n must be positive");
  if (n == 1) return 1;
  u64 c = 0;
  for (u64 x = 1; x <= ell; ++x) c += gcd(x, n) == 1;
  return c;
}

std::vector<u64> phi_relative_prefix(u64 n) {
  if (n == 0) throw std::invalid_argument("phi_relative_prefix: n must be positive");
  std::vector<u64> out(n, 0);
  if (n == 1) {
    out[0] = 1;
    return out;
  }
  for (u64 x = 1; x < n; ++x) out[x] = out[x - 1] + (gcd(x, n) == 1);
  return out;
}

std::vector<u64> coverage_counts(u64 n, u64 ell) {
  if (n == 0) throw std::invalid_argument("coverage_counts: n must be positive");
  std::vector<u64> count(n, 0);
  std::vector<u64> stamp(n, 0);
  for (u64 x = 0; x < n; ++x) {
    if (gcd(x, n) != 1) continue;
    for (u64 b = 0; b <= ell; ++b) {
      const u64 y = (x * b) % n;
      if (stamp[y] == x + 1) continue;  // count each unit once per residue
      stamp[y] = x + 1;
      ++count[y];
    }
  }
  return count;
}

u64 coverage_count_scan(u64 n, u64 ell, u64 y) {
  if (n == 0 || y >= n) throw std::invalid_argument("coverage_count_scan: bad range");
  u64 c = 0;
  for (u64 x = 0; x < n; ++x) {
    if (gcd(x, n) != 1) continue;
    for (u64 b = 0; b <= ell; ++b) {
      if ((x * b) % n == y) {
        ++c;
        break;
      }
    }
  }
  return c;
}

u64 lemma_tau_scan(u64 n, u64 d, u64 y, const std::vector<u64>& set) {
  if (n == 0 || d == 0) throw std::invalid_argument("lemma_tau_scan: n and d must be positive");
  const u64 big = d * n;
  u64 c = 0;
  for (u64 x = 0; x < big; ++x) {
    if (gcd(x, big) != 1) continue;
    for (u64 b : set) {
      if ((x * b) % n == y % n) {
        ++c;
        break;
      }
    }
  }
  return c;
}

std::vector<u64> divisors_scan(u64 n) {
  std::vector<u64> out;
  for (u64 d = 1; d <= n; ++d) {
    if (n % d == 0) out.push_back(d);
  }
  return out;
}

bool divisor_cover_scan(u64 n, double s, const std::vector<u64>& basis) {
  const std::vector<u64> divs = divisors_scan(n);
  std::vector<bool> hit(n + 1, false);
  for (u64 a : divs) {
    if (static_cast<double>(a) > s) continue;
    for (u64 b : basis) hit[gcd(a * b, n)] = true;
  }
  for (u64 d : divs) {
    if (!hit[d]) return false;
  }
  return true;
}

std::vector<u64> uncovered_scan(u64 n, u64 ell, const std::vector<u64>& slopes) {
  std::vector<bool> seen(n, false);
  for (u64 x : slopes) {
    for (u64 b = 0; b <= ell; ++b) seen[(x % n) * b % n] = true;
  }
  std::vector<u64> out;
  for (u64 y = 0; y < n; ++y) {
    if (!seen[y]) out.push_back(y);
  }
  return out;
}

}  // namespace lcover::oracle
