#include "lcover/numtheory.hpp"

#include <numeric>
#include <random>
#include <stdexcept>

#include "gtest/gtest.h"
#include "lcover/oracle.hpp"
#include "table_util.hpp"

namespace lcover {
namespace {

TEST(FactorizeTest, SmallExamples) {
  EXPECT_TRUE(factorize(1).factors.empty());
  const Factorization f = factorize(420);
  const std::vector<PrimePower> want = {{2, 2}, {3, 1}, {5, 1}, {7, 1}};
  EXPECT_EQ(f.factors, want);
  EXPECT_EQ(f.n, 420u);
  EXPECT_EQ(f.valuation(2), 2u);
  EXPECT_EQ(f.valuation(11), 0u);
}

TEST(FactorizeTest, MersennePrime) {
  const u64 m61 = (u64{1} << 61) - 1;
  ASSERT_TRUE(is_prime(m61));
  const Factorization f = factorize(m61);
  ASSERT_EQ(f.factors.size(), 1u);
  EXPECT_EQ(f.factors[0].prime, m61);
  EXPECT_EQ(f.factors[0].exponent, 1u);
}

TEST(FactorizeTest, HardSemiprimes) {
  // Two ~31-bit primes; trial division alone would take far too long.
  const u64 p = 2147483647, q = 2147483629;
  const Factorization f = factorize(p * q);
  ASSERT_EQ(f.factors.size(), 2u);
  EXPECT_EQ(f.factors[0].prime, q);
  EXPECT_EQ(f.factors[1].prime, p);
}

TEST(FactorizeTest, RejectsOutOfRange) {
  EXPECT_THROW(factorize(0), std::invalid_argument);
  EXPECT_THROW(factorize(u64{1} << 63), std::out_of_range);
  EXPECT_NO_THROW(factorize(kMaxModulus));
}

TEST(FactorizeTest, RoundTripsRandomProducts) {
  std::mt19937_64 rng(7);
  const std::vector<u64> primes = primes_up_to(2000);
  for (int iter = 0; iter < 10000; ++iter) {
    std::vector<PrimePower> factors;
    u64 n = 1;
    for (u64 p : primes) {
      if (rng() % 40 != 0) continue;
      unsigned e = 1 + static_cast<unsigned>(rng() % 3);
      u64 pe = 1;
      bool fits = true;
      for (unsigned i = 0; i < e; ++i) {
        if (pe > kMaxModulus / p) fits = false;
        else pe *= p;
      }
      if (!fits || n > kMaxModulus / pe) break;
      n *= pe;
      factors.push_back({p, e});
    }
    // Occasionally throw in a large prime cofactor.
    if (rng() % 3 == 0) {
      const u64 big = 1'000'000'007;
      if (n <= kMaxModulus / big) {
        n *= big;
        factors.push_back({big, 1});
      }
    }
    const Factorization f = factorize(n);
    ASSERT_EQ(f.factors, factors) << n;
    EXPECT_EQ(from_factors(factors).n, n);
  }
}

TEST(FactorizeTest, FromFactorsValidates) {
  EXPECT_THROW(from_factors({{4, 1}}), std::invalid_argument);
  EXPECT_THROW(from_factors({{3, 1}, {2, 1}}), std::invalid_argument);
  EXPECT_THROW(from_factors({{2, 0}}), std::invalid_argument);
}

TEST(DivisorsTest, Examples) {
  EXPECT_EQ(divisors(factorize(12)), (std::vector<u64>{1, 2, 3, 4, 6, 12}));
  EXPECT_EQ(divisors(factorize(1)), (std::vector<u64>{1}));
  EXPECT_EQ(divisors(factorize(30)), (std::vector<u64>{1, 2, 3, 5, 6, 10, 15, 30}));
}

TEST(DivisorsTest, MatchesScan) {
  for (u64 n = 1; n <= 2000; ++n) {
    ASSERT_EQ(divisors(factorize(n)), oracle::divisors_scan(n)) << n;
  }
}

TEST(DivisorsTest, QuotientMatchesRefactoring) {
  for (u64 n = 1; n <= 600; ++n) {
    const Factorization f = factorize(n);
    for (u64 d : divisors(f)) {
      EXPECT_EQ(quotient(f, d).factors, factorize(n / d).factors);
    }
  }
}

TEST(ArithProfileTest, Examples) {
  const ArithProfile p30 = arith_profile(factorize(30));
  EXPECT_EQ(p30.phi, 8u);
  EXPECT_EQ(p30.sigma, 72u);
  EXPECT_EQ(p30.d, 8u);
  EXPECT_EQ(p30.omega, 3u);
  EXPECT_EQ(p30.radical, 30u);

  const ArithProfile p1 = arith_profile(factorize(1));
  EXPECT_EQ(p1.phi, 1u);
  EXPECT_EQ(p1.sigma, 1u);
  EXPECT_EQ(p1.d, 1u);
  EXPECT_EQ(p1.omega, 0u);
  EXPECT_EQ(p1.radical, 1u);

  EXPECT_EQ(arith_profile(factorize(35)).sigma, 48u);
}

TEST(ArithProfileTest, SigmaOverflowSignals) {
  // n = 3 * 2^61 fits, sigma(n) = 4 * (2^62 - 1) does not.
  const u64 n = 3 * (u64{1} << 61);
  Factorization f;
  ASSERT_NO_THROW(f = factorize(n));
  EXPECT_THROW(arith_profile(f), std::overflow_error);
}

TEST(ArithProfileTest, Properties) {
  for (u64 n = 1; n <= 5000; ++n) {
    const ArithProfile p = arith_profile(factorize(n));
    ASSERT_EQ(p.phi, oracle::totient_scan(n)) << n;
    EXPECT_LE(static_cast<u128>(p.sigma) * p.phi, static_cast<u128>(n) * n) << n;
    if (n > 1) {
      EXPECT_GE(p.sigma, n + 1);
      EXPECT_GE(p.d, 2u);
    }
    const auto divs = oracle::divisors_scan(n);
    EXPECT_EQ(p.d, divs.size());
    EXPECT_EQ(p.sigma, std::accumulate(divs.begin(), divs.end(), u64{0}));
  }
}

TEST(ArithProfileTest, ClassPartition) {
  // The classes Z_{n,d} partition Z_n: sum over d | n of phi(n / d) is n.
  for (u64 n = 1; n <= 5000; ++n) {
    const Factorization f = factorize(n);
    u64 total = 0;
    for (u64 d : divisors(f)) total += euler_phi(quotient(f, d));
    ASSERT_EQ(total, n);
  }
}

TEST(PhiRelativeTest, Examples) {
  EXPECT_EQ(phi_relative(factorize(10), 4), 2u);
  EXPECT_EQ(phi_relative(factorize(30), 5), 1u);
  EXPECT_EQ(phi_relative(factorize(97), 0), 0u);
  EXPECT_EQ(phi_relative(factorize(1), 0), 1u);
  EXPECT_THROW(phi_relative(factorize(10), 10), std::invalid_argument);
}

TEST(PhiRelativeTest, MatchesFrozenTable) {
  const auto table = testing::load_table("phi_relative");
  ASSERT_EQ(table.kind, "phi_relative");
  ASSERT_FALSE(table.rows.empty());
  for (const auto& [key, value] : table.rows) {
    const auto k = testing::split_ints(key);
    EXPECT_EQ(phi_relative(factorize(k[0]), k[1]), std::stoull(value)) << key;
  }
}

TEST(PhiRelativeTest, MonotoneAndFull) {
  for (u64 n = 2; n <= 1500; ++n) {
    const Factorization f = factorize(n);
    u64 prev = 0;
    for (u64 ell = 0; ell < n; ++ell) {
      const u64 v = phi_relative(f, ell);
      ASSERT_GE(v, prev);
      prev = v;
    }
    EXPECT_EQ(prev, euler_phi(f));
  }
}

TEST(PhiRelativeTest, BothStrategiesAgree) {
  // 2^omega > ell selects the scan, otherwise inclusion-exclusion; primorials
  // sit on both sides of the switch.
  const u64 n = 614889782588491410ULL;  // product of the first 15 primes
  const Factorization f = factorize(n);
  for (u64 ell : {1ULL, 2ULL, 47ULL, 1000ULL, 32767ULL, 32768ULL, 40000ULL, 1000000ULL}) {
    u64 scan = 0;
    for (u64 x = 1; x <= ell; ++x) scan += std::gcd(x, n) == 1;
    EXPECT_EQ(phi_relative(f, ell), scan) << ell;
  }
}

TEST(PhiLowerEstimateTest, Branches) {
  const Factorization f = factorize(u64{1} << 20);
  const double ln = std::log(static_cast<double>(u64{1} << 20));
  EXPECT_EQ(phi_lower_estimate(f, 5, 1.0), 0.0);
  const u64 mid = 1000;  // between ln n and ln^5 n
  EXPECT_DOUBLE_EQ(phi_lower_estimate(f, mid, 1.0), mid / (4.0 * std::log(1000.0)));
  const u64 big = static_cast<u64>(std::pow(ln, 5)) + 10;
  EXPECT_DOUBLE_EQ(phi_lower_estimate(f, big, 1.0),
                   static_cast<double>(big) / static_cast<double>(u64{1} << 20) * (1 << 19) / 4.0);
}

TEST(PhiLowerEstimateTest, PrimeModulus) {
  const u64 p = 1'000'003;
  const Factorization f = factorize(p);
  for (u64 ell : {100'000ULL, 500'000ULL, 999'999ULL}) {
    const double est = phi_lower_estimate(f, ell, 0.1);
    EXPECT_DOUBLE_EQ(est, static_cast<double>(ell) / p * (p - 1) / 4.0);
    EXPECT_LE(est, static_cast<double>(ell));
  }
}

TEST(PhiLowerEstimateTest, DominatedByExactCount) {
  // On a grid near 2^20 with ell above the log^5 threshold the estimate stays
  // below the exact relative totient.
  std::mt19937_64 rng(3);
  for (int i = 0; i < 200; ++i) {
    const u64 n = (u64{1} << 20) + rng() % (u64{1} << 20);
    const Factorization f = factorize(n);
    const u64 ell = 400'000 + rng() % (n - 400'000);
    EXPECT_LE(phi_lower_estimate(f, ell, 1.0), static_cast<double>(phi_relative(f, ell))) << n;
  }
}

TEST(PrimesTest, Sieve) {
  EXPECT_EQ(primes_up_to(10), (std::vector<u64>{2, 3, 5, 7}));
  EXPECT_TRUE(primes_up_to(1).empty());
  EXPECT_EQ(primes_up_to(5).size(), 3u);
  EXPECT_EQ(primes_up_to(1'000'000).size(), 78498u);
  EXPECT_THROW(primes_up_to(101, 100), std::out_of_range);
}

TEST(PrimesTest, MillerRabinMatchesSieve) {
  const auto primes = primes_up_to(100000);
  std::size_t idx = 0;
  for (u64 x = 0; x <= 100000; ++x) {
    const bool want = idx < primes.size() && primes[idx] == x;
    ASSERT_EQ(is_prime(x), want) << x;
    if (want) ++idx;
  }
  // Strong pseudoprimes to several small bases.
  EXPECT_FALSE(is_prime(3215031751ULL));
  EXPECT_FALSE(is_prime(3825123056546413051ULL));
}

TEST(ModArithTest, InverseAndPow) {
  EXPECT_EQ(inverse_mod(3, 10), 7u);
  EXPECT_EQ(pow_mod(2, 10, 1000), 24u);
  EXPECT_THROW(inverse_mod(4, 10), std::invalid_argument);
  EXPECT_THROW(checked_mul(u64{1} << 33, u64{1} << 33), std::overflow_error);
  EXPECT_DOUBLE_EQ(clamped_log(1.0), 1.0);
  EXPECT_DOUBLE_EQ(clamped_log(100.0), std::log(100.0));
}

}  // namespace
}  // namespace lcover
