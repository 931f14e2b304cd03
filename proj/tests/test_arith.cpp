#include "nonres/arith.hpp"

#include <gtest/gtest.h>

#include <numeric>
#include <random>

using namespace nonres;

TEST(ModPow, SmallValues) {
    EXPECT_EQ(mod_pow(3, 4, 5), 1u);
    EXPECT_EQ(mod_pow(2, 10, 1000), 24u);
    EXPECT_EQ(mod_pow(7, 0, 13), 1u);
    EXPECT_EQ(mod_pow(5, 3, 1), 0u);
}

TEST(ModPow, NegativeBaseIsReduced) {
    EXPECT_EQ(mod_pow(-1, 3, 7), 6u);
    EXPECT_EQ(mod_pow(-3, 2, 7), 2u);
}

TEST(ModPow, FermatOnLargePrime) {
    const u64 p = 18446744073709551557ull;  // largest 64-bit prime
    EXPECT_EQ(mod_pow(123456789, p - 1, p), 1u);
}

TEST(IsPrime, AgreesWithSieve) {
    const auto ps = primes_up_to(100000);
    std::vector<bool> flag(100001, false);
    for (u64 p : ps) flag[p] = true;
    for (u64 n = 0; n <= 100000; ++n) ASSERT_EQ(is_prime(n), flag[n]) << n;
}

TEST(IsPrime, StrongPseudoprimes) {
    EXPECT_FALSE(is_prime(3215031751ull));
    EXPECT_FALSE(is_prime(3825123056546413051ull));
    EXPECT_TRUE(is_prime(2147483647ull));
    EXPECT_TRUE(is_prime(1000000007ull));
}

TEST(Sieve, SegmentsMatchFullSieve) {
    const auto all = primes_up_to(50000);
    std::vector<u64> joined;
    for (u64 lo = 0; lo < 50001; lo += 777) {
        auto part = primes_in_range(lo, std::min<u64>(lo + 777, 50001));
        joined.insert(joined.end(), part.begin(), part.end());
    }
    EXPECT_EQ(joined, all);
}

TEST(Sieve, RangeNearTenMillion) {
    const auto ps = primes_in_range(10000000, 10000100);
    for (u64 p : ps) EXPECT_TRUE(is_prime(p));
    EXPECT_EQ(ps.front(), 10000019u);
}

TEST(PrimeCursor, StopsAtCap) {
    PrimeCursor c(30, 7);
    std::vector<u64> got;
    while (auto q = c.next()) got.push_back(*q);
    EXPECT_EQ(got, (std::vector<u64>{2, 3, 5, 7, 11, 13, 17, 19, 23, 29}));
}

TEST(Totients, MatchGcdCount) {
    const auto phi = totients_up_to(300);
    for (u64 n = 1; n <= 300; ++n) {
        u64 count = 0;
        for (u64 k = 1; k <= n; ++k) count += std::gcd(k, n) == 1;
        ASSERT_EQ(phi[n], count) << n;
    }
}

TEST(Factorize, ReconstructsRandomNumbers) {
    std::mt19937_64 rng(7);
    for (int i = 0; i < 200; ++i) {
        const u64 n = rng() | 1;
        const auto fac = factorize(n);
        u64 prod = 1;
        for (const auto& [q, e] : fac) {
            EXPECT_TRUE(is_prime(q));
            for (unsigned k = 0; k < e; ++k) prod *= q;
        }
        EXPECT_EQ(prod, n);
    }
}

TEST(Factorize, SemiprimeOfLargePrimes) {
    const u64 n = 4294967291ull * 4294967279ull;
    const auto fac = factorize(n);
    ASSERT_EQ(fac.size(), 2u);
    EXPECT_EQ(fac[0].prime, 4294967279ull);
    EXPECT_EQ(fac[1].prime, 4294967291ull);
}

TEST(Divisors, OfSixty) {
    EXPECT_EQ(divisors(60), (std::vector<u64>{1, 2, 3, 4, 5, 6, 10, 12, 15, 20, 30, 60}));
    EXPECT_EQ(divisors(1), (std::vector<u64>{1}));
}
