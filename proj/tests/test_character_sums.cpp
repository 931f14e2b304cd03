#include "nonres/character_sums.hpp"

#include <gtest/gtest.h>

#include <complex>

using namespace nonres;

namespace {

/// S by direct complex evaluation, for cross-checks.
double naive_S(const Character& chi, u64 h, u64 r) {
    const u64 p = chi.modulus();
    const double two_pi = 2 * std::acos(-1.0);
    double total = 0;
    for (u64 x = 0; x < p; ++x) {
        std::complex<double> w = 0;
        for (u64 m = 0; m < h; ++m) {
            const auto v = chi(static_cast<std::int64_t>(x + m));
            if (!v.is_zero()) w += std::polar(1.0, two_pi * v.exponent() / chi.order());
        }
        total += std::pow(std::norm(w), r);
    }
    return total;
}

}  // namespace

TEST(ExactSumS, FixedValue) {
    const Character chi(CharacterSpec::make(5, 2));
    const auto s = exact_sum_S(chi, 2, 1);
    ASSERT_TRUE(s.exact);
    EXPECT_EQ(*s.exact, 6);
    EXPECT_EQ(s.error_bound, 0.0);
}

TEST(ExactSumS, LengthOneWindow) {
    for (u64 p : {3ull, 7ull, 13ull, 31ull}) {
        for (u64 d : divisors(p - 1)) {
            if (d < 2) continue;
            const Character chi(CharacterSpec::make(p, d));
            const auto s = exact_sum_S(chi, 1, 3);
            ASSERT_TRUE(s.exact) << p << " " << d;
            EXPECT_EQ(*s.exact, p - 1);
        }
    }
}

TEST(ExactSumS, ShiftInvariance) {
    for (u64 d : {2ull, 3ull, 4ull, 6ull}) {
        const Character chi(CharacterSpec::make(73, d));
        const auto base = exact_sum_S(chi, 5, 2);
        for (std::int64_t shift : {1, 17, -40, 1000}) {
            const auto s = exact_sum_S(chi, 5, 2, shift);
            EXPECT_LE(s.enclosure.lower_d(), base.enclosure.upper_d());
            EXPECT_LE(base.enclosure.lower_d(), s.enclosure.upper_d());
            if (d == 2) {
                EXPECT_EQ(*s.exact, *base.exact);
            }
        }
    }
}

TEST(ExactSumS, BelowTrivialBound) {
    for (u64 d : {2ull, 3ull, 8ull}) {
        const Character chi(CharacterSpec::make(97, d));
        for (u64 h = 1; h <= 6; ++h) {
            const auto s = exact_sum_S(chi, h, 2);
            EXPECT_LE(s.value, 97.0 * std::pow(h, 4));
        }
    }
}

TEST(ExactSumS, MatchesComplexEvaluation) {
    for (u64 p : {31ull, 61ull, 101ull}) {
        for (u64 d : divisors(p - 1)) {
            if (d < 2) continue;
            const Character chi(CharacterSpec::make(p, d));
            for (u64 h : {2ull, 5ull}) {
                for (u64 r : {1ull, 3ull}) {
                    const auto s = exact_sum_S(chi, h, r);
                    EXPECT_NEAR(s.value, naive_S(chi, h, r), 1e-8 * std::max(1.0, s.value)) << p << " " << d;
                    EXPECT_LE(s.enclosure.lower_d(), s.value);
                    EXPECT_GE(s.enclosure.upper_d(), s.value);
                }
            }
        }
    }
}

TEST(ExactSumS, SecondMomentIsExactForAllOrders) {
    // For r = 1, sum_x |w|^2 = h(p - h) exactly (orthogonality).
    for (u64 p : {13ull, 37ull, 61ull}) {
        for (u64 d : divisors(p - 1)) {
            if (d < 2) continue;
            const Character chi(CharacterSpec::make(p, d));
            for (u64 h = 1; h < 6; ++h) {
                const auto s = exact_sum_S(chi, h, 1);
                EXPECT_LE(s.enclosure.lower_d(), double(h * (p - h)));
                EXPECT_GE(s.enclosure.upper_d(), double(h * (p - h)));
            }
        }
    }
}

TEST(ExactSumS, Preconditions) {
    const Character chi(CharacterSpec::make(7, 2));
    EXPECT_THROW(exact_sum_S(chi, 0, 1), precondition_error);
    EXPECT_THROW(exact_sum_S(chi, 7, 1), precondition_error);
    EXPECT_THROW(exact_sum_S(chi, 2, 0), precondition_error);
}

TEST(WindowAbs2, QuadraticIsExact) {
    const Character chi(CharacterSpec::make(11, 2));
    for (std::int64_t z = 0; z < 11; ++z) EXPECT_TRUE(window_abs2(chi, z, 4).is_point());
}
