#include "nonres/lemmas.hpp"

#include <gtest/gtest.h>

#include <numeric>

using namespace nonres;

namespace {

/// Midpoint of a rendered value "v" or "[lo, hi]".
double mid(const std::string& s) {
    if (s.empty() || s.front() != '[') return std::stod(s);
    const auto comma = s.find(',');
    return (std::stod(s.substr(1, comma - 1)) + std::stod(s.substr(comma + 1, s.size() - comma - 2))) / 2;
}

}  // namespace

TEST(Stirling, SmallR) {
    const auto r2 = check_stirling_ratio(2);
    EXPECT_TRUE(r2.passed());
    EXPECT_EQ(r2.lhs, "3");
    EXPECT_NEAR(mid(r2.rhs), 3.06229, 1e-5);
    for (u64 r = 1; r <= 100; ++r) EXPECT_TRUE(check_stirling_ratio(r).passed()) << r;
}

TEST(Stirling, SlackShrinksWithR) {
    EXPECT_GT(check_stirling_ratio(5).slack, check_stirling_ratio(50).slack);
    EXPECT_GT(check_stirling_ratio(50).slack, 0);
}

TEST(Convexity, WorkedExample) {
    const auto c = check_convexity_bound(8, 3, 1);
    EXPECT_TRUE(c.passed());
    EXPECT_NEAR(mid(c.lhs), 5.6187, 1e-4);
    EXPECT_NEAR(mid(c.rhs), 7.389, 1e-3);
}

TEST(Convexity, EqualityAtJZero) {
    const auto c = check_convexity_bound(3, 41, 0);
    EXPECT_TRUE(c.passed());
    EXPECT_EQ(c.slack, 0.0);
    EXPECT_THROW(check_convexity_bound(7, 1, 1), precondition_error);
}

TEST(Totient, WorkedExamples) {
    const auto two = check_totient_inequality(mpq_class(2));
    EXPECT_TRUE(two.passed());
    EXPECT_EQ(two.lhs, "4");
    EXPECT_NEAR(mid(two.rhs), -2.814, 1e-3);
    const auto three_halves = check_totient_inequality(mpq_class(3, 2));
    EXPECT_TRUE(three_halves.passed());
    EXPECT_EQ(three_halves.lhs, "2");
    EXPECT_THROW(check_totient_inequality(mpq_class(1)), precondition_error);
}

TEST(Totient, PrefixSumsAreExact) {
    const TotientPrefixSums s(10);
    EXPECT_EQ(s.phi(10), 32);
    EXPECT_EQ(s.phi_over_a(2), mpq_class(3, 2));
}

TEST(Totient, SweepUpTo300) {
    const TotientPrefixSums s(300);
    for (int k = 11; k <= 3000; ++k) {
        ASSERT_TRUE(check_totient_inequality(mpq_class(k, 10), s).passed()) << k;
    }
}

TEST(SUpper, SmallPrimes) {
    for (u64 p : {11ull, 13ull, 41ull, 101ull}) {
        for (u64 d : divisors(p - 1)) {
            if (d < 2) continue;
            const Character chi(CharacterSpec::make(p, d));
            for (u64 h = 1; h <= 4; ++h) {
                for (u64 r = 1; r <= 4; ++r) {
                    const auto c = check_S_upper(chi, h, r);
                    EXPECT_TRUE(c.result.passed()) << p << " " << d << " " << h << " " << r;
                }
            }
        }
    }
}

TEST(SUpper, RejectsLargeR) {
    const Character chi(CharacterSpec::make(11, 2));
    EXPECT_THROW(check_S_upper(chi, 1, 10), precondition_error);
}

TEST(Farey, IntervalEndpoints) {
    const auto i = make_farey_interval(IntervalKind::I, 2, 1, 101, 9);
    EXPECT_EQ(i.lo, (Fraction{101, 2}));
    EXPECT_EQ(i.hi, (Fraction{110, 2}));
    EXPECT_TRUE(i.lo_open);
    EXPECT_FALSE(i.hi_open);
    EXPECT_EQ(i.first_integer(), 51);
    EXPECT_EQ(i.last_integer(), 55);
    EXPECT_EQ(i.integer_count(), 5);
    const auto js = make_farey_interval(IntervalKind::J_star, 2, 1, 101, 9, 3);
    EXPECT_EQ(js.lo, (Fraction{92, 2}));
    EXPECT_EQ(js.hi, (Fraction{97, 2}));
    EXPECT_EQ(js.integer_count(), 3);
    EXPECT_THROW(make_farey_interval(IntervalKind::I, 4, 2, 101, 9), precondition_error);
}

TEST(Disjointness, WorkedExample) {
    const auto rep = check_interval_disjointness(101, 9, 2.0);
    EXPECT_EQ(rep.verdict, Verdict::pass);
    EXPECT_EQ(rep.pairs, 2u);
    EXPECT_EQ(rep.intervals, 4u);
}

TEST(Disjointness, VacuousBelowOne) {
    const auto rep = check_interval_disjointness(101, 9, 0.5);
    EXPECT_EQ(rep.verdict, Verdict::pass);
    EXPECT_EQ(rep.pairs, 0u);
}

TEST(Disjointness, NeedsSmallXH) {
    EXPECT_THROW(check_interval_disjointness(101, 30, 2.0), precondition_error);
}

TEST(Disjointness, AgreesWithPairwiseComparison) {
    // Pairwise overlap test, independent of the sorted sweep.
    auto overlap = [](const FareyInterval& x, const FareyInterval& y) {
        if (x.empty() || y.empty()) return false;
        const int a = compare(x.hi, y.lo), b = compare(y.hi, x.lo);
        const bool x_before = a < 0 || (a == 0 && (x.hi_open || y.lo_open));
        const bool y_before = b < 0 || (b == 0 && (y.hi_open || x.lo_open));
        return !x_before && !y_before;
    };
    for (u64 p : {101ull, 211ull, 1009ull}) {
        for (std::int64_t H : {3, 7, 12}) {
            const double X = std::floor((p - 1) / (2.0 * H));
            std::vector<FareyInterval> all;
            for (std::int64_t a = 1; a <= static_cast<std::int64_t>(X); ++a) {
                for (std::int64_t b = 0; b < a; ++b) {
                    if (std::gcd(a, b) != 1) continue;
                    all.push_back(make_farey_interval(IntervalKind::I, a, b, p, H));
                    all.push_back(make_farey_interval(IntervalKind::J, a, b, p, H));
                }
            }
            bool any = false;
            for (std::size_t i = 0; i < all.size(); ++i)
                for (std::size_t j = i + 1; j < all.size(); ++j) any = any || overlap(all[i], all[j]);
            EXPECT_FALSE(any);
            EXPECT_EQ(check_interval_disjointness(p, H, X).verdict, Verdict::pass) << p << " " << H;
        }
    }
}

TEST(Factorization, SplitAtH) {
    const auto nf = NonresidueFactorization::make({7, 2, 13}, 5, 101, 20);
    EXPECT_EQ(nf.u, 182u);
    EXPECT_EQ(nf.u1, 2u);
    EXPECT_EQ(nf.u2, 91u);
    EXPECT_EQ(nf.k, 1u);
    EXPECT_EQ(nf.j, 2u);
    EXPECT_EQ(nf.n, 4u);
    EXPECT_THROW(NonresidueFactorization::make({2, 2}, 5, 101, 20), precondition_error);
    EXPECT_THROW(NonresidueFactorization::make({4}, 5, 101, 20), precondition_error);
}

TEST(Factorization, ConstructedInstanceSatisfiesHypothesis) {
    for (u64 p : {1009ull, 4001ull, 10007ull}) {
        const Character chi(CharacterSpec::make(p, 2));
        for (unsigned n = 1; n <= 3; ++n) {
            const auto nf = construct_instance(chi, n, 2);
            EXPECT_TRUE(verify_character_hypothesis(chi, nf));
            EXPECT_EQ(nf.n, n);
        }
    }
}

TEST(Factorization, DetectsFalseHypothesis) {
    const Character chi(CharacterSpec::make(1009, 2));
    const auto q = prime_nonresidues(1009, 2, 1);
    const auto nf = NonresidueFactorization::make({}, 2, 1009, static_cast<std::int64_t>(q[0]) + 5);
    EXPECT_FALSE(verify_character_hypothesis(chi, nf));
}

TEST(ShiftedSum, HoldsOnStarredIntervals) {
    const u64 p = 10007;
    const Character chi(CharacterSpec::make(p, 2));
    const auto nf = construct_instance(chi, 2, 1);
    const auto H = nf.H;
    std::size_t checked = 0;
    for (std::int64_t a = static_cast<std::int64_t>(nf.u1); a <= H / 2; a += static_cast<std::int64_t>(nf.u1)) {
        for (std::int64_t b = 0; b < a; ++b) {
            if (std::gcd(a, b) != 1) continue;
            for (auto kind : {IntervalKind::I_star, IntervalKind::J_star}) {
                const auto res = check_shifted_sum_lower(chi, nf, make_farey_interval(kind, a, b, p, H, 1));
                EXPECT_NE(res.result.verdict, Verdict::fail);
                ++checked;
            }
        }
    }
    EXPECT_GT(checked, 0u);
}

TEST(Proposition, SandwichOnConstructedInstances) {
    std::size_t passes = 0;
    for (u64 p : {10007ull, 20011ull, 50021ull}) {
        const Character chi(CharacterSpec::make(p, 2));
        const auto q = prime_nonresidues(p, 2, 1);
        for (u64 h = 1; 2 * h + 1 < q[0]; ++h) {
            const auto nf = construct_instance(chi, 1, h);
            for (u64 r = 1; r <= 3; ++r) {
                const auto rep = sandwich_report(chi, nf, r);
                EXPECT_EQ(rep.verdict, Verdict::pass) << p << " " << h << " " << r << " " << rep.detail;
                passes += rep.verdict == Verdict::pass;
                EXPECT_GE(rep.lower_slack, 0);
                EXPECT_GE(rep.upper_slack, 0);
            }
        }
    }
    EXPECT_GT(passes, 0u);
}

TEST(Proposition, Preconditions) {
    const Character chi(CharacterSpec::make(101, 2));
    const auto nf = NonresidueFactorization::make({}, 3, 101, 4);
    EXPECT_THROW(check_proposition_lower(chi, nf, 1), precondition_error);
}

TEST(Proposition, LowerBoundIsPositiveForLargeX) {
    const auto nf = NonresidueFactorization::make({}, 1, 1000003, 200);
    EXPECT_TRUE(s_lower_bound(nf, 1).is_positive());
}
