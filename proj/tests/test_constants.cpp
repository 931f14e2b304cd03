#include "nonres/constants.hpp"
#include "nonres/interval.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

using namespace nonres;

namespace {

/// g(n, 10^k) recomputed in 128-bit interval arithmetic from the defining
/// formulas, with log p taken from the exact integer 10^k.
Interval g_oracle(int n_int, int k) {
    mpz_class p;
    mpz_ui_pow_ui(p.get_mpz_t(), 10, k);
    const Interval n = Interval::exact(n_int);
    const Interval one = Interval::exact(1);
    const Interval L = log(Interval::from(p));
    const Interval pi = Interval::pi();
    const Interval e = Interval::e();
    const Interval ratio = (n + one) / n;
    const Interval xstar = pi / Interval::exact(3) / sqrt(Interval::exact(2) * e) * pow(ratio, n_int - 1) *
                           exp(L / Interval::exact(4)) / pow(L, (n - one) / Interval::exact(2)) *
                           (one - ratio * exp(-one / n) / L);
    const Interval f = one - pi * pi / Interval::exact(9) * (log(xstar) + Interval::exact(9)) / (Interval::exact(3) * xstar);
    const Interval B = n / (Interval::exact(2) * (n + one));
    const Interval shifted = Interval::exact(2) * B * L - Interval::exact(3);
    return pi / Interval::exact(3) * sqrt(Interval::exact(2) * e) * (n / (n + one)) *
           sqrt((one + sqrt(Interval::exact(2)) / shifted) / f);
}

const std::vector<double> kTableP0{1e7, 1e8, 1e9, 1e10, 1e15, 1e20, 1e25, 1e30, 1e35};

}  // namespace

TEST(TotientFactor, KnownValues) {
    EXPECT_NEAR(totient_factor_f(3.8), 0.0059, 5e-4);
    EXPECT_NEAR(totient_factor_f(2.0), -0.7715, 5e-4);
    EXPECT_THROW(totient_factor_f(1.0), precondition_error);
}

TEST(Xstar, KnownValues) {
    EXPECT_NEAR(compute_xstar(BoundInput<double>(1, 1e7)), 24.10, 0.005);
    EXPECT_NEAR(compute_xstar(BoundInput<double>(3, 1e7)), 2.62, 0.005);
}

TEST(Bound, KnownValues) {
    EXPECT_NEAR(compute_bound(BoundInput<double>(1, 1e7), 1.530), 1386.8, 0.05);
    EXPECT_NEAR(compute_bound(BoundInput<double>::from_log(1, 4.0), 1.0), 10.873, 5e-4);
    EXPECT_THROW(compute_bound(BoundInput<double>(1, 1e7), 0.0), precondition_error);
}

TEST(BoundInput, RejectsBadArguments) {
    EXPECT_THROW(BoundInput<double>(0, 1e7), precondition_error);
    EXPECT_THROW(BoundInput<double>(1, 1.5), precondition_error);
}

TEST(ComputeG, FirstTableCell) {
    const auto r = compute_g(BoundInput<double>(1, 1e7));
    ASSERT_TRUE(r.g);
    EXPECT_TRUE(r.valid);
    EXPECT_NEAR(*r.g, 1.530, 1e-3);
}

TEST(ComputeG, InvalidInstanceReportsConditions) {
    const auto r = compute_g(BoundInput<double>(3, 1e7));
    EXPECT_FALSE(r.valid);
    EXPECT_NE(std::find(r.failed_conditions.begin(), r.failed_conditions.end(), condition::xstar_gt_3_8),
              r.failed_conditions.end());
}

TEST(ComputeG, AgreesWithIntervalOracle) {
    const int ks[] = {7, 8, 9, 10, 15, 20, 25, 30, 35};
    for (int n = 1; n <= 8; ++n) {
        for (int k : ks) {
            const auto r = compute_g(BoundInput<double>(n, std::pow(10.0, k)));
            if (!r.g) continue;
            const Interval o = g_oracle(n, k);
            EXPECT_LT(o.width_d(), 1e-25) << n << "," << k;
            EXPECT_NEAR(*r.g, o.mid_d(), 1e-9 * o.mid_d()) << "n=" << n << " k=" << k;
        }
    }
}

TEST(ComputeG, LongDoubleAgreesWithDouble) {
    for (int n = 1; n <= 8; ++n) {
        const auto a = compute_g(BoundInput<double>(n, 1e35));
        const auto b = compute_g(BoundInput<long double>(n, 1e35L));
        ASSERT_EQ(a.g.has_value(), b.g.has_value());
        if (a.g) {
            EXPECT_NEAR(*a.g, static_cast<double>(*b.g), 1e-12);
        }
    }
}

TEST(CorollaryValidity, Thresholds) {
    EXPECT_TRUE(corollary_validity(1, 1e7).ok);
    EXPECT_FALSE(corollary_validity(1, 1e6).ok);
    EXPECT_FALSE(corollary_validity(3, 1e7).ok);
    EXPECT_TRUE(corollary_validity(3, 1e8).ok);
    const auto v = corollary_validity(8, 1e25);
    EXPECT_FALSE(v.ok);
}

TEST(Table, ShapeAndDashes) {
    const std::vector<int> n0s{1, 2, 3, 4, 5, 6, 7, 8};
    const auto t = make_table<double>(n0s, kTableP0);
    ASSERT_EQ(t.rows.size(), 8u);
    std::size_t dashes = 0;
    for (const auto& row : t.rows) {
        ASSERT_EQ(row.size(), 9u);
        for (const auto& c : row) {
            dashes += !c.g;
            if (!c.g) {
                EXPECT_FALSE(c.failed_conditions.empty());
            }
        }
    }
    EXPECT_EQ(dashes, 27u);
}

TEST(Table, BelowThresholdIsAllDashes) {
    const auto t = make_table<double>({1, 2, 3, 4, 5, 6, 7, 8}, {1e3});
    for (const auto& row : t.rows) EXPECT_FALSE(row[0].g);
}

TEST(Monotonicity, TableGridHasNoViolations) {
    const auto rep = monotonicity_scan<double>({1, 2, 3, 4, 5, 6, 7, 8}, kTableP0);
    EXPECT_TRUE(rep.violations.empty());
    EXPECT_EQ(rep.points_checked, 45u);
}

TEST(BurgessParams, KnownValues) {
    const auto a = burgess_params(BoundInput<double>(1, 1e7));
    EXPECT_EQ(a.h, 22);
    EXPECT_EQ(a.r, 4);
    EXPECT_EQ(burgess_params(BoundInput<double>::from_log(2, 12.0)).r, 4);
}

TEST(BurgessParams, IdentityResidualIsTiny) {
    for (int n = 1; n <= 12; ++n) {
        for (int k = 1; k <= 35; ++k) {
            const auto bp = burgess_params(BoundInput<double>(n, std::pow(10.0, k)));
            EXPECT_LT(bp.identity_residual, 1e-9) << n << "," << k;
        }
    }
}
