#pragma once

/**
 * @file constants.hpp
 * @brief Closed-form constants of the explicit nonresidue bound.
 *
 * For n nonresidues and modulus p the bound reads
 *
 *     q_n <= g(n, p) * p^(1/4) * (log p)^((n+1)/2)
 *
 * with g, the auxiliary threshold X* and the totient correction factor f
 * evaluated here. All logarithms are natural. The modulus is accepted as a
 * real number so that reference thresholds such as p0 = 1e35 can be used
 * directly; internally only log p is needed.
 */

#include "nonres/errors.hpp"

#include <cmath>
#include <concepts>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace nonres {

/// Names of the hypotheses checked by compute_g and corollary_validity.
namespace condition {
inline constexpr std::string_view xstar_gt_3_8 = "xstar_gt_3.8";
inline constexpr std::string_view logp_gt_exp_8_3 = "logp_gt_exp(8/3)";
inline constexpr std::string_view logp_gt_8_n_minus_1 = "logp_gt_8(n-1)";
inline constexpr std::string_view p0_gt_2e6 = "p0_gt_2e6";
inline constexpr std::string_view p0_gt_exp_8_n_minus_1 = "p0_gt_exp(8(n-1))";
}  // namespace condition

template <std::floating_point Real = double>
struct BoundInput {
    int n = 1;
    Real p = 2;
    Real log_p = std::numbers::ln2_v<Real>;

    BoundInput() = default;
    BoundInput(int n_, Real p_) : n(n_), p(p_), log_p(std::log(p_)) {
        require(n_ >= 1, "BoundInput: n must be >= 1");
        require(p_ >= 2, "BoundInput: p must be >= 2");
    }

    /// Builds the input from log p, keeping log p exact (p = e^L).
    static BoundInput from_log(int n_, Real log_p_) {
        require(log_p_ >= std::numbers::ln2_v<Real>, "BoundInput: log p must be >= log 2");
        BoundInput in;
        in.n = n_;
        require(n_ >= 1, "BoundInput: n must be >= 1");
        in.log_p = log_p_;
        in.p = std::exp(log_p_);
        return in;
    }
};

template <std::floating_point Real = double>
struct BurgessParameters {
    Real A;
    Real B;
    long long h;
    long long r;
    /// |(2B/(A e))^(B log p) * sqrt(p) - 1|
    Real identity_residual;
};

template <std::floating_point Real = double>
struct ConstantsResult {
    Real xstar;
    std::optional<Real> f_at_xstar;
    std::optional<Real> g;
    std::optional<Real> bound;
    bool valid = false;
    std::vector<std::string> failed_conditions;
};

struct Validity {
    bool ok = false;
    std::vector<std::string> reasons;
};

/// f(x) = 1 - (pi^2/9) (log x + 9) / (3x), for x > 1.
template <std::floating_point Real>
Real totient_factor_f(Real x) {
    require(x > 1, "totient_factor_f: x must exceed 1");
    constexpr Real pi = std::numbers::pi_v<Real>;
    return Real(1) - pi * pi / Real(9) * (std::log(x) + Real(9)) / (Real(3) * x);
}

template <std::floating_point Real>
Real compute_xstar(const BoundInput<Real>& in) {
    constexpr Real pi = std::numbers::pi_v<Real>;
    constexpr Real e = std::numbers::e_v<Real>;
    const Real n = in.n;
    const Real L = in.log_p;
    const Real ratio = (n + 1) / n;
    const Real correction = Real(1) - ratio * std::exp(Real(-1) / n) / L;
    return pi / Real(3) / std::sqrt(Real(2) * e) * std::pow(ratio, n - 1) * std::exp(L / Real(4)) /
           std::pow(L, (n - 1) / Real(2)) * correction;
}

/// c * p^(1/4) * (log p)^((n+1)/2).
template <std::floating_point Real>
Real compute_bound(const BoundInput<Real>& in, Real c) {
    require(c > 0, "compute_bound: c must be positive");
    return c * std::exp(in.log_p / Real(4)) * std::pow(in.log_p, Real(in.n + 1) / Real(2));
}

/// Evaluates g(n, p) and reports which hypotheses of the bound fail.
///
/// g and the bound are populated whenever f(X*) and 2B log p - 3 are positive,
/// even if the instance is invalid; `valid` requires X* > 3.8,
/// log p > e^(8/3) and log p > 8(n-1).
template <std::floating_point Real>
ConstantsResult<Real> compute_g(const BoundInput<Real>& in) {
    constexpr Real pi = std::numbers::pi_v<Real>;
    constexpr Real e = std::numbers::e_v<Real>;
    const Real n = in.n;
    const Real L = in.log_p;
    const Real B = n / (Real(2) * (n + 1));

    ConstantsResult<Real> out;
    out.xstar = compute_xstar(in);

    if (!(out.xstar > Real(3.8))) out.failed_conditions.emplace_back(condition::xstar_gt_3_8);
    if (!(L > std::exp(Real(8) / Real(3)))) out.failed_conditions.emplace_back(condition::logp_gt_exp_8_3);
    if (!(L > Real(8) * (n - 1))) out.failed_conditions.emplace_back(condition::logp_gt_8_n_minus_1);
    out.valid = out.failed_conditions.empty();

    if (out.xstar > 1) out.f_at_xstar = totient_factor_f(out.xstar);
    const Real shifted = Real(2) * B * L - Real(3);
    if (out.f_at_xstar && *out.f_at_xstar > 0 && shifted > 0) {
        const Real numerator = Real(1) + std::numbers::sqrt2_v<Real> / shifted;
        out.g = pi / Real(3) * std::sqrt(Real(2) * e) * (n / (n + 1)) * std::sqrt(numerator / *out.f_at_xstar);
        out.bound = compute_bound(in, *out.g);
    }
    return out;
}

/// Hypotheses for using C = g(n0, p0) uniformly over p >= p0, n <= n0.
template <std::floating_point Real>
Validity corollary_validity(int n0, Real p0) {
    const BoundInput<Real> in(n0, p0);
    Validity v;
    if (!(compute_xstar(in) > Real(3.8))) v.reasons.emplace_back(condition::xstar_gt_3_8);
    if (!(p0 > Real(2e6))) v.reasons.emplace_back(condition::p0_gt_2e6);
    if (!(p0 > std::exp(Real(8) * Real(n0 - 1)))) v.reasons.emplace_back(condition::p0_gt_exp_8_n_minus_1);
    v.ok = v.reasons.empty();
    return v;
}

/// Window length h = ceil(A log p) and moment r = floor(B log p) used in the
/// bound's proof, with A = (n/(n+1)) e^(1/n) and B = n/(2(n+1)).
template <std::floating_point Real>
BurgessParameters<Real> burgess_params(const BoundInput<Real>& in) {
    const Real n = in.n;
    const Real L = in.log_p;
    BurgessParameters<Real> bp;
    bp.A = n / (n + 1) * std::exp(Real(1) / n);
    bp.B = n / (Real(2) * (n + 1));
    bp.h = static_cast<long long>(std::ceil(bp.A * L));
    bp.r = static_cast<long long>(std::floor(n * L / (Real(2) * (n + 1))));
    const Real base = Real(2) * bp.B / (bp.A * std::numbers::e_v<Real>);
    bp.identity_residual = std::abs(std::pow(base, bp.B * L) * std::exp(L / Real(2)) - Real(1));
    return bp;
}

// =============================================================================
// Table of constants
// =============================================================================

template <std::floating_point Real = double>
struct TableCell {
    int n0;
    Real p0;
    Real xstar;
    std::optional<Real> g;  ///< empty for dash entries
    std::vector<std::string> failed_conditions;
};

template <std::floating_point Real = double>
struct ConstantsTable {
    std::vector<int> n0s;
    std::vector<Real> p0s;
    std::vector<std::vector<TableCell<Real>>> rows;  ///< rows[i][j] <-> (n0s[i], p0s[j])
};

template <std::floating_point Real>
ConstantsTable<Real> make_table(const std::vector<int>& n0s, const std::vector<Real>& p0s) {
    ConstantsTable<Real> t{n0s, p0s, {}};
    for (int n0 : n0s) {
        auto& row = t.rows.emplace_back();
        for (Real p0 : p0s) {
            const BoundInput<Real> in(n0, p0);
            const auto validity = corollary_validity(n0, p0);
            TableCell<Real> cell{n0, p0, compute_xstar(in), std::nullopt, validity.reasons};
            if (validity.ok) cell.g = compute_g(in).g;
            row.push_back(std::move(cell));
        }
    }
    return t;
}

// =============================================================================
// Monotonicity of g
// =============================================================================

template <std::floating_point Real = double>
struct MonotonicityViolation {
    enum class Kind { increases_with_p, decreases_with_n } kind;
    int n_a, n_b;
    Real p_a, p_b;
    Real g_a, g_b;
};

template <std::floating_point Real = double>
struct MonotonicityReport {
    std::size_t points_checked = 0;
    std::size_t points_skipped = 0;  ///< grid points where the bound is not valid
    std::size_t comparisons = 0;
    std::vector<MonotonicityViolation<Real>> violations;
};

/// Checks that g is nonincreasing in p along each n and nondecreasing in n
/// along each p, comparing neighbours among the valid points of the grid.
/// `p_grid` must be ascending; `n_range` ascending.
template <std::floating_point Real>
MonotonicityReport<Real> monotonicity_scan(const std::vector<int>& n_range, const std::vector<Real>& p_grid) {
    MonotonicityReport<Real> rep;
    const std::size_t N = n_range.size(), P = p_grid.size();
    std::vector<std::vector<std::optional<Real>>> g(N, std::vector<std::optional<Real>>(P));
    for (std::size_t i = 0; i < N; ++i) {
        for (std::size_t j = 0; j < P; ++j) {
            const auto res = compute_g(BoundInput<Real>(n_range[i], p_grid[j]));
            if (res.valid && res.g) {
                g[i][j] = res.g;
                ++rep.points_checked;
            } else {
                ++rep.points_skipped;
            }
        }
    }
    using Kind = typename MonotonicityViolation<Real>::Kind;
    for (std::size_t i = 0; i < N; ++i) {
        std::optional<std::size_t> prev;
        for (std::size_t j = 0; j < P; ++j) {
            if (!g[i][j]) continue;
            if (prev) {
                ++rep.comparisons;
                if (*g[i][j] > *g[i][*prev]) {
                    rep.violations.push_back({Kind::increases_with_p, n_range[i], n_range[i], p_grid[*prev],
                                              p_grid[j], *g[i][*prev], *g[i][j]});
                }
            }
            prev = j;
        }
    }
    for (std::size_t j = 0; j < P; ++j) {
        std::optional<std::size_t> prev;
        for (std::size_t i = 0; i < N; ++i) {
            if (!g[i][j]) continue;
            if (prev) {
                ++rep.comparisons;
                if (*g[i][j] < *g[*prev][j]) {
                    rep.violations.push_back({Kind::decreases_with_n, n_range[*prev], n_range[i], p_grid[j],
                                              p_grid[j], *g[*prev][j], *g[i][j]});
                }
            }
            prev = i;
        }
    }
    return rep;
}

}  // namespace nonres
