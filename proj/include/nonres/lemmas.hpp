#pragma once

/**
 * @file lemmas.hpp
 * @brief Certified brute-force checks of the inequalities behind the
 * explicit nonresidue bound.
 *
 * Every check evaluates the exact side exactly (integers, rationals, or a
 * point interval) and the transcendental side as an outward-rounded
 * interval, then compares unfavorable endpoints. A `pass` is therefore a
 * rigorous certificate at 128-bit working precision.
 *
 * Checks distinguish four outcomes: the inequality holds, it fails, the
 * instance is vacuous (e.g. h <= 2j), or the supplied instance does not meet
 * the character hypothesis. Precondition violations throw.
 */

#include "nonres/arith.hpp"
#include "nonres/character.hpp"
#include "nonres/character_sums.hpp"
#include "nonres/errors.hpp"
#include "nonres/interval.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

namespace nonres {

enum class Verdict { pass, fail, vacuous, hypothesis_failed };

inline const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::pass: return "pass";
        case Verdict::fail: return "fail";
        case Verdict::vacuous: return "vacuous";
        case Verdict::hypothesis_failed: return "hypothesis_failed";
    }
    return "?";
}

struct CheckResult {
    Verdict verdict = Verdict::fail;
    std::string lhs;  ///< decimal rendering of the left side (or its enclosure)
    std::string rhs;
    /// Relative margin (larger - smaller) / max(|larger|, |smaller|) in the
    /// direction the inequality asserts, rounded down; negative on failure.
    double slack = 0;
    std::string detail;

    bool passed() const { return verdict == Verdict::pass; }
};

namespace detail {

inline std::string render(const Interval& v) {
    if (v.is_point()) return v.lower().to_string(25);
    return "[" + v.lower().to_string(25) + ", " + v.upper().to_string(25) + "]";
}

/// Lower bound on (big - small) / max(|big|, |small|).
inline double relative_margin(const Interval& small, const Interval& big) {
    BigFloat diff, a, b, scale, out;
    mpfr_sub(diff.get(), big.lower().get(), small.upper().get(), MPFR_RNDD);
    mpfr_abs(a.get(), small.upper().get(), MPFR_RNDU);
    mpfr_abs(b.get(), big.lower().get(), MPFR_RNDU);
    mpfr_max(scale.get(), a.get(), b.get(), MPFR_RNDU);
    if (mpfr_zero_p(scale.get())) return 0;
    mpfr_div(out.get(), diff.get(), scale.get(), MPFR_RNDD);
    return out.to_double(MPFR_RNDD) + 0.0;
}

/// Fills a CheckResult for the assertion `small <= big`.
inline CheckResult assert_le(const Interval& small, const Interval& big) {
    CheckResult res;
    res.verdict = certainly_le(small, big) ? Verdict::pass : Verdict::fail;
    res.lhs = render(small);
    res.rhs = render(big);
    res.slack = relative_margin(small, big);
    return res;
}

/// Same, but reports the assertion as `lhs >= rhs` with lhs = big.
inline CheckResult assert_ge(const Interval& big, const Interval& small) {
    CheckResult res = assert_le(small, big);
    std::swap(res.lhs, res.rhs);
    return res;
}

}  // namespace detail

// =============================================================================
// Moment upper bound and the Stirling step
// =============================================================================

/// sqrt(2) (2r/e)^r p h^r + (2r-1) sqrt(p) h^(2r)
inline Interval s_upper_bound(u64 p, u64 h, u64 r) {
    const Interval two_r = Interval::exact(2 * r);
    const Interval first = sqrt(Interval::exact(2)) * pow(two_r / Interval::e(), r) * Interval::exact(p) *
                           pow(Interval::exact(h), r);
    const Interval second = Interval::exact(2 * r - 1) * sqrt(Interval::exact(p)) * pow(Interval::exact(h), 2 * r);
    return first + second;
}

struct UpperCheck {
    CheckResult result;
    SumStats sum;
};

/// S(chi, h, r) <= sqrt(2) (2r/e)^r p h^r + (2r-1) sqrt(p) h^(2r), for h < p, r <= 9h.
inline UpperCheck check_S_upper(const Character& chi, u64 h, u64 r) {
    require(h >= 1 && h < chi.modulus(), "check_S_upper: need 1 <= h < p");
    require(r >= 1 && r <= 9 * h, "check_S_upper: need 1 <= r <= 9h");
    UpperCheck out{{}, exact_sum_S(chi, h, r)};
    out.result = detail::assert_le(out.sum.enclosure, s_upper_bound(chi.modulus(), h, r));
    return out;
}

/// (2r)! / (2^r r!) <= sqrt(2) (2r/e)^r, left side as an exact integer.
inline CheckResult check_stirling_ratio(u64 r) {
    require(r >= 1, "check_stirling_ratio: r must be >= 1");
    mpz_class num, r_fact;
    mpz_fac_ui(num.get_mpz_t(), 2 * r);
    mpz_fac_ui(r_fact.get_mpz_t(), r);
    const mpz_class lhs = num / (r_fact << static_cast<mp_bitcnt_t>(r));
    const Interval rhs = sqrt(Interval::exact(2)) * pow(Interval::exact(2 * r) / Interval::e(), r);
    return detail::assert_le(Interval::from(lhs), rhs);
}

// =============================================================================
// Totient inequality
// =============================================================================

/// f(x) = 1 - (pi^2/9)(log x + 9)/(3x) as an interval.
inline Interval totient_factor_f(const Interval& x) {
    const Interval pi = Interval::pi();
    return Interval::exact(1) -
           pi * pi / Interval::exact(9) * (log(x) + Interval::exact(9)) / (Interval::exact(3) * x);
}

/// Exact prefix sums P(N) = sum_{a<=N} phi(a)/a and Q(N) = sum_{a<=N} phi(a).
class TotientPrefixSums {
public:
    explicit TotientPrefixSums(u64 limit) : P_(limit + 1), Q_(limit + 1) {
        const auto phi = totients_up_to(limit);
        P_[0] = 0;
        Q_[0] = 0;
        for (u64 a = 1; a <= limit; ++a) {
            P_[a] = P_[a - 1] + mpq_class(mpz_class(phi[a]), mpz_class(a));
            Q_[a] = Q_[a - 1] + phi[a];
        }
    }

    u64 limit() const { return P_.size() - 1; }
    const mpq_class& phi_over_a(u64 n) const { return P_.at(n); }
    const mpz_class& phi(u64 n) const { return Q_.at(n); }

private:
    std::vector<mpq_class> P_;
    std::vector<mpz_class> Q_;
};

/// 2x sum_{a<=x} phi(a)/a - sum_{a<=x} phi(a) >= (9/pi^2) x^2 f(x), for x > 1.
inline CheckResult check_totient_inequality(const mpq_class& x, const TotientPrefixSums& sums) {
    require(x > 1, "check_totient_inequality: x must exceed 1");
    const mpz_class floor_x = x.get_num() / x.get_den();
    require(floor_x <= sums.limit(), "check_totient_inequality: prefix sums too short for x");
    const u64 n = floor_x.get_ui();
    const mpq_class lhs = 2 * x * sums.phi_over_a(n) - mpq_class(sums.phi(n));
    const Interval xi = Interval::from(x);
    const Interval pi = Interval::pi();
    const Interval rhs = Interval::exact(9) / (pi * pi) * xi * xi * totient_factor_f(xi);
    return detail::assert_ge(Interval::from(lhs), rhs);
}

inline CheckResult check_totient_inequality(const mpq_class& x) {
    require(x > 1, "check_totient_inequality: x must exceed 1");
    const mpz_class floor_x = x.get_num() / x.get_den();
    return check_totient_inequality(x, TotientPrefixSums(floor_x.get_ui()));
}

// =============================================================================
// Convexity bound
// =============================================================================

/// (h/(h-2j))^(2r) <= exp(16rj/(3h)), for j <= h/8.
inline CheckResult check_convexity_bound(u64 h, u64 r, u64 j) {
    require(h >= 1 && r >= 1, "check_convexity_bound: need h, r >= 1");
    require(8 * j <= h, "check_convexity_bound: need j <= h/8");
    mpz_class num, den;
    mpz_ui_pow_ui(num.get_mpz_t(), h, 2 * r);
    mpz_ui_pow_ui(den.get_mpz_t(), h - 2 * j, 2 * r);
    mpq_class ratio(num, den);
    ratio.canonicalize();
    const Interval lhs = Interval::from(ratio);
    const Interval rhs = exp(Interval::exact(16 * r * j) / Interval::exact(3 * h));
    return detail::assert_le(lhs, rhs);
}

// =============================================================================
// Farey intervals
// =============================================================================

/// Exact rational num/den with den > 0.
struct Fraction {
    std::int64_t num;
    std::int64_t den;

    friend int compare(const Fraction& x, const Fraction& y) {
        const __int128 l = static_cast<__int128>(x.num) * y.den;
        const __int128 r = static_cast<__int128>(y.num) * x.den;
        return (l > r) - (l < r);
    }
    friend bool operator==(const Fraction& x, const Fraction& y) { return compare(x, y) == 0; }

    std::int64_t floor() const { return num >= 0 ? num / den : -((-num + den - 1) / den); }
    std::int64_t ceil() const { return -Fraction{-num, den}.floor(); }
    double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }
};

enum class IntervalKind { I, J, I_star, J_star };

inline const char* to_string(IntervalKind k) {
    switch (k) {
        case IntervalKind::I: return "I";
        case IntervalKind::J: return "J";
        case IntervalKind::I_star: return "I*";
        case IntervalKind::J_star: return "J*";
    }
    return "?";
}

/// One of the intervals around bp/a:
///   I(a,b)  = (bp/a, (bp+H)/a]        I*(a,b) = (bp/a, (bp+H)/a - h + 1]
///   J(a,b)  = [(bp-H)/a, bp/a)        J*(a,b) = [(bp-H)/a, bp/a - h + 1)
struct FareyInterval {
    std::int64_t a = 1;
    std::int64_t b = 0;
    IntervalKind kind = IntervalKind::I;
    Fraction lo{0, 1};
    Fraction hi{0, 1};
    bool lo_open = true;
    bool hi_open = false;

    bool empty() const {
        const int c = compare(lo, hi);
        return c > 0 || (c == 0 && (lo_open || hi_open));
    }

    /// Least and greatest integers inside; first > last when there are none.
    std::int64_t first_integer() const { return lo_open ? lo.floor() + 1 : lo.ceil(); }
    std::int64_t last_integer() const { return hi_open ? hi.ceil() - 1 : hi.floor(); }

    std::int64_t integer_count() const {
        if (empty()) return 0;
        return std::max<std::int64_t>(0, last_integer() - first_integer() + 1);
    }

    bool contains(const Fraction& x) const {
        const int cl = compare(x, lo), ch = compare(x, hi);
        return (lo_open ? cl > 0 : cl >= 0) && (hi_open ? ch < 0 : ch <= 0);
    }
};

inline FareyInterval make_farey_interval(IntervalKind kind, std::int64_t a, std::int64_t b, u64 p, std::int64_t H,
                                         std::int64_t h = 1) {
    require(a >= 1 && b >= 0 && b < a && std::gcd(a, b) == 1, "make_farey_interval: need 0 <= b < a, gcd(a,b) = 1");
    const std::int64_t bp = b * static_cast<std::int64_t>(p);
    FareyInterval iv;
    iv.a = a;
    iv.b = b;
    iv.kind = kind;
    switch (kind) {
        case IntervalKind::I:
            iv.lo = {bp, a};
            iv.hi = {bp + H, a};
            break;
        case IntervalKind::I_star:
            iv.lo = {bp, a};
            iv.hi = {bp + H - a * (h - 1), a};
            break;
        case IntervalKind::J:
            iv.lo = {bp - H, a};
            iv.hi = {bp, a};
            break;
        case IntervalKind::J_star:
            iv.lo = {bp - H, a};
            iv.hi = {bp - a * (h - 1), a};
            break;
    }
    const bool is_i = kind == IntervalKind::I || kind == IntervalKind::I_star;
    iv.lo_open = is_i;
    iv.hi_open = !is_i;
    return iv;
}

struct DisjointnessReport {
    Verdict verdict = Verdict::pass;
    std::size_t pairs = 0;         ///< coprime (a, b) enumerated
    std::size_t intervals = 0;     ///< I and J intervals compared
    std::size_t count_checks = 0;  ///< |I* u J*| >= 2(H/a - h) verifications
    std::string detail;
};

/// The intervals I(a,b), J(a,b) for 0 <= b < a <= X, gcd(a,b) = 1 are
/// pairwise disjoint and lie in (0, p - H), except J(1,0) = [-H, 0).
/// Also verifies that I*(a,b) u J*(a,b) holds at least 2(H/a - h) integers.
/// Requires 2XH < p.
inline DisjointnessReport check_interval_disjointness(u64 p, std::int64_t H, double X, std::int64_t h = 1) {
    require(H >= 1 && h >= 1, "check_interval_disjointness: need H, h >= 1");
    require(X >= 0 && 2.0L * X * H < static_cast<long double>(p), "check_interval_disjointness: need 2XH < p");
    DisjointnessReport rep;
    const auto a_max = static_cast<std::int64_t>(std::floor(X));
    const auto P = static_cast<std::int64_t>(p);
    const Fraction zero{0, 1}, top{P - H, 1};

    std::vector<FareyInterval> all;
    for (std::int64_t a = 1; a <= a_max; ++a) {
        for (std::int64_t b = 0; b < a; ++b) {
            if (std::gcd(a, b) != 1) continue;
            ++rep.pairs;
            const auto i = make_farey_interval(IntervalKind::I, a, b, p, H);
            const auto j = make_farey_interval(IntervalKind::J, a, b, p, H);
            all.push_back(i);
            all.push_back(j);

            const bool j_is_exception = a == 1 && b == 0;
            for (const auto* iv : {&i, &j}) {
                if (iv == &j && j_is_exception) {
                    if (!(compare(j.lo, Fraction{-H, 1}) == 0 && compare(j.hi, zero) == 0)) {
                        rep.verdict = Verdict::fail;
                        rep.detail = "J(1,0) is not [-H, 0)";
                        return rep;
                    }
                    continue;
                }
                const int cl = compare(iv->lo, zero), ch = compare(iv->hi, top);
                const bool inside = (cl > 0 || (cl == 0 && iv->lo_open)) && (ch < 0 || (ch == 0 && iv->hi_open));
                if (!inside) {
                    rep.verdict = Verdict::fail;
                    rep.detail = std::string(to_string(iv->kind)) + "(" + std::to_string(a) + "," +
                                 std::to_string(b) + ") not inside (0, p-H)";
                    return rep;
                }
            }

            const auto count = make_farey_interval(IntervalKind::I_star, a, b, p, H, h).integer_count() +
                               make_farey_interval(IntervalKind::J_star, a, b, p, H, h).integer_count();
            ++rep.count_checks;
            // count >= 2(H/a - h)  <=>  a * count >= 2(H - a h)
            if (static_cast<__int128>(a) * count < 2 * (static_cast<__int128>(H) - static_cast<__int128>(a) * h)) {
                rep.verdict = Verdict::fail;
                rep.detail = "I*/J* integer count too small at (" + std::to_string(a) + "," + std::to_string(b) + ")";
                return rep;
            }
        }
    }
    rep.intervals = all.size();

    std::sort(all.begin(), all.end(), [](const FareyInterval& x, const FareyInterval& y) {
        const int c = compare(x.lo, y.lo);
        if (c != 0) return c < 0;
        return !x.lo_open && y.lo_open;
    });
    // Sorted by left end, the family is disjoint iff each interval starts
    // after the furthest right end seen so far.
    const FareyInterval* reach = nullptr;
    for (const auto& iv : all) {
        if (iv.empty()) continue;
        if (reach) {
            const int c = compare(reach->hi, iv.lo);
            const bool separate = c < 0 || (c == 0 && (reach->hi_open || iv.lo_open));
            if (!separate) {
                rep.verdict = Verdict::fail;
                rep.detail = std::string(to_string(reach->kind)) + "(" + std::to_string(reach->a) + "," +
                             std::to_string(reach->b) + ") overlaps " + to_string(iv.kind) + "(" +
                             std::to_string(iv.a) + "," + std::to_string(iv.b) + ")";
                return rep;
            }
            const int c2 = compare(iv.hi, reach->hi);
            if (c2 > 0 || (c2 == 0 && !iv.hi_open)) reach = &iv;
        } else {
            reach = &iv;
        }
    }
    return rep;
}

// =============================================================================
// Nonresidue factorizations and the shifted-sum / moment lower bounds
// =============================================================================

/// u = u1 * u2 split at the window length h: u1 collects the prime factors
/// below h, u2 those in [h, p). H is the length of the interval (0, H] on
/// which chi is 1 away from the divisors of u.
struct NonresidueFactorization {
    std::vector<u64> primes;  ///< distinct prime factors of u, ascending
    u64 u = 1;
    u64 u1 = 1;
    u64 u2 = 1;
    unsigned k = 0;
    unsigned j = 0;
    unsigned n = 1;  ///< omega(u) + 1
    std::int64_t H = 0;
    u64 h = 1;

    static NonresidueFactorization make(std::vector<u64> primes, u64 h, u64 p, std::int64_t H) {
        std::sort(primes.begin(), primes.end());
        require(std::adjacent_find(primes.begin(), primes.end()) == primes.end(),
                "NonresidueFactorization: u must be squarefree");
        require(h >= 1 && H >= 1, "NonresidueFactorization: need h, H >= 1");
        NonresidueFactorization nf;
        nf.h = h;
        nf.H = H;
        for (u64 q : primes) {
            require(is_prime(q) && q < p, "NonresidueFactorization: factors of u must be primes below p");
            nf.u *= q;
            if (q < h) {
                nf.u1 *= q;
                ++nf.k;
            } else {
                nf.u2 *= q;
                ++nf.j;
            }
        }
        nf.primes = std::move(primes);
        nf.n = nf.k + nf.j + 1;
        return nf;
    }
};

/// u = q_1 ... q_(n-1) and H = q_n - 1 for the first n prime nonresidues of
/// chi; the character hypothesis then holds by construction.
inline NonresidueFactorization construct_instance(const Character& chi, unsigned n, u64 h,
                                                  u64 cap = kDefaultNonresidueCap) {
    require(n >= 1, "construct_instance: n must be >= 1");
    auto q = prime_nonresidues(chi.modulus(), chi.order(), n, cap);
    const auto H = static_cast<std::int64_t>(q.back()) - 1;
    q.pop_back();
    return NonresidueFactorization::make(std::move(q), h, chi.modulus(), H);
}

/// chi(m) = 1 for every 0 < m <= H with gcd(m, u) = 1.
inline bool verify_character_hypothesis(const Character& chi, const NonresidueFactorization& nf) {
    for (std::int64_t m = 1; m <= nf.H; ++m) {
        if (std::gcd(static_cast<u64>(m), nf.u) != 1) continue;
        if (!chi(m).is_one()) return false;
    }
    return true;
}

struct ShiftedSumCheck {
    CheckResult result;
    std::size_t windows = 0;  ///< integers z examined
};

/// |sum_{m<h} chi(z+m)| >= h - 2j for every integer z of a starred interval
/// with u1 | a.
inline ShiftedSumCheck check_shifted_sum_lower(const Character& chi, const NonresidueFactorization& nf,
                                               const FareyInterval& iv) {
    require(iv.kind == IntervalKind::I_star || iv.kind == IntervalKind::J_star,
            "check_shifted_sum_lower: interval must be I* or J*");
    require(iv.a % static_cast<std::int64_t>(nf.u1) == 0, "check_shifted_sum_lower: need u1 | a");
    require(std::gcd(iv.a, iv.b) == 1 && iv.b < iv.a, "check_shifted_sum_lower: need 0 <= b < a, gcd(a,b) = 1");
    require(static_cast<u64>(iv.a) < chi.modulus(), "check_shifted_sum_lower: need a < p");

    ShiftedSumCheck out;
    if (!verify_character_hypothesis(chi, nf)) {
        out.result.verdict = Verdict::hypothesis_failed;
        out.result.detail = "chi(m) != 1 for some m <= H coprime to u";
        return out;
    }
    if (nf.h <= 2 * static_cast<u64>(nf.j)) {
        out.result.verdict = Verdict::vacuous;
        out.result.detail = "h <= 2j";
        return out;
    }
    const auto bound = static_cast<std::int64_t>(nf.h) - 2 * static_cast<std::int64_t>(nf.j);
    const Interval bound2 = Interval::exact(bound * bound);
    out.result.verdict = Verdict::pass;
    out.result.rhs = std::to_string(bound);
    out.result.slack = 1;
    for (std::int64_t z = iv.first_integer(); z <= iv.last_integer(); ++z) {
        ++out.windows;
        const Interval w2 = window_abs2(chi, z, nf.h);
        const double margin = detail::relative_margin(bound2, w2);
        if (margin < out.result.slack) {
            out.result.slack = margin;
            out.result.lhs = "|w|^2 = " + detail::render(w2) + " at z = " + std::to_string(z);
        }
        if (!certainly_le(bound2, w2)) {
            out.result.verdict = Verdict::fail;
            out.result.detail = "window at z = " + std::to_string(z);
            return out;
        }
    }
    return out;
}

/// Preconditions of the moment lower bound: 2h < H < sqrt(hp) and X/u1 > 1
/// with X = H/(2h).
inline void require_proposition_preconditions(u64 p, const NonresidueFactorization& nf) {
    const auto H = static_cast<__int128>(nf.H);
    const auto h = static_cast<__int128>(nf.h);
    require(2 * h < H, "proposition: need 2h < H (so X > 1)");
    require(H * H < h * static_cast<__int128>(p), "proposition: need H < sqrt(hp)");
    require(H > 2 * h * static_cast<__int128>(nf.u1), "proposition: need X/u1 > 1");
    require(nf.h < p, "proposition: need h < p");
}

/// (18/pi^2) h (h-2j)^(2r) (phi(u1)/u1^2) X^2 f(X/u1) with X = H/(2h).
inline Interval s_lower_bound(const NonresidueFactorization& nf, u64 r) {
    u64 phi_u1 = 1;
    for (u64 q : nf.primes) {
        if (q < nf.h) phi_u1 *= q - 1;
    }
    const auto hj = static_cast<std::int64_t>(nf.h) - 2 * static_cast<std::int64_t>(nf.j);
    const Interval pi = Interval::pi();
    const Interval X = Interval::ratio(nf.H, 2 * static_cast<std::int64_t>(nf.h));
    const Interval u1 = Interval::exact(nf.u1);
    return Interval::exact(18) / (pi * pi) * Interval::exact(nf.h) * pow(Interval::exact(hj * hj), r) *
           Interval::exact(phi_u1) / (u1 * u1) * X * X * totient_factor_f(X / u1);
}

struct LowerCheck {
    CheckResult result;
    std::optional<SumStats> sum;  ///< absent for hypothesis failures and vacuous instances
    Interval lower;
};

/// S(chi, h, r) >= (18/pi^2) h (h-2j)^(2r) (phi(u1)/u1^2) X^2 f(X/u1).
inline LowerCheck check_proposition_lower(const Character& chi, const NonresidueFactorization& nf, u64 r) {
    require(r >= 1, "check_proposition_lower: need r >= 1");
    require_proposition_preconditions(chi.modulus(), nf);
    LowerCheck out;
    if (!verify_character_hypothesis(chi, nf)) {
        out.result.verdict = Verdict::hypothesis_failed;
        out.result.detail = "chi(m) != 1 for some m <= H coprime to u";
        return out;
    }
    if (nf.h <= 2 * static_cast<u64>(nf.j)) {
        out.result.verdict = Verdict::vacuous;
        out.result.detail = "h <= 2j";
        return out;
    }
    out.sum = exact_sum_S(chi, nf.h, r);
    out.lower = s_lower_bound(nf, r);
    out.result = detail::assert_ge(out.sum->enclosure, out.lower);
    return out;
}

struct SandwichReport {
    Verdict verdict = Verdict::fail;
    Interval lower;
    Interval sum;
    Interval upper;
    double lower_slack = 0;  ///< relative margin S - lower
    double upper_slack = 0;  ///< relative margin upper - S
    std::string detail;
};

/// lower <= S(chi, h, r) <= upper for one constructed instance.
inline SandwichReport sandwich_report(const Character& chi, const NonresidueFactorization& nf, u64 r) {
    require(r <= 9 * nf.h, "sandwich_report: need r <= 9h");
    const auto low = check_proposition_lower(chi, nf, r);
    SandwichReport rep;
    rep.detail = low.result.detail;
    if (!low.sum) {
        rep.verdict = low.result.verdict;
        return rep;
    }
    rep.lower = low.lower;
    rep.sum = low.sum->enclosure;
    rep.upper = s_upper_bound(chi.modulus(), nf.h, r);
    rep.lower_slack = low.result.slack;
    const auto up = detail::assert_le(rep.sum, rep.upper);
    rep.upper_slack = up.slack;
    rep.verdict = low.result.passed() && up.passed() ? Verdict::pass : Verdict::fail;
    return rep;
}

}  // namespace nonres
