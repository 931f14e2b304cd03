#pragma once

/**
 * @file interval.hpp
 * @brief Rigorous interval arithmetic over MPFR.
 *
 * Every operation rounds the lower endpoint toward -inf and the upper
 * endpoint toward +inf, so the true real value of an expression built from
 * exact inputs always lies inside the returned interval. Inequality checks
 * compare the unfavorable endpoints: `a <= b` is certified when
 * `a.upper() <= b.lower()`.
 */

#include <gmpxx.h>
#include <mpfr.h>

#include <algorithm>
#include <concepts>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <utility>

namespace nonres {

/// Working precision (bits) for all certified evaluations.
inline constexpr mpfr_prec_t kWorkingBits = 128;

/// Owning wrapper around an `mpfr_t`.
class BigFloat {
public:
    explicit BigFloat(mpfr_prec_t bits = kWorkingBits) { mpfr_init2(v_, bits); mpfr_set_zero(v_, 1); }
    BigFloat(const BigFloat& o) {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    BigFloat(BigFloat&& o) noexcept {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_swap(v_, o.v_);
    }
    BigFloat& operator=(const BigFloat& o) {
        if (this != &o) {
            mpfr_set_prec(v_, mpfr_get_prec(o.v_));
            mpfr_set(v_, o.v_, MPFR_RNDN);
        }
        return *this;
    }
    BigFloat& operator=(BigFloat&& o) noexcept {
        mpfr_swap(v_, o.v_);
        return *this;
    }
    ~BigFloat() { mpfr_clear(v_); }

    mpfr_ptr get() { return v_; }
    mpfr_srcptr get() const { return v_; }

    double to_double(mpfr_rnd_t rnd) const { return mpfr_get_d(v_, rnd); }

    std::string to_string(int digits = 20) const {
        char buf[256];
        mpfr_snprintf(buf, sizeof buf, "%.*Rg", digits, v_);
        return buf;
    }

private:
    mpfr_t v_;
};

/// Closed interval [lo, hi] with outward-rounded endpoints.
class Interval {
public:
    Interval() = default;

    template <std::integral T>
    static Interval exact(T v) {
        Interval r;
        if constexpr (std::is_signed_v<T>) {
            mpfr_set_si(r.lo_.get(), static_cast<long>(v), MPFR_RNDD);
            mpfr_set_si(r.hi_.get(), static_cast<long>(v), MPFR_RNDU);
        } else {
            mpfr_set_ui(r.lo_.get(), static_cast<unsigned long>(v), MPFR_RNDD);
            mpfr_set_ui(r.hi_.get(), static_cast<unsigned long>(v), MPFR_RNDU);
        }
        return r;
    }

    /// A double is exactly representable at working precision.
    static Interval exact(double v) {
        Interval r;
        mpfr_set_d(r.lo_.get(), v, MPFR_RNDD);
        mpfr_set_d(r.hi_.get(), v, MPFR_RNDU);
        return r;
    }

    static Interval from(const mpz_class& v) {
        Interval r;
        mpfr_set_z(r.lo_.get(), v.get_mpz_t(), MPFR_RNDD);
        mpfr_set_z(r.hi_.get(), v.get_mpz_t(), MPFR_RNDU);
        return r;
    }

    static Interval from(const mpq_class& v) {
        Interval r;
        mpfr_set_q(r.lo_.get(), v.get_mpq_t(), MPFR_RNDD);
        mpfr_set_q(r.hi_.get(), v.get_mpq_t(), MPFR_RNDU);
        return r;
    }

    static Interval from_u128(unsigned __int128 v) {
        mpz_class z = static_cast<unsigned long>(v >> 64);
        z <<= 64;
        z += static_cast<unsigned long>(static_cast<std::uint64_t>(v));
        return from(z);
    }

    static Interval ratio(std::int64_t num, std::int64_t den) { return exact(num) / exact(den); }

    /// Hull of two values given in either order.
    static Interval hull(const BigFloat& a, const BigFloat& b) {
        Interval r;
        if (mpfr_lessequal_p(a.get(), b.get())) {
            r.lo_ = a;
            r.hi_ = b;
        } else {
            r.lo_ = b;
            r.hi_ = a;
        }
        return r;
    }

    static Interval pi() {
        Interval r;
        mpfr_const_pi(r.lo_.get(), MPFR_RNDD);
        mpfr_const_pi(r.hi_.get(), MPFR_RNDU);
        return r;
    }

    static Interval e() { return exp(exact(1)); }

    /// cos(2 pi k / d). The rational values (0, +-1/2, +-1) come out as
    /// point intervals.
    static Interval cos_2pi_ratio(std::int64_t k, std::int64_t d) {
        if (d <= 0) throw std::domain_error("cos_2pi_ratio: d must be positive");
        k %= d;
        if (k < 0) k += d;
        // 12k/d integral means the angle is a multiple of 30 degrees.
        if ((12 * k) % d == 0) {
            switch ((12 * k) / d) {
                case 0: return exact(1);
                case 2: case 10: return ratio(1, 2);
                case 3: case 9: return exact(0);
                case 4: case 8: return ratio(-1, 2);
                case 6: return exact(-1);
                default: break;
            }
        }
        const Interval angle = exact(2 * k) * pi() / exact(d);
        // cos is 1-Lipschitz: widen cos(lo) by the angle's width on each side.
        BigFloat width, c_lo, c_hi;
        mpfr_sub(width.get(), angle.hi_.get(), angle.lo_.get(), MPFR_RNDU);
        mpfr_cos(c_lo.get(), angle.lo_.get(), MPFR_RNDD);
        mpfr_cos(c_hi.get(), angle.lo_.get(), MPFR_RNDU);
        Interval r;
        mpfr_sub(r.lo_.get(), c_lo.get(), width.get(), MPFR_RNDD);
        mpfr_add(r.hi_.get(), c_hi.get(), width.get(), MPFR_RNDU);
        return r;
    }

    const BigFloat& lower() const { return lo_; }
    const BigFloat& upper() const { return hi_; }
    double lower_d() const { return lo_.to_double(MPFR_RNDD); }
    double upper_d() const { return hi_.to_double(MPFR_RNDU); }
    double mid_d() const { return 0.5 * (lower_d() + upper_d()); }
    double width_d() const {
        BigFloat w;
        mpfr_sub(w.get(), hi_.get(), lo_.get(), MPFR_RNDU);
        return w.to_double(MPFR_RNDU);
    }

    bool contains_zero() const { return mpfr_sgn(lo_.get()) <= 0 && mpfr_sgn(hi_.get()) >= 0; }
    bool is_positive() const { return mpfr_sgn(lo_.get()) > 0; }
    bool is_point() const { return mpfr_equal_p(lo_.get(), hi_.get()) != 0; }

    friend Interval operator+(const Interval& a, const Interval& b) {
        Interval r;
        mpfr_add(r.lo_.get(), a.lo_.get(), b.lo_.get(), MPFR_RNDD);
        mpfr_add(r.hi_.get(), a.hi_.get(), b.hi_.get(), MPFR_RNDU);
        return r;
    }

    friend Interval operator-(const Interval& a, const Interval& b) {
        Interval r;
        mpfr_sub(r.lo_.get(), a.lo_.get(), b.hi_.get(), MPFR_RNDD);
        mpfr_sub(r.hi_.get(), a.hi_.get(), b.lo_.get(), MPFR_RNDU);
        return r;
    }

    friend Interval operator-(const Interval& a) {
        Interval r;
        mpfr_neg(r.lo_.get(), a.hi_.get(), MPFR_RNDD);
        mpfr_neg(r.hi_.get(), a.lo_.get(), MPFR_RNDU);
        return r;
    }

    friend Interval operator*(const Interval& a, const Interval& b) {
        return corners(a, b, [](mpfr_ptr out, mpfr_srcptr x, mpfr_srcptr y, mpfr_rnd_t rnd) {
            mpfr_mul(out, x, y, rnd);
        });
    }

    friend Interval operator/(const Interval& a, const Interval& b) {
        if (b.contains_zero()) throw std::domain_error("interval division by an interval containing zero");
        return corners(a, b, [](mpfr_ptr out, mpfr_srcptr x, mpfr_srcptr y, mpfr_rnd_t rnd) {
            mpfr_div(out, x, y, rnd);
        });
    }

    Interval& operator+=(const Interval& o) { return *this = *this + o; }
    Interval& operator-=(const Interval& o) { return *this = *this - o; }
    Interval& operator*=(const Interval& o) { return *this = *this * o; }
    Interval& operator/=(const Interval& o) { return *this = *this / o; }

    friend Interval sqrt(const Interval& a) {
        if (mpfr_sgn(a.lo_.get()) < 0) throw std::domain_error("interval sqrt of negative value");
        return monotone(a, mpfr_sqrt);
    }
    friend Interval log(const Interval& a) {
        if (!a.is_positive()) throw std::domain_error("interval log of nonpositive value");
        return monotone(a, mpfr_log);
    }
    friend Interval exp(const Interval& a) { return monotone(a, mpfr_exp); }

    /// Nonnegative base raised to a nonnegative integer power.
    friend Interval pow(const Interval& a, unsigned long k) {
        if (mpfr_sgn(a.lo_.get()) < 0) throw std::domain_error("interval integer power of negative value");
        Interval r;
        mpfr_pow_ui(r.lo_.get(), a.lo_.get(), k, MPFR_RNDD);
        mpfr_pow_ui(r.hi_.get(), a.hi_.get(), k, MPFR_RNDU);
        return r;
    }

    /// Positive base raised to a real power.
    friend Interval pow(const Interval& a, const Interval& y) { return exp(y * log(a)); }

    /// True when every point of `a` is <= every point of `b`.
    friend bool certainly_le(const Interval& a, const Interval& b) {
        return mpfr_lessequal_p(a.hi_.get(), b.lo_.get()) != 0;
    }
    friend bool certainly_lt(const Interval& a, const Interval& b) {
        return mpfr_less_p(a.hi_.get(), b.lo_.get()) != 0;
    }

private:
    template <typename Op>
    static Interval corners(const Interval& a, const Interval& b, Op op) {
        BigFloat lo[4], hi[4];
        const mpfr_srcptr xs[2] = {a.lo_.get(), a.hi_.get()};
        const mpfr_srcptr ys[2] = {b.lo_.get(), b.hi_.get()};
        for (int i = 0; i < 4; ++i) {
            op(lo[i].get(), xs[i >> 1], ys[i & 1], MPFR_RNDD);
            op(hi[i].get(), xs[i >> 1], ys[i & 1], MPFR_RNDU);
        }
        Interval r;
        r.lo_ = lo[0];
        r.hi_ = hi[0];
        for (int i = 1; i < 4; ++i) {
            if (mpfr_less_p(lo[i].get(), r.lo_.get())) r.lo_ = lo[i];
            if (mpfr_greater_p(hi[i].get(), r.hi_.get())) r.hi_ = hi[i];
        }
        return r;
    }

    static Interval monotone(const Interval& a, int (*fn)(mpfr_ptr, mpfr_srcptr, mpfr_rnd_t)) {
        Interval r;
        fn(r.lo_.get(), a.lo_.get(), MPFR_RNDD);
        fn(r.hi_.get(), a.hi_.get(), MPFR_RNDU);
        return r;
    }

    BigFloat lo_;
    BigFloat hi_;
};

}  // namespace nonres
