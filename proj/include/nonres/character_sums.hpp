#pragma once

/**
 * @file character_sums.hpp
 * @brief Exact and certified evaluation of short character sums and their
 * complete moments
 *
 *     S(chi, h, r) = sum_{x mod p} | sum_{0 <= m < h} chi(x + m) |^(2r).
 *
 * Quadratic characters take values in {-1, 0, 1} and are summed in integers.
 * For higher orders a window sum w = sum_t c_t zeta^t (c_t = number of terms
 * with exponent t) has
 *
 *     |w|^2 = sum_k A_k cos(2 pi k / d),   A_k = sum_t c_t c_(t+k),
 *
 * so |w|^2 is an integer combination of cosines. Windows sharing the same
 * coefficient vector A are evaluated once, in interval arithmetic.
 */

#include "nonres/character.hpp"
#include "nonres/errors.hpp"
#include "nonres/interval.hpp"

#include <gmpxx.h>

#include <cstdint>
#include <cstdlib>
#include <map>
#include <optional>
#include <vector>

namespace nonres {

struct SumStats {
    u64 p = 0;
    u64 h = 0;
    u64 r = 0;
    double value = 0;        ///< midpoint of the enclosure
    double error_bound = 0;  ///< half-width of the enclosure; 0 for quadratic characters
    std::optional<mpz_class> exact;
    Interval enclosure;
};

namespace detail {

/// Sliding window of character exponents: counts per class t in Z/d.
class WindowCounts {
public:
    explicit WindowCounts(u64 d) : counts_(d, 0) {}

    void add(const CharacterValue& v, int delta) {
        if (!v.is_zero()) counts_[v.exponent()] += delta;
    }

    /// Autocorrelation grouped by cosine value: A_0, then pairs
    /// (k, A_k + A_(d-k)) for 0 < k < d/2 and (d/2, A_(d/2)), nonzero only.
    std::vector<std::int64_t> key() const {
        const auto d = static_cast<std::int64_t>(counts_.size());
        std::vector<std::int64_t> nz;
        for (std::int64_t t = 0; t < d; ++t) {
            if (counts_[t] != 0) nz.push_back(t);
        }
        std::map<std::int64_t, std::int64_t> coeff;
        std::int64_t a0 = 0;
        for (auto s : nz) {
            for (auto t : nz) {
                const std::int64_t c = counts_[s] * counts_[t];
                std::int64_t k = ((s - t) % d + d) % d;
                if (k == 0) {
                    a0 += c;
                    continue;
                }
                coeff[std::min(k, d - k)] += c;
            }
        }
        std::vector<std::int64_t> out{a0};
        for (auto [k, c] : coeff) {
            if (c != 0) {
                out.push_back(k);
                out.push_back(c);
            }
        }
        return out;
    }

private:
    std::vector<std::int64_t> counts_;
};

/// Enclosure of |w|^2 from a key produced by WindowCounts::key.
inline Interval abs2_from_key(const std::vector<std::int64_t>& key, u64 d) {
    Interval acc = Interval::exact(key[0]);
    for (std::size_t i = 1; i + 1 < key.size(); i += 2) {
        acc += Interval::exact(key[i + 1]) * Interval::cos_2pi_ratio(key[i], static_cast<std::int64_t>(d));
    }
    // Rounding may push a zero sum slightly negative.
    if (mpfr_sgn(acc.lower().get()) < 0) {
        BigFloat zero;
        acc = Interval::hull(zero, acc.upper());
    }
    return acc;
}

}  // namespace detail

/// Enclosure of |sum_{m<h} chi(z+m)|^2 for a single window; exact
/// (a point interval) for quadratic characters and for windows whose terms
/// all share one value.
inline Interval window_abs2(const Character& chi, std::int64_t z, u64 h) {
    if (chi.order() == 2) {
        std::int64_t w = 0;
        for (u64 m = 0; m < h; ++m) {
            const auto v = chi(z + static_cast<std::int64_t>(m));
            if (!v.is_zero()) w += v.is_one() ? 1 : -1;
        }
        return Interval::exact(w * w);
    }
    detail::WindowCounts counts(chi.order());
    for (u64 m = 0; m < h; ++m) counts.add(chi(z + static_cast<std::int64_t>(m)), +1);
    return detail::abs2_from_key(counts.key(), chi.order());
}

/// S(chi, h, r) with the outer sum started at `shift` (any complete residue
/// system gives the same value).
inline SumStats exact_sum_S(const Character& chi, u64 h, u64 r, std::int64_t shift = 0) {
    const u64 p = chi.modulus();
    require(h >= 1 && h < p, "exact_sum_S: need 1 <= h < p");
    require(r >= 1, "exact_sum_S: need r >= 1");

    SumStats st;
    st.p = p;
    st.h = h;
    st.r = r;

    // Character values over one period, starting at `shift`.
    std::vector<CharacterValue> vals;
    vals.reserve(p);
    for (u64 x = 0; x < p; ++x) vals.push_back(chi(shift + static_cast<std::int64_t>(x)));

    if (chi.order() == 2) {
        auto as_int = [](const CharacterValue& v) -> std::int64_t { return v.is_zero() ? 0 : (v.is_one() ? 1 : -1); };
        std::vector<u64> hist(h + 1, 0);
        std::int64_t w = 0;
        for (u64 m = 0; m < h; ++m) w += as_int(vals[m]);
        for (u64 x = 0; x < p; ++x) {
            ++hist[static_cast<u64>(std::llabs(w))];
            w += as_int(vals[(x + h) % p]) - as_int(vals[x]);
        }
        mpz_class total = 0;
        for (u64 k = 0; k <= h; ++k) {
            if (hist[k] == 0) continue;
            mpz_class term;
            mpz_ui_pow_ui(term.get_mpz_t(), k, 2 * r);
            total += term * hist[k];
        }
        st.exact = total;
        st.enclosure = Interval::from(total);
        st.value = total.get_d();
        st.error_bound = 0;
        return st;
    }

    std::map<std::vector<std::int64_t>, u64> profiles;
    detail::WindowCounts counts(chi.order());
    for (u64 m = 0; m < h; ++m) counts.add(vals[m], +1);
    for (u64 x = 0; x < p; ++x) {
        ++profiles[counts.key()];
        counts.add(vals[x], -1);
        counts.add(vals[(x + h) % p], +1);
    }
    Interval total = Interval::exact(0);
    for (const auto& [key, count] : profiles) {
        total += pow(detail::abs2_from_key(key, chi.order()), r) * Interval::exact(count);
    }
    st.enclosure = total;
    st.value = total.mid_d();
    st.error_bound = total.width_d() / 2;
    if (total.is_point() && mpfr_integer_p(total.lower().get())) {
        mpz_class z;
        mpfr_get_z(z.get_mpz_t(), total.lower().get(), MPFR_RNDN);
        st.exact = z;
    }
    return st;
}

}  // namespace nonres
