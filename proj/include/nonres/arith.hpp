#pragma once

/**
 * @file arith.hpp
 * @brief Word-size modular arithmetic, primality, factoring and prime sieves.
 *
 * Moduli up to 2^63 are supported; products go through unsigned __int128.
 */

#include "nonres/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

namespace nonres {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

constexpr u64 mod_mul(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }

/// a^e mod m, for m >= 1. Negative bases are reduced into [0, m) first.
constexpr u64 mod_pow(std::int64_t a, u64 e, u64 m) {
    if (m == 1) return 0;
    std::int64_t r = a % static_cast<std::int64_t>(m);
    u64 base = static_cast<u64>(r < 0 ? r + static_cast<std::int64_t>(m) : r);
    u64 result = 1;
    while (e > 0) {
        if (e & 1) result = mod_mul(result, base, m);
        base = mod_mul(base, base, m);
        e >>= 1;
    }
    return result;
}

// =============================================================================
// Primality
// =============================================================================

namespace detail {

constexpr bool mr_witness(u64 n, u64 a, u64 d, int s) {
    u64 x = mod_pow(static_cast<std::int64_t>(a % n), d, n);
    if (x == 1 || x == n - 1) return true;
    for (int i = 1; i < s; ++i) {
        x = mod_mul(x, x, n);
        if (x == n - 1) return true;
    }
    return false;
}

}  // namespace detail

/// Deterministic Miller-Rabin for all 64-bit n (first twelve prime bases).
constexpr bool is_prime(u64 n) {
    if (n < 2) return false;
    constexpr u64 small[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
    for (u64 q : small) {
        if (n % q == 0) return n == q;
    }
    u64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (u64 a : small) {
        if (!detail::mr_witness(n, a, d, s)) return false;
    }
    return true;
}

// =============================================================================
// Sieves
// =============================================================================

/// All primes <= limit (plain Eratosthenes).
inline std::vector<u64> primes_up_to(u64 limit) {
    std::vector<u64> out;
    if (limit < 2) return out;
    std::vector<bool> composite(limit + 1, false);
    for (u64 i = 2; i <= limit; ++i) {
        if (composite[i]) continue;
        out.push_back(i);
        for (u64 j = i * i; j <= limit; j += i) composite[j] = true;
    }
    return out;
}

/// Primes in [lo, hi) by a segmented sieve; memory is O(sqrt(hi) + (hi - lo)).
inline std::vector<u64> primes_in_range(u64 lo, u64 hi) {
    std::vector<u64> out;
    if (hi <= lo || hi <= 2) return out;
    lo = std::max<u64>(lo, 2);
    const auto root = static_cast<u64>(std::sqrt(static_cast<long double>(hi))) + 1;
    const auto base = primes_up_to(root);
    std::vector<bool> composite(hi - lo, false);
    for (u64 q : base) {
        u64 start = std::max(q * q, (lo + q - 1) / q * q);
        for (u64 j = start; j < hi; j += q) composite[j - lo] = true;
    }
    for (u64 i = 0; i < hi - lo; ++i) {
        if (!composite[i]) out.push_back(lo + i);
    }
    return out;
}

/// Lazily enumerates primes in increasing order below a cap, one sieve
/// segment at a time.
class PrimeCursor {
public:
    explicit PrimeCursor(u64 cap, u64 segment = 1u << 12) : cap_(cap), segment_(segment) {}

    /// Next prime, or nullopt when the cap is reached.
    std::optional<u64> next() {
        while (idx_ == block_.size()) {
            if (seg_lo_ >= cap_) return std::nullopt;
            const u64 seg_hi = std::min(cap_, seg_lo_ + segment_);
            block_ = primes_in_range(seg_lo_, seg_hi);
            idx_ = 0;
            seg_lo_ = seg_hi;
        }
        return block_[idx_++];
    }

    u64 cap() const { return cap_; }

private:
    u64 cap_;
    u64 segment_;
    u64 seg_lo_ = 2;
    std::vector<u64> block_;
    std::size_t idx_ = 0;
};

/// Euler totient phi(0..n) by sieving; phi(0) is stored as 0.
inline std::vector<u64> totients_up_to(u64 n) {
    std::vector<u64> phi(n + 1);
    std::iota(phi.begin(), phi.end(), u64{0});
    for (u64 i = 2; i <= n; ++i) {
        if (phi[i] != i) continue;
        for (u64 j = i; j <= n; j += i) phi[j] -= phi[j] / i;
    }
    return phi;
}

// =============================================================================
// Factoring
// =============================================================================

struct PrimePower {
    u64 prime;
    unsigned exponent;

    friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

namespace detail {

/// Brent's variant of Pollard rho; returns a nontrivial factor or 0.
inline u64 pollard_brent(u64 n, u64 c, u64 max_iter) {
    auto f = [&](u64 x) { return (mod_mul(x, x, n) + c) % n; };
    u64 y = 2, x = 2, g = 1, q = 1, ys = 2;
    u64 r = 1, iters = 0;
    constexpr u64 m = 128;
    while (g == 1) {
        x = y;
        for (u64 i = 0; i < r; ++i) y = f(y);
        u64 k = 0;
        while (k < r && g == 1) {
            ys = y;
            for (u64 i = 0; i < std::min(m, r - k); ++i) {
                y = f(y);
                q = mod_mul(q, x > y ? x - y : y - x, n);
            }
            g = std::gcd(q, n);
            k += m;
        }
        r <<= 1;
        iters += r;
        if (iters > max_iter) return 0;
    }
    if (g == n) {
        do {
            ys = f(ys);
            g = std::gcd(x > ys ? x - ys : ys - x, n);
        } while (g == 1);
    }
    return g == n ? 0 : g;
}

inline void split_composite(u64 n, std::vector<u64>& out, u64 max_iter) {
    if (n == 1) return;
    if (is_prime(n)) {
        out.push_back(n);
        return;
    }
    for (u64 c = 1; c < 64; ++c) {
        if (u64 d = pollard_brent(n, c, max_iter); d != 0) {
            split_composite(d, out, max_iter);
            split_composite(n / d, out, max_iter);
            return;
        }
    }
    throw search_cap_exceeded("factoring effort exhausted for " + std::to_string(n));
}

}  // namespace detail

struct FactorOptions {
    u64 trial_limit = 10'000'000;
    u64 rho_iterations = 1u << 26;
};

/// Prime factorization with ascending primes: trial division, then Pollard rho.
inline std::vector<PrimePower> factorize(u64 n, FactorOptions opts = {}) {
    require(n >= 1, "factorize: n must be positive");
    std::vector<PrimePower> out;
    auto strip = [&](u64 q) {
        if (n % q != 0) return;
        unsigned e = 0;
        while (n % q == 0) {
            n /= q;
            ++e;
        }
        out.push_back({q, e});
    };
    strip(2);
    for (u64 q = 3; q <= opts.trial_limit && q * q <= n; q += 2) strip(q);
    if (n > 1) {
        std::vector<u64> rest;
        detail::split_composite(n, rest, opts.rho_iterations);
        std::sort(rest.begin(), rest.end());
        for (u64 q : rest) {
            if (!out.empty() && out.back().prime == q) {
                ++out.back().exponent;
            } else {
                out.push_back({q, 1});
            }
        }
    }
    return out;
}

/// All positive divisors, ascending.
inline std::vector<u64> divisors(const std::vector<PrimePower>& fac) {
    std::vector<u64> out{1};
    for (const auto& [q, e] : fac) {
        const std::size_t sz = out.size();
        u64 pw = 1;
        for (unsigned i = 0; i < e; ++i) {
            pw *= q;
            for (std::size_t k = 0; k < sz; ++k) out.push_back(out[k] * pw);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

inline std::vector<u64> divisors(u64 n) { return divisors(factorize(n)); }

}  // namespace nonres
