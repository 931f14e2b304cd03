#pragma once

/**
 * @file character.hpp
 * @brief Dirichlet characters modulo an odd prime.
 *
 * A character of order d mod p is realized through a primitive root g and an
 * exponent m with gcd(m, p-1) = (p-1)/d:
 *
 *     chi(g^k) = exp(2 pi i m k / (p-1)).
 *
 * Values are kept exactly as exponents t in Z/d (chi = e^(2 pi i t / d)).
 * The kernel of an order-d character is the set of d-th power residues, so
 * nonresidue questions need only one modular exponentiation per argument and
 * never a discrete logarithm.
 */

#include "nonres/arith.hpp"
#include "nonres/errors.hpp"

#include <cstdint>
#include <memory>
#include <numeric>
#include <string>
#include <vector>

namespace nonres {

/// Largest modulus for which a full discrete-log table is built.
inline constexpr u64 kIndexTableLimit = 1'000'000;

/// Default upper limit (exclusive) on candidate primes in nonresidue searches.
inline constexpr u64 kDefaultNonresidueCap = 1'000'000;

/// Least primitive root mod an odd prime p.
inline u64 find_primitive_root(u64 p, FactorOptions opts = {}) {
    require(p >= 3 && is_prime(p), "find_primitive_root: p must be an odd prime");
    const auto fac = factorize(p - 1, opts);
    for (u64 g = 2; g < p; ++g) {
        bool generator = true;
        for (const auto& [q, e] : fac) {
            if (mod_pow(static_cast<std::int64_t>(g), (p - 1) / q, p) == 1) {
                generator = false;
                break;
            }
        }
        if (generator) return g;
    }
    return 2;  // p == 3 exits the loop above with g == 2
}

struct CharacterSpec {
    u64 p;
    u64 d;
    u64 g;
    u64 m;

    /// Character of order d mod p with exponent m; m defaults to (p-1)/d.
    static CharacterSpec make(u64 p, u64 d, u64 m = 0) {
        require(p >= 3 && is_prime(p), "CharacterSpec: p must be an odd prime");
        require(d >= 2 && (p - 1) % d == 0, "CharacterSpec: order d must satisfy d >= 2 and d | p-1");
        if (m == 0) m = (p - 1) / d;
        require(m < p - 1 && std::gcd(m, p - 1) == (p - 1) / d, "CharacterSpec: exponent m does not give order d");
        return {p, d, find_primitive_root(p), m};
    }

    friend bool operator==(const CharacterSpec&, const CharacterSpec&) = default;
};

/// chi(a) as an exponent t in [0, d), or the zero marker when p | a.
class CharacterValue {
public:
    static CharacterValue zero() { return CharacterValue(); }
    static CharacterValue root(u64 t) { return CharacterValue(t); }

    bool is_zero() const { return zero_; }
    bool is_one() const { return !zero_ && t_ == 0; }
    u64 exponent() const { return t_; }

    friend bool operator==(const CharacterValue&, const CharacterValue&) = default;

private:
    CharacterValue() = default;
    explicit CharacterValue(u64 t) : zero_(false), t_(t) {}
    bool zero_ = true;
    u64 t_ = 0;
};

/// Discrete logarithms base g for all units mod p.
class IndexTable {
public:
    IndexTable(u64 p, u64 g) : p_(p), ind_(p, 0) {
        if (p > kIndexTableLimit) {
            throw threshold_exceeded("index table for p = " + std::to_string(p) + " exceeds limit " +
                                     std::to_string(kIndexTableLimit) + "; use is_kernel for nonresidue tests");
        }
        u64 x = 1;
        for (u64 k = 0; k + 1 < p; ++k) {
            ind_[x] = static_cast<std::uint32_t>(k);
            x = mod_mul(x, g, p);
        }
    }

    /// Index of a unit a (a mod p != 0).
    u64 operator[](u64 a) const { return ind_[a % p_]; }
    u64 modulus() const { return p_; }

private:
    u64 p_;
    std::vector<std::uint32_t> ind_;
};

/// Evaluable character: spec plus a shared, immutable index table.
class Character {
public:
    explicit Character(const CharacterSpec& spec)
        : spec_(spec), table_(std::make_shared<const IndexTable>(spec.p, spec.g)), step_((spec.p - 1) / spec.d) {}

    const CharacterSpec& spec() const { return spec_; }
    u64 modulus() const { return spec_.p; }
    u64 order() const { return spec_.d; }

    CharacterValue operator()(std::int64_t a) const {
        const auto p = static_cast<std::int64_t>(spec_.p);
        std::int64_t r = a % p;
        if (r < 0) r += p;
        if (r == 0) return CharacterValue::zero();
        const u64 k = (*table_)[static_cast<u64>(r)];
        const u64 t = mod_mul(spec_.m, k, spec_.p - 1);
        return CharacterValue::root(t / step_);
    }

private:
    CharacterSpec spec_;
    std::shared_ptr<const IndexTable> table_;
    u64 step_;
};

inline CharacterValue char_value(const Character& chi, std::int64_t a) { return chi(a); }

/// True iff q is a d-th power residue mod p, i.e. chi(q) = 1 for every
/// character of order d.
inline bool is_kernel(u64 p, u64 d, u64 q) {
    require(d >= 1 && (p - 1) % d == 0, "is_kernel: d must divide p-1");
    require(q % p != 0, "is_kernel: q must be a unit mod p");
    return mod_pow(static_cast<std::int64_t>(q % p), (p - 1) / d, p) == 1;
}

/// The `count` smallest primes q != p with chi(q) != 1 for an order-d
/// character mod p. Throws search_cap_exceeded if fewer exist below `cap`.
inline std::vector<u64> prime_nonresidues(u64 p, u64 d, std::size_t count, u64 cap = kDefaultNonresidueCap) {
    require(is_prime(p), "prime_nonresidues: p must be prime");
    require(d >= 2 && (p - 1) % d == 0, "prime_nonresidues: need d >= 2 and d | p-1");
    std::vector<u64> out;
    if (count == 0) return out;
    PrimeCursor primes(cap);
    const u64 e = (p - 1) / d;
    while (out.size() < count) {
        const auto q = primes.next();
        if (!q) {
            throw search_cap_exceeded("prime_nonresidues: only " + std::to_string(out.size()) + " of " +
                                      std::to_string(count) + " nonresidues below cap " + std::to_string(cap) +
                                      " for p = " + std::to_string(p));
        }
        if (*q == p) continue;
        if (mod_pow(static_cast<std::int64_t>(*q % p), e, p) != 1) out.push_back(*q);
    }
    return out;
}

}  // namespace nonres
