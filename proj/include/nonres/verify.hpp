#pragma once

/**
 * @file verify.hpp
 * @brief Grid sweeps over the lemma checks, with per-lemma summaries.
 *
 * Each suite expands its grid into an ordered list of instances, evaluates
 * them (optionally in parallel) and folds the results in instance order, so
 * reports are identical for any thread count.
 */

#include "nonres/arith.hpp"
#include "nonres/character.hpp"
#include "nonres/constants.hpp"
#include "nonres/lemmas.hpp"
#include "nonres/parallel.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdint>
#include <functional>
#include <limits>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace nonres {

struct LemmaReport {
    std::string lemma;
    std::size_t instances_run = 0;
    std::size_t passes = 0;
    std::size_t failures = 0;
    std::size_t vacuous_skips = 0;
    std::size_t hypothesis_failures = 0;
    double min_slack = std::numeric_limits<double>::infinity();
    std::string worst_instance;
    std::vector<std::string> failure_examples;  ///< at most ten
    double seconds = 0;

    bool ok() const { return failures == 0 && hypothesis_failures == 0 && instances_run > 0; }
};

/// Outcome of a single instance inside a sweep.
struct InstanceOutcome {
    std::string label;
    Verdict verdict = Verdict::fail;
    double slack = 0;
    std::string detail;
};

/// Folds outcomes in order into a report.
inline LemmaReport summarize(std::string lemma, const std::vector<InstanceOutcome>& outcomes) {
    LemmaReport rep;
    rep.lemma = std::move(lemma);
    for (const auto& o : outcomes) {
        ++rep.instances_run;
        switch (o.verdict) {
            case Verdict::pass: ++rep.passes; break;
            case Verdict::fail: ++rep.failures; break;
            case Verdict::vacuous: ++rep.vacuous_skips; continue;
            case Verdict::hypothesis_failed: ++rep.hypothesis_failures; break;
        }
        if (o.verdict != Verdict::pass && rep.failure_examples.size() < 10) {
            rep.failure_examples.push_back(o.label + ": " + to_string(o.verdict) + (o.detail.empty() ? "" : " (" + o.detail + ")"));
        }
        if (o.slack < rep.min_slack) {
            rep.min_slack = o.slack;
            rep.worst_instance = o.label;
        }
    }
    return rep;
}

/// Sweep sizes. The defaults are the desk-scale grids.
struct VerifyGrid {
    u64 stirling_r_max = 500;
    u64 totient_x_max = 5000;  ///< x runs over 1.1, 1.2, ..., totient_x_max
    u64 convexity_h_max = 200;
    u64 convexity_r_max = 200;
    u64 upper_p_max = 300;
    u64 upper_h_max = 8;
    u64 upper_r_max = 6;
    std::size_t disjoint_trials = 200;
    u64 disjoint_p_max = 100'000;
    double disjoint_x_max = 60;
    u64 prop_p_max = 100'000;
    u64 prop_prime_stride = 97;  ///< use every stride-th prime in [prop_p_min, prop_p_max]
    u64 prop_p_min = 1000;
    unsigned prop_n_max = 3;
    u64 prop_r_max = 3;
    u64 sum_chi_p_max = 10'000;
    unsigned identity_n_max = 12;
    u64 kernel_p_max = 10'000;
    std::uint64_t seed = 20240601;
    unsigned threads = 1;

    /// A reduced grid for smoke runs.
    static VerifyGrid quick() {
        VerifyGrid g;
        g.stirling_r_max = 60;
        g.totient_x_max = 200;
        g.convexity_h_max = 40;
        g.convexity_r_max = 40;
        g.upper_p_max = 60;
        g.upper_h_max = 5;
        g.upper_r_max = 4;
        g.disjoint_trials = 20;
        g.disjoint_x_max = 20;
        g.prop_p_max = 20'000;
        g.prop_prime_stride = 211;
        g.sum_chi_p_max = 2000;
        g.kernel_p_max = 500;
        return g;
    }
};

namespace detail {

template <typename Fn>
LemmaReport timed(const std::string& name, Fn&& body) {
    const auto t0 = std::chrono::steady_clock::now();
    LemmaReport rep = summarize(name, body());
    rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

inline InstanceOutcome outcome(std::string label, const CheckResult& res) {
    return {std::move(label), res.verdict, res.slack, res.detail};
}

inline std::vector<u64> odd_primes_up_to(u64 n) {
    auto ps = primes_up_to(n);
    if (!ps.empty() && ps.front() == 2) ps.erase(ps.begin());
    return ps;
}

}  // namespace detail

inline LemmaReport verify_stirling(const VerifyGrid& g) {
    return detail::timed("stirling", [&] {
        return parallel_map(g.stirling_r_max, g.threads, [](std::size_t i) {
            const u64 r = i + 1;
            return detail::outcome("r=" + std::to_string(r), check_stirling_ratio(r));
        });
    });
}

inline LemmaReport verify_totient(const VerifyGrid& g) {
    return detail::timed("totient", [&] {
        const TotientPrefixSums sums(g.totient_x_max);
        const u64 tenths = 10 * g.totient_x_max;
        return parallel_map(tenths - 10, g.threads, [&](std::size_t i) {
            const mpq_class x(mpz_class(static_cast<unsigned long>(i + 11)), mpz_class(10));
            return detail::outcome("x=" + std::to_string(i + 11) + "/10", check_totient_inequality(x, sums));
        });
    });
}

inline LemmaReport verify_convexity(const VerifyGrid& g) {
    return detail::timed("convexity", [&] {
        struct Point { u64 h, r, j; };
        std::vector<Point> pts;
        for (u64 h = 1; h <= g.convexity_h_max; ++h)
            for (u64 r = 1; r <= g.convexity_r_max; ++r)
                for (u64 j = 0; 8 * j <= h; ++j) pts.push_back({h, r, j});
        return parallel_map(pts.size(), g.threads, [&](std::size_t i) {
            const auto [h, r, j] = pts[i];
            return detail::outcome("h=" + std::to_string(h) + ",r=" + std::to_string(r) + ",j=" + std::to_string(j),
                                   check_convexity_bound(h, r, j));
        });
    });
}

inline LemmaReport verify_s_upper(const VerifyGrid& g) {
    return detail::timed("s_upper", [&] {
        struct Task { u64 p, d; };
        std::vector<Task> tasks;
        for (u64 p : detail::odd_primes_up_to(g.upper_p_max))
            for (u64 d : divisors(p - 1))
                if (d >= 2) tasks.push_back({p, d});
        auto per_task = parallel_map(tasks.size(), g.threads, [&](std::size_t i) {
            const auto [p, d] = tasks[i];
            const Character chi(CharacterSpec::make(p, d));
            std::vector<InstanceOutcome> out;
            for (u64 h = 1; h <= g.upper_h_max && h < p; ++h) {
                for (u64 r = 1; r <= std::min(g.upper_r_max, 9 * h); ++r) {
                    out.push_back(detail::outcome("p=" + std::to_string(p) + ",d=" + std::to_string(d) +
                                                      ",h=" + std::to_string(h) + ",r=" + std::to_string(r),
                                                  check_S_upper(chi, h, r).result));
                }
            }
            return out;
        });
        std::vector<InstanceOutcome> flat;
        for (auto& v : per_task) flat.insert(flat.end(), v.begin(), v.end());
        return flat;
    });
}

/// One random instance of the disjointness check.
struct DisjointnessTrial {
    u64 p;
    std::int64_t H;
    double X;
    std::int64_t h;
};

/// Deterministic trial list: p a random prime <= p_max, X in [0.5, x_max),
/// H in [1, (p-1)/(2X)] and h in [1, H].
inline std::vector<DisjointnessTrial> disjointness_trials(const VerifyGrid& g) {
    std::mt19937_64 rng(g.seed);
    auto below = [&](u64 n) { return n == 0 ? u64{0} : rng() % n; };
    std::vector<DisjointnessTrial> trials;
    while (trials.size() < g.disjoint_trials) {
        u64 p = 5 + below(g.disjoint_p_max - 5);
        while (!is_prime(p)) --p;
        const double X = 0.5 + (g.disjoint_x_max - 0.5) * static_cast<double>(rng() >> 11) * 0x1.0p-53;
        const auto H_max = static_cast<std::int64_t>(std::ceil((static_cast<double>(p) - 1) / (2 * X))) - 1;
        if (H_max < 1) continue;
        const auto H = 1 + static_cast<std::int64_t>(below(static_cast<u64>(H_max)));
        if (!(2.0L * X * H < static_cast<long double>(p))) continue;
        const auto h = 1 + static_cast<std::int64_t>(below(static_cast<u64>(H)));
        trials.push_back({p, H, X, h});
    }
    return trials;
}

inline LemmaReport verify_disjointness(const VerifyGrid& g) {
    return detail::timed("disjoint", [&] {
        const auto trials = disjointness_trials(g);
        return parallel_map(trials.size(), g.threads, [&](std::size_t i) {
            const auto& t = trials[i];
            const auto rep = check_interval_disjointness(t.p, t.H, t.X, t.h);
            char label[128];
            std::snprintf(label, sizeof label, "p=%llu,H=%lld,X=%.6f,h=%lld", static_cast<unsigned long long>(t.p),
                          static_cast<long long>(t.H), t.X, static_cast<long long>(t.h));
            return InstanceOutcome{label, rep.verdict, rep.verdict == Verdict::pass ? 1.0 : -1.0, rep.detail};
        });
    });
}

/// A constructed instance (chi, u, H, h, r) for the moment lower bound.
struct PropositionInstance {
    u64 p;
    u64 d;
    unsigned n;
    u64 h;
    u64 r;
};

/// Quadratic instances u = q_1...q_(n-1), H = q_n - 1 meeting every
/// precondition, swept over h and r. Instances with h <= 2j are kept and
/// reported as vacuous.
inline std::vector<PropositionInstance> proposition_instances(const VerifyGrid& g) {
    std::vector<PropositionInstance> out;
    const auto primes = primes_in_range(g.prop_p_min, g.prop_p_max + 1);
    for (std::size_t idx = 0; idx < primes.size(); idx += g.prop_prime_stride) {
        const u64 p = primes[idx];
        const auto q = prime_nonresidues(p, 2, g.prop_n_max);
        for (unsigned n = 1; n <= g.prop_n_max; ++n) {
            const auto H = static_cast<std::int64_t>(q[n - 1]) - 1;
            const std::vector<u64> u(q.begin(), q.begin() + (n - 1));
            for (u64 h = 1; 2 * static_cast<std::int64_t>(h) < H; ++h) {
                const auto nf = NonresidueFactorization::make(u, h, p, H);
                try {
                    require_proposition_preconditions(p, nf);
                } catch (const precondition_error&) {
                    continue;
                }
                for (u64 r = 1; r <= g.prop_r_max && r <= 9 * h; ++r) out.push_back({p, 2, n, h, r});
            }
        }
    }
    return out;
}

inline std::string label_of(const PropositionInstance& in) {
    return "p=" + std::to_string(in.p) + ",d=" + std::to_string(in.d) + ",n=" + std::to_string(in.n) +
           ",h=" + std::to_string(in.h) + ",r=" + std::to_string(in.r);
}

inline NonresidueFactorization factorization_of(const PropositionInstance& in, const Character& chi) {
    return construct_instance(chi, in.n, in.h);
}

inline LemmaReport verify_proposition(const VerifyGrid& g) {
    return detail::timed("proposition", [&] {
        const auto inst = proposition_instances(g);
        return parallel_map(inst.size(), g.threads, [&](std::size_t i) {
            const auto& in = inst[i];
            const Character chi(CharacterSpec::make(in.p, in.d));
            const auto rep = sandwich_report(chi, factorization_of(in, chi), in.r);
            return InstanceOutcome{label_of(in), rep.verdict, std::min(rep.lower_slack, rep.upper_slack), rep.detail};
        });
    });
}

/// Shifted-sum lower bound on constructed instances: quadratic characters
/// with u = q_1 (both h <= q_1 and h > q_1), and higher-order characters with
/// u = q_1 q_2, H = q_3 - 1, h <= q_1 (so j = 2).
inline LemmaReport verify_sum_chi(const VerifyGrid& g) {
    return detail::timed("sum_chi", [&] {
        struct Task { u64 p, d; };
        std::vector<Task> tasks;
        for (u64 p : detail::odd_primes_up_to(g.sum_chi_p_max)) {
            if (p < 11) continue;
            for (u64 d : divisors(p - 1))
                if (d >= 2) tasks.push_back({p, d});
        }
        auto per_task = parallel_map(tasks.size(), g.threads, [&](std::size_t i) {
            const auto [p, d] = tasks[i];
            std::vector<InstanceOutcome> out;
            const unsigned n = d == 2 ? 2 : 3;
            const auto q = prime_nonresidues(p, d, n);
            const auto H = static_cast<std::int64_t>(q.back()) - 1;
            const std::vector<u64> u(q.begin(), q.end() - 1);
            std::optional<Character> chi;
            for (u64 h = 1; 2 * static_cast<std::int64_t>(h) <= H && h < p; ++h) {
                if (d != 2 && h > q[0]) break;
                const auto nf = NonresidueFactorization::make(u, h, p, H);
                const auto u1 = static_cast<std::int64_t>(nf.u1);
                const auto a_max = H / (2 * static_cast<std::int64_t>(h));
                if (u1 > a_max) continue;
                if (!chi) chi.emplace(CharacterSpec::make(p, d));
                InstanceOutcome agg{"p=" + std::to_string(p) + ",d=" + std::to_string(d) + ",n=" +
                                        std::to_string(n) + ",h=" + std::to_string(h),
                                    Verdict::pass, 1.0, {}};
                for (std::int64_t a = u1; a <= a_max && agg.verdict == Verdict::pass; a += u1) {
                    for (std::int64_t b = 0; b < a && agg.verdict == Verdict::pass; ++b) {
                        if (std::gcd(a, b) != 1) continue;
                        for (auto kind : {IntervalKind::I_star, IntervalKind::J_star}) {
                            const auto iv = make_farey_interval(kind, a, b, p, H, static_cast<std::int64_t>(h));
                            const auto res = check_shifted_sum_lower(*chi, nf, iv).result;
                            if (res.verdict != Verdict::pass) {
                                agg.verdict = res.verdict;
                                agg.slack = res.verdict == Verdict::vacuous ? agg.slack : res.slack;
                                agg.detail = std::string(to_string(kind)) + "(" + std::to_string(a) + "," +
                                             std::to_string(b) + ") " + res.detail;
                                break;
                            }
                            agg.slack = std::min(agg.slack, res.slack);
                        }
                    }
                }
                out.push_back(std::move(agg));
            }
            return out;
        });
        std::vector<InstanceOutcome> flat;
        for (auto& v : per_task) flat.insert(flat.end(), v.begin(), v.end());
        return flat;
    });
}

/// |(2B/(Ae))^(B log p) sqrt(p) - 1| < 1e-9 over n <= identity_n_max and
/// p = 10^k, k = 1..35 (plus a few non-decimal moduli).
inline LemmaReport verify_identity(const VerifyGrid& g) {
    return detail::timed("identity", [&] {
        std::vector<double> ps;
        for (int k = 1; k <= 35; ++k) ps.push_back(std::pow(10.0, k));
        for (double p : {3.0, 101.0, 65537.0, 2147483647.0}) ps.push_back(p);
        std::vector<InstanceOutcome> out;
        for (unsigned n = 1; n <= g.identity_n_max; ++n) {
            for (double p : ps) {
                const auto bp = burgess_params(BoundInput<double>(static_cast<int>(n), p));
                char label[64];
                std::snprintf(label, sizeof label, "n=%u,p=%.6g", n, p);
                const bool ok = bp.identity_residual < 1e-9;
                out.push_back({label, ok ? Verdict::pass : Verdict::fail, 1.0 - bp.identity_residual / 1e-9,
                               ok ? "" : "residual " + std::to_string(bp.identity_residual)});
            }
        }
        return out;
    });
}

/// Kernel membership by one exponentiation against the discrete-log table,
/// and the kernel size (p-1)/d, for all primes p <= kernel_p_max and d | p-1.
inline LemmaReport verify_kernel(const VerifyGrid& g) {
    return detail::timed("kernel", [&] {
        const auto primes = detail::odd_primes_up_to(g.kernel_p_max);
        auto per_p = parallel_map(primes.size(), g.threads, [&](std::size_t i) {
            const u64 p = primes[i];
            std::vector<InstanceOutcome> out;
            for (u64 d : divisors(p - 1)) {
                if (d < 2) continue;
                const Character chi(CharacterSpec::make(p, d));
                u64 kernel = 0, mismatches = 0;
                for (u64 a = 1; a < p; ++a) {
                    const bool k = is_kernel(p, d, a);
                    kernel += k;
                    mismatches += k != chi(static_cast<std::int64_t>(a)).is_one();
                }
                const bool ok = mismatches == 0 && kernel == (p - 1) / d;
                out.push_back({"p=" + std::to_string(p) + ",d=" + std::to_string(d), ok ? Verdict::pass : Verdict::fail,
                               ok ? 1.0 : -1.0,
                               ok ? "" : std::to_string(mismatches) + " mismatches, kernel size " + std::to_string(kernel)});
            }
            return out;
        });
        std::vector<InstanceOutcome> flat;
        for (auto& v : per_p) flat.insert(flat.end(), v.begin(), v.end());
        return flat;
    });
}

/// Suite names accepted by run_suite.
inline const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{"stirling", "totient", "convexity", "s_upper", "disjoint",
                                                "sum_chi", "proposition", "identity", "kernel"};
    return names;
}

inline LemmaReport run_suite(const std::string& name, const VerifyGrid& g) {
    if (name == "stirling") return verify_stirling(g);
    if (name == "totient") return verify_totient(g);
    if (name == "convexity") return verify_convexity(g);
    if (name == "s_upper") return verify_s_upper(g);
    if (name == "disjoint") return verify_disjointness(g);
    if (name == "sum_chi") return verify_sum_chi(g);
    if (name == "proposition") return verify_proposition(g);
    if (name == "identity") return verify_identity(g);
    if (name == "kernel") return verify_kernel(g);
    throw precondition_error("unknown lemma suite: " + name);
}

}  // namespace nonres
