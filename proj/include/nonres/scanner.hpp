#pragma once

/**
 * @file scanner.hpp
 * @brief Empirical check of q_n <= C p^(1/4) (log p)^((n+1)/2) over a range of
 * primes, with deterministic sharding and checkpoint/resume.
 *
 * The prime range is cut into fixed-width shards. Shards are evaluated in
 * batches (in parallel when requested) and merged strictly in shard order,
 * so record streams, output files and summaries are identical for every
 * worker count. After each merged shard the output byte offsets and the
 * running aggregate are written to the checkpoint; a resumed run truncates
 * the outputs to those offsets and continues with the next shard.
 */

#include "json.hpp"

#include "nonres/arith.hpp"
#include "nonres/character.hpp"
#include "nonres/constants.hpp"
#include "nonres/errors.hpp"
#include "nonres/interval.hpp"
#include "nonres/parallel.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

namespace nonres {

// =============================================================================
// Task definition
// =============================================================================

struct OrderPolicy {
    enum class Kind { quadratic_only, all_divisors_up_to, fixed_set };

    Kind kind = Kind::quadratic_only;
    u64 max_order = 2;           ///< for all_divisors_up_to
    std::vector<u64> orders;     ///< for fixed_set, ascending

    static OrderPolicy quadratic() { return {}; }
    static OrderPolicy divisors_up_to(u64 D) { return {Kind::all_divisors_up_to, D, {}}; }
    static OrderPolicy fixed(std::vector<u64> ds) {
        std::sort(ds.begin(), ds.end());
        ds.erase(std::unique(ds.begin(), ds.end()), ds.end());
        return {Kind::fixed_set, 0, std::move(ds)};
    }

    /// Orders d >= 2 with d | p-1 selected for p, ascending.
    std::vector<u64> orders_for(u64 p) const {
        if (kind == Kind::quadratic_only) return {2};
        std::vector<u64> out;
        if (kind == Kind::fixed_set) {
            for (u64 d : orders)
                if (d >= 2 && (p - 1) % d == 0) out.push_back(d);
            return out;
        }
        for (u64 d : divisors(p - 1))
            if (d >= 2 && d <= max_order) out.push_back(d);
        return out;
    }

    std::string describe() const {
        switch (kind) {
            case Kind::quadratic_only: return "quadratic";
            case Kind::all_divisors_up_to: return "divisors<=" + std::to_string(max_order);
            case Kind::fixed_set: {
                std::string s = "fixed:";
                for (std::size_t i = 0; i < orders.size(); ++i) s += (i ? "," : "") + std::to_string(orders[i]);
                return s;
            }
        }
        return "?";
    }
};

/// The constant C = g(n0, p0) a scan is checked against.
struct ReferenceConstant {
    int n0 = 1;
    double p0 = 1e7;
    double C = 0;
};

struct ScanTask {
    u64 p_lo = 3;
    u64 p_hi = 3;  ///< inclusive
    OrderPolicy orders;
    unsigned n_max = 1;
    std::optional<ReferenceConstant> reference;
    u64 nonresidue_cap = kDefaultNonresidueCap;
    u64 shard_width = 1u << 13;

    void validate() const {
        require(p_lo >= 3, "ScanTask: p_lo must be >= 3");
        require(n_max >= 1, "ScanTask: n_max must be >= 1");
        require(shard_width >= 1, "ScanTask: shard width must be positive");
        require(orders.kind != OrderPolicy::Kind::fixed_set || !orders.orders.empty(),
                "ScanTask: fixed order set is empty");
        if (reference) {
            require(reference->C > 0, "ScanTask: reference constant must be positive");
            require(static_cast<double>(p_lo) >= reference->p0, "ScanTask: p_lo must be >= p0 when checking the bound");
            require(static_cast<int>(n_max) <= reference->n0, "ScanTask: n_max must be <= n0");
            const auto v = corollary_validity(reference->n0, reference->p0);
            require(v.ok, "ScanTask: (n0, p0) does not satisfy the corollary hypotheses");
        }
    }

    std::size_t shard_count() const {
        if (p_hi < p_lo) return 0;
        return static_cast<std::size_t>((p_hi - p_lo) / shard_width + 1);
    }

    /// Stable textual form; hashed to match checkpoints to tasks.
    std::string canonical() const {
        char ref[128] = "none";
        if (reference) {
            std::snprintf(ref, sizeof ref, "%d,%.17g,%.17g", reference->n0, reference->p0, reference->C);
        }
        return "p_lo=" + std::to_string(p_lo) + ";p_hi=" + std::to_string(p_hi) + ";orders=" + orders.describe() +
               ";n_max=" + std::to_string(n_max) + ";ref=" + ref + ";cap=" + std::to_string(nonresidue_cap) +
               ";shard=" + std::to_string(shard_width);
    }

    std::uint64_t hash() const {
        std::uint64_t h = 0xcbf29ce484222325ull;  // FNV-1a
        for (unsigned char c : canonical()) {
            h ^= c;
            h *= 0x100000001b3ull;
        }
        return h;
    }
};

// =============================================================================
// Records and aggregation
// =============================================================================

struct ScanRecord {
    u64 p = 0;
    u64 d = 0;
    std::vector<u64> q;
    std::vector<double> ratio;  ///< q_n / (p^(1/4) (log p)^((n+1)/2))
    std::vector<bool> bound_ok;
    bool cap_exhausted = false;

    bool all_ok() const {
        for (bool b : bound_ok)
            if (!b) return false;
        return true;
    }
};

/// Extremal values for one n: the largest q_n and the largest ratio, each
/// with its witness (p, d). Ties go to the smaller (p, d).
struct Extremal {
    u64 max_q = 0;
    u64 max_q_p = 0, max_q_d = 0;
    double max_ratio = 0;
    u64 max_ratio_p = 0, max_ratio_d = 0;
    bool seen = false;

    friend bool operator==(const Extremal&, const Extremal&) = default;
};

struct Aggregate {
    std::size_t records = 0;
    std::size_t violations = 0;
    std::size_t cap_failures = 0;
    std::vector<Extremal> per_n;

    void add(const ScanRecord& rec) {
        ++records;
        if (rec.cap_exhausted) ++cap_failures;
        if (!rec.all_ok()) ++violations;
        if (per_n.size() < rec.q.size()) per_n.resize(rec.q.size());
        for (std::size_t i = 0; i < rec.q.size(); ++i) {
            Extremal one{rec.q[i], rec.p, rec.d, rec.ratio[i], rec.p, rec.d, true};
            per_n[i] = combine(per_n[i], one);
        }
    }

    static Aggregate merge(const Aggregate& a, const Aggregate& b) {
        Aggregate out;
        out.records = a.records + b.records;
        out.violations = a.violations + b.violations;
        out.cap_failures = a.cap_failures + b.cap_failures;
        out.per_n.resize(std::max(a.per_n.size(), b.per_n.size()));
        for (std::size_t i = 0; i < out.per_n.size(); ++i) {
            const Extremal ea = i < a.per_n.size() ? a.per_n[i] : Extremal{};
            const Extremal eb = i < b.per_n.size() ? b.per_n[i] : Extremal{};
            out.per_n[i] = combine(ea, eb);
        }
        return out;
    }

    friend bool operator==(const Aggregate&, const Aggregate&) = default;

private:
    static Extremal combine(const Extremal& a, const Extremal& b) {
        if (!a.seen) return b;
        if (!b.seen) return a;
        Extremal out = a;
        if (std::tie(b.max_q, a.max_q_p, a.max_q_d) > std::tie(a.max_q, b.max_q_p, b.max_q_d)) {
            out.max_q = b.max_q;
            out.max_q_p = b.max_q_p;
            out.max_q_d = b.max_q_d;
        }
        if (b.max_ratio > a.max_ratio ||
            (b.max_ratio == a.max_ratio && std::tie(b.max_ratio_p, b.max_ratio_d) < std::tie(a.max_ratio_p, a.max_ratio_d))) {
            out.max_ratio = b.max_ratio;
            out.max_ratio_p = b.max_ratio_p;
            out.max_ratio_d = b.max_ratio_d;
        }
        return out;
    }
};

inline Aggregate aggregate(const std::vector<ScanRecord>& records) {
    Aggregate a;
    for (const auto& r : records) a.add(r);
    return a;
}

// =============================================================================
// Per-prime evaluation
// =============================================================================

/// q_1..q_n_max for (p, d), the normalized ratios, and the bound test
/// q_n <= C p^(1/4) (log p)^((n+1)/2) against an upward-rounded right side.
inline ScanRecord scan_one(u64 p, u64 d, unsigned n_max, const std::optional<ReferenceConstant>& ref, u64 cap) {
    ScanRecord rec;
    rec.p = p;
    rec.d = d;
    try {
        rec.q = prime_nonresidues(p, d, n_max, cap);
    } catch (const search_cap_exceeded&) {
        rec.cap_exhausted = true;
        return rec;
    }
    const double L = std::log(static_cast<double>(p));
    const double p_quarter = std::pow(static_cast<double>(p), 0.25);
    const Interval Li = log(Interval::exact(p));
    const Interval scale = sqrt(sqrt(Interval::exact(p)));
    for (unsigned n = 1; n <= rec.q.size(); ++n) {
        rec.ratio.push_back(static_cast<double>(rec.q[n - 1]) / (p_quarter * std::pow(L, (n + 1) / 2.0)));
        if (ref) {
            const Interval bound =
                Interval::exact(ref->C) * scale * pow(Li, Interval::ratio(static_cast<std::int64_t>(n) + 1, 2));
            rec.bound_ok.push_back(!certainly_lt(bound, Interval::exact(rec.q[n - 1])));
        } else {
            rec.bound_ok.push_back(true);
        }
    }
    return rec;
}

/// All records for primes in shard `index` of the task, ordered by (p, d).
inline std::vector<ScanRecord> scan_shard(const ScanTask& task, std::size_t index) {
    const u64 lo = task.p_lo + static_cast<u64>(index) * task.shard_width;
    const u64 hi = std::min(task.p_hi + 1, lo + task.shard_width);
    std::vector<ScanRecord> out;
    for (u64 p : primes_in_range(lo, hi)) {
        if (p < 3) continue;
        for (u64 d : task.orders.orders_for(p)) out.push_back(scan_one(p, d, task.n_max, task.reference, task.nonresidue_cap));
    }
    return out;
}

// =============================================================================
// Output formats
// =============================================================================

inline std::string format_ratio(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

inline std::string csv_header(unsigned n_max) {
    std::string s = "p,d";
    for (unsigned n = 1; n <= n_max; ++n) s += ",q_" + std::to_string(n);
    for (unsigned n = 1; n <= n_max; ++n) s += ",ratio_" + std::to_string(n);
    return s + ",bound_ok\n";
}

/// One CSV row; missing values (cap exhaustion) are left empty.
inline std::string to_csv_row(const ScanRecord& r, unsigned n_max) {
    std::string s = std::to_string(r.p) + "," + std::to_string(r.d);
    for (unsigned n = 0; n < n_max; ++n) s += "," + (n < r.q.size() ? std::to_string(r.q[n]) : std::string());
    for (unsigned n = 0; n < n_max; ++n) s += "," + (n < r.ratio.size() ? format_ratio(r.ratio[n]) : std::string());
    s += r.cap_exhausted ? ",cap" : (r.all_ok() ? ",true" : ",false");
    return s + "\n";
}

inline nlohmann::ordered_json to_json(const ScanRecord& r) {
    nlohmann::ordered_json j;
    j["p"] = r.p;
    j["d"] = r.d;
    j["q"] = r.q;
    auto ratios = nlohmann::ordered_json::array();
    for (double v : r.ratio) ratios.push_back(std::stod(format_ratio(v)));
    j["ratio"] = ratios;
    j["bound_ok"] = r.bound_ok;
    if (r.cap_exhausted) j["cap_exhausted"] = true;
    return j;
}

inline nlohmann::ordered_json to_json(const Aggregate& a) {
    nlohmann::ordered_json j;
    j["records"] = a.records;
    j["violations"] = a.violations;
    j["cap_failures"] = a.cap_failures;
    auto per = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < a.per_n.size(); ++i) {
        const auto& e = a.per_n[i];
        per.push_back({{"n", i + 1},
                       {"max_q", e.max_q},
                       {"max_q_witness", {{"p", e.max_q_p}, {"d", e.max_q_d}}},
                       {"max_ratio", e.max_ratio},
                       {"max_ratio_witness", {{"p", e.max_ratio_p}, {"d", e.max_ratio_d}}}});
    }
    j["per_n"] = per;
    return j;
}

inline Aggregate aggregate_from_json(const nlohmann::ordered_json& j) {
    Aggregate a;
    a.records = j.at("records").get<std::size_t>();
    a.violations = j.at("violations").get<std::size_t>();
    a.cap_failures = j.at("cap_failures").get<std::size_t>();
    for (const auto& e : j.at("per_n")) {
        Extremal x;
        x.seen = true;
        x.max_q = e.at("max_q").get<u64>();
        x.max_q_p = e.at("max_q_witness").at("p").get<u64>();
        x.max_q_d = e.at("max_q_witness").at("d").get<u64>();
        x.max_ratio = e.at("max_ratio").get<double>();
        x.max_ratio_p = e.at("max_ratio_witness").at("p").get<u64>();
        x.max_ratio_d = e.at("max_ratio_witness").at("d").get<u64>();
        a.per_n.push_back(x);
    }
    return a;
}

// =============================================================================
// Driver
// =============================================================================

/// First bound violation, enough to reproduce it.
struct Violation {
    u64 p, d;
    unsigned n;
    u64 q_n;
    double ratio;
};

struct ScanOptions {
    unsigned threads = 1;
    std::optional<std::filesystem::path> checkpoint;
    std::optional<std::filesystem::path> csv_path;
    std::optional<std::filesystem::path> jsonl_path;
    std::function<void(const ScanRecord&)> on_record;
    /// Stop after merging this many shards in this invocation.
    std::optional<std::size_t> max_shards;
    bool halt_on_violation = true;
};

struct ScanSummary {
    std::string task;
    std::size_t shards_total = 0;
    std::size_t shards_done = 0;
    bool complete = false;
    Aggregate totals;
    std::optional<Violation> first_violation;
};

inline nlohmann::ordered_json to_json(const ScanSummary& s) {
    nlohmann::ordered_json j;
    j["task"] = s.task;
    j["shards_total"] = s.shards_total;
    j["shards_done"] = s.shards_done;
    j["complete"] = s.complete;
    j["summary"] = to_json(s.totals);
    if (s.first_violation) {
        const auto& v = *s.first_violation;
        j["first_violation"] = {{"p", v.p}, {"d", v.d}, {"n", v.n}, {"q_n", v.q_n}, {"ratio", v.ratio}};
    } else {
        j["first_violation"] = nullptr;
    }
    return j;
}

/// Checkpoint contents (JSON, versioned).
struct CheckpointState {
    static constexpr int kVersion = 1;
    std::uint64_t task_hash = 0;
    std::size_t next_shard = 0;
    std::uintmax_t csv_bytes = 0;
    std::uintmax_t jsonl_bytes = 0;
    Aggregate totals;
};

inline void save_checkpoint(const std::filesystem::path& path, const ScanTask& task, const CheckpointState& st) {
    nlohmann::ordered_json j;
    j["version"] = CheckpointState::kVersion;
    j["task_hash"] = st.task_hash;
    j["task"] = task.canonical();
    j["next_shard"] = st.next_shard;
    j["csv_bytes"] = st.csv_bytes;
    j["jsonl_bytes"] = st.jsonl_bytes;
    j["aggregate"] = to_json(st.totals);
    const auto tmp = std::filesystem::path(path.string() + ".tmp");
    {
        std::ofstream out(tmp, std::ios::trunc);
        out << j.dump(2) << "\n";
    }
    std::filesystem::rename(tmp, path);
}

inline CheckpointState load_checkpoint(const std::filesystem::path& path, const ScanTask& task) {
    std::ifstream in(path);
    if (!in) throw precondition_error("cannot read checkpoint " + path.string());
    const auto j = nlohmann::ordered_json::parse(in);
    if (j.at("version").get<int>() != CheckpointState::kVersion) {
        throw precondition_error("checkpoint version mismatch in " + path.string());
    }
    CheckpointState st;
    st.task_hash = j.at("task_hash").get<std::uint64_t>();
    if (st.task_hash != task.hash()) {
        throw precondition_error("checkpoint " + path.string() + " belongs to a different task; refusing to resume");
    }
    st.next_shard = j.at("next_shard").get<std::size_t>();
    st.csv_bytes = j.at("csv_bytes").get<std::uintmax_t>();
    st.jsonl_bytes = j.at("jsonl_bytes").get<std::uintmax_t>();
    st.totals = aggregate_from_json(j.at("aggregate"));
    return st;
}

/// Runs (or resumes, when the checkpoint file exists) a scan.
inline ScanSummary run_scan(const ScanTask& task, const ScanOptions& opts = {}) {
    task.validate();
    ScanSummary summary;
    summary.task = task.canonical();
    summary.shards_total = task.shard_count();

    CheckpointState st;
    st.task_hash = task.hash();
    const bool resuming = opts.checkpoint && std::filesystem::exists(*opts.checkpoint);
    if (resuming) st = load_checkpoint(*opts.checkpoint, task);

    auto open_output = [&](const std::optional<std::filesystem::path>& path, std::uintmax_t keep,
                           const std::string& header) -> std::optional<std::ofstream> {
        if (!path) return std::nullopt;
        if (resuming) {
            if (!std::filesystem::exists(*path) || std::filesystem::file_size(*path) < keep) {
                throw precondition_error("output " + path->string() + " is shorter than the checkpoint records");
            }
            std::filesystem::resize_file(*path, keep);
            return std::ofstream(*path, std::ios::binary | std::ios::app);
        }
        std::ofstream out(*path, std::ios::binary | std::ios::trunc);
        out << header;
        return out;
    };
    auto csv = open_output(opts.csv_path, st.csv_bytes, csv_header(task.n_max));
    auto jsonl = open_output(opts.jsonl_path, st.jsonl_bytes, "");
    if (!resuming) {
        if (csv) st.csv_bytes = static_cast<std::uintmax_t>(csv->tellp());
        if (jsonl) st.jsonl_bytes = 0;
    }

    const std::size_t total = summary.shards_total;
    const std::size_t stop = opts.max_shards ? std::min(total, st.next_shard + *opts.max_shards) : total;
    const std::size_t batch = std::max(1u, opts.threads) * 2;
    bool halted = false;

    while (st.next_shard < stop && !halted) {
        const std::size_t first = st.next_shard;
        const std::size_t count = std::min(batch, stop - first);
        auto shards = parallel_map(count, opts.threads, [&](std::size_t i) { return scan_shard(task, first + i); });
        for (auto& records : shards) {
            for (const auto& rec : records) {
                st.totals.add(rec);
                if (csv) *csv << to_csv_row(rec, task.n_max);
                if (jsonl) *jsonl << to_json(rec).dump() << "\n";
                if (opts.on_record) opts.on_record(rec);
                if (!summary.first_violation && !rec.cap_exhausted && !rec.all_ok()) {
                    for (unsigned n = 0; n < rec.bound_ok.size(); ++n) {
                        if (!rec.bound_ok[n]) {
                            summary.first_violation = Violation{rec.p, rec.d, n + 1, rec.q[n], rec.ratio[n]};
                            break;
                        }
                    }
                }
            }
            ++st.next_shard;
            if (csv) {
                csv->flush();
                st.csv_bytes = static_cast<std::uintmax_t>(csv->tellp());
            }
            if (jsonl) {
                jsonl->flush();
                st.jsonl_bytes = static_cast<std::uintmax_t>(jsonl->tellp());
            }
            if (opts.checkpoint) save_checkpoint(*opts.checkpoint, task, st);
            if (summary.first_violation && opts.halt_on_violation) {
                halted = true;
                break;
            }
        }
    }

    summary.shards_done = st.next_shard;
    summary.complete = st.next_shard == total;
    summary.totals = st.totals;
    return summary;
}

}  // namespace nonres
