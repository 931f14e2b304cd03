// nonres: constants, nonresidues, lemma checks and range scans from the
// command line. Exit codes: 0 ok, 1 verification failure, 2 usage error,
// 3 resource cap exhausted.

#include "CLI11.hpp"
#include "json.hpp"

#include "nonres/character.hpp"
#include "nonres/constants.hpp"
#include "nonres/errors.hpp"
#include "nonres/report.hpp"
#include "nonres/scanner.hpp"
#include "nonres/verify.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

using namespace nonres;
using json = nlohmann::ordered_json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitCap = 3;

struct usage_error : precondition_error {
    using precondition_error::precondition_error;
};

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) {
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

double parse_real(const std::string& s) {
    std::size_t used = 0;
    double v = 0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        throw usage_error("not a number: '" + s + "'");
    }
    if (used != s.size() || !std::isfinite(v)) throw usage_error("not a number: '" + s + "'");
    return v;
}

/// Nonnegative integer in plain or scientific form ("10000000", "1e7"),
/// optionally a sum of such terms ("1e7+1e5").
u64 parse_count(const std::string& s) {
    static const std::regex term(R"(^(\d+)(?:[eE](\d+))?$)");
    unsigned __int128 total = 0;
    const auto parts = split(s, '+');
    if (parts.empty()) throw usage_error("not an integer: '" + s + "'");
    for (const auto& part : parts) {
        std::smatch m;
        if (!std::regex_match(part, m, term)) throw usage_error("not an integer: '" + s + "'");
        unsigned __int128 v = 0;
        for (char c : m[1].str()) {
            v = v * 10 + static_cast<unsigned>(c - '0');
            if (v > std::numeric_limits<u64>::max()) throw usage_error("integer out of range: '" + s + "'");
        }
        const int e = m[2].matched ? std::stoi(m[2].str()) : 0;
        for (int i = 0; i < e; ++i) {
            v *= 10;
            if (v > std::numeric_limits<u64>::max()) throw usage_error("integer out of range: '" + s + "'");
        }
        total += v;
        if (total > std::numeric_limits<u64>::max()) throw usage_error("integer out of range: '" + s + "'");
    }
    return static_cast<u64>(total);
}

/// "3", "1..8" or "1,2,5".
std::vector<int> parse_int_list(const std::string& s) {
    std::vector<int> out;
    for (const auto& part : split(s, ',')) {
        const auto dots = part.find("..");
        if (dots != std::string::npos) {
            const u64 a = parse_count(part.substr(0, dots));
            const u64 b = parse_count(part.substr(dots + 2));
            if (a > b || b > 1000) throw usage_error("bad range: '" + part + "'");
            for (u64 v = a; v <= b; ++v) out.push_back(static_cast<int>(v));
        } else {
            const u64 v = parse_count(part);
            if (v > 1000) throw usage_error("value too large: '" + part + "'");
            out.push_back(static_cast<int>(v));
        }
    }
    if (out.empty()) throw usage_error("empty list: '" + s + "'");
    return out;
}

std::vector<double> parse_real_list(const std::string& s) {
    std::vector<double> out;
    for (const auto& part : split(s, ',')) out.push_back(parse_real(part));
    if (out.empty()) throw usage_error("empty list: '" + s + "'");
    return out;
}

/// Writes to the output file when given, stdout otherwise.
void emit(const std::string& text, const std::string& path) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw usage_error("cannot write " + path);
    out << text;
}

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

std::string join(const std::vector<std::string>& v, const std::string& sep) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) out += (i ? sep : "") + v[i];
    return out;
}

// -----------------------------------------------------------------------------
// table
// -----------------------------------------------------------------------------

struct TableArgs {
    std::string n0 = "1..8";
    std::string p0 = "1e7,1e8,1e9,1e10,1e15,1e20,1e25,1e30,1e35";
    std::string format = "text";
    std::string rounding = "up";
    int digits = 3;
    std::string output;
};

int cmd_table(const TableArgs& a) {
    const auto n0s = parse_int_list(a.n0);
    const auto p0s = parse_real_list(a.p0);
    for (int n : n0s)
        if (n < 1) throw usage_error("n0 must be >= 1");
    for (double p : p0s)
        if (p < 2) throw usage_error("p0 must be >= 2");
    const auto t = make_table<double>(n0s, p0s);
    const Rounding mode = a.rounding == "up" ? Rounding::up : Rounding::nearest;
    if (a.format == "json") {
        emit(table_json(t).dump(2) + "\n", a.output);
    } else if (a.format == "csv") {
        emit(table_csv(t, a.digits, mode), a.output);
    } else {
        emit(table_text(t, a.digits, mode), a.output);
    }
    return kExitOk;
}

// -----------------------------------------------------------------------------
// bound
// -----------------------------------------------------------------------------

struct BoundArgs {
    int n = 1;
    std::string p;
    std::optional<int> n0;
    std::optional<std::string> p0;
    std::string format = "text";
    std::string output;
};

int cmd_bound(const BoundArgs& a) {
    const double p = parse_real(a.p);
    const int n0 = a.n0.value_or(a.n);
    const double p0 = a.p0 ? parse_real(*a.p0) : p;
    if (a.n < 1 || n0 < 1) throw usage_error("n and n0 must be >= 1");
    if (p < 2 || p0 < 2) throw usage_error("p and p0 must be >= 2");

    const auto validity = corollary_validity(n0, p0);
    const auto constants = compute_g(BoundInput<double>(n0, p0));
    std::vector<std::string> warnings;
    if (a.n > n0) warnings.push_back("n exceeds n0");
    if (p < p0) warnings.push_back("p is below p0; the constant does not apply");

    const bool usable = validity.ok && constants.g && a.n <= n0;
    std::optional<double> bound;
    if (constants.g) bound = compute_bound(BoundInput<double>(a.n, p), *constants.g);

    if (a.format == "json") {
        json j;
        j["n"] = a.n;
        j["p"] = p;
        j["n0"] = n0;
        j["p0"] = p0;
        j["xstar"] = constants.xstar;
        j["C"] = constants.g ? json(*constants.g) : json(nullptr);
        j["bound"] = bound ? json(*bound) : json(nullptr);
        j["valid"] = usable;
        j["failed_conditions"] = validity.reasons;
        j["warnings"] = warnings;
        emit(j.dump(2) + "\n", a.output);
    } else {
        std::string out;
        out += "n = " + std::to_string(a.n) + ", p = " + num(p) + "\n";
        out += "n0 = " + std::to_string(n0) + ", p0 = " + num(p0) + "\n";
        out += "X* = " + num(constants.xstar) + "\n";
        out += "C = g(n0, p0) = " + (constants.g ? num(*constants.g) : std::string("undefined")) + "\n";
        out += "bound = " + (bound ? num(*bound) : std::string("undefined")) + "\n";
        out += std::string("valid = ") + (usable ? "yes" : "no") + "\n";
        if (!validity.reasons.empty()) out += "failed: " + join(validity.reasons, ", ") + "\n";
        emit(out, a.output);
    }
    for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";
    if (!usable) {
        std::cerr << "error: (n0, p0) = (" << n0 << ", " << num(p0) << ") does not give a valid constant";
        if (!validity.reasons.empty()) std::cerr << " [" << join(validity.reasons, ", ") << "]";
        std::cerr << "\n";
        return kExitUsage;
    }
    return kExitOk;
}

// -----------------------------------------------------------------------------
// nonresidues
// -----------------------------------------------------------------------------

struct NonresidueArgs {
    std::string p;
    u64 d = 2;
    std::size_t n = 1;
    std::string cap = std::to_string(kDefaultNonresidueCap);
    std::string format = "text";
    std::string output;
};

int cmd_nonresidues(const NonresidueArgs& a) {
    const u64 p = parse_count(a.p);
    const u64 cap = parse_count(a.cap);
    if (p < 3 || !is_prime(p)) throw usage_error("p must be an odd prime");
    if (a.d < 2 || (p - 1) % a.d != 0) throw usage_error("d must be >= 2 and divide p-1");
    const auto q = prime_nonresidues(p, a.d, a.n, cap);
    if (a.format == "json") {
        json j;
        j["p"] = p;
        j["d"] = a.d;
        j["n"] = a.n;
        j["q"] = q;
        emit(j.dump(2) + "\n", a.output);
    } else {
        std::vector<std::string> parts;
        for (u64 v : q) parts.push_back(std::to_string(v));
        emit(join(parts, " ") + "\n", a.output);
    }
    return kExitOk;
}

// -----------------------------------------------------------------------------
// verify
// -----------------------------------------------------------------------------

struct VerifyArgs {
    std::vector<std::string> lemmas;
    bool all = false;
    bool quick = false;
    bool small = false;
    std::optional<u64> r_max;
    std::optional<u64> x_max;
    std::optional<u64> p_max;
    std::optional<std::size_t> trials;
    std::uint64_t seed = VerifyGrid{}.seed;
    unsigned threads = 1;
    std::string format = "text";
    std::string report;
    std::string output;
};

int cmd_verify(const VerifyArgs& a) {
    std::vector<std::string> names = a.all ? suite_names() : a.lemmas;
    if (names.empty()) throw usage_error("select lemmas with --lemma NAME or --all");
    if (a.quick && a.small) throw usage_error("--quick and --small are exclusive");

    VerifyGrid g = a.quick ? VerifyGrid::quick() : VerifyGrid{};
    g.seed = a.seed;
    g.threads = a.threads;
    if (a.r_max) g.stirling_r_max = *a.r_max;
    if (a.x_max) g.totient_x_max = *a.x_max;
    if (a.p_max) {
        g.upper_p_max = *a.p_max;
        g.sum_chi_p_max = *a.p_max;
        g.kernel_p_max = *a.p_max;
        g.prop_p_max = *a.p_max;
        g.disjoint_p_max = *a.p_max;
    }
    if (a.trials) g.disjoint_trials = *a.trials;

    json doc;
    doc["grid"] = a.quick ? "quick" : "small";
    doc["seed"] = g.seed;
    auto arr = json::array();
    bool ok = true;
    std::string text;
    for (const auto& name : names) {
        const auto rep = run_suite(name, g);
        ok = ok && rep.ok();
        arr.push_back(to_json(rep));
        char line[512];
        std::snprintf(line, sizeof line, "%-12s %s  run=%zu pass=%zu fail=%zu vacuous=%zu hyp_fail=%zu min_slack=%s worst=%s\n",
                      name.c_str(), rep.ok() ? "PASS" : "FAIL", rep.instances_run, rep.passes, rep.failures,
                      rep.vacuous_skips, rep.hypothesis_failures,
                      std::isfinite(rep.min_slack) ? num(rep.min_slack).c_str() : "n/a",
                      rep.worst_instance.empty() ? "-" : rep.worst_instance.c_str());
        text += line;
        for (const auto& e : rep.failure_examples) text += "    " + e + "\n";
        std::cerr << name << ": " << num(rep.seconds) << " s\n";
    }
    doc["lemmas"] = arr;
    doc["ok"] = ok;
    if (!a.report.empty()) emit(doc.dump(2) + "\n", a.report);
    emit(a.format == "json" ? doc.dump(2) + "\n" : text, a.output);
    return ok ? kExitOk : kExitFailure;
}

// -----------------------------------------------------------------------------
// scan
// -----------------------------------------------------------------------------

struct ScanArgs {
    std::string p_lo;
    std::string p_hi;
    std::string orders = "quadratic";
    unsigned n_max = 1;
    std::optional<int> n0;
    std::optional<std::string> p0;
    std::optional<double> constant;
    bool no_bound = false;
    std::string cap = std::to_string(kDefaultNonresidueCap);
    std::string shard_width = "8192";
    unsigned threads = 1;
    std::string csv;
    std::string jsonl;
    std::string checkpoint;
    std::optional<std::size_t> max_shards;
    bool keep_going = false;
    std::string output;
};

OrderPolicy parse_orders(const std::string& s) {
    if (s == "quadratic") return OrderPolicy::quadratic();
    if (s.rfind("divisors:", 0) == 0) return OrderPolicy::divisors_up_to(parse_count(s.substr(9)));
    if (s.rfind("fixed:", 0) == 0) {
        std::vector<u64> ds;
        for (const auto& part : split(s.substr(6), ',')) ds.push_back(parse_count(part));
        if (ds.empty()) throw usage_error("empty order set");
        return OrderPolicy::fixed(ds);
    }
    throw usage_error("orders must be quadratic, divisors:D or fixed:d1,d2,...");
}

int cmd_scan(const ScanArgs& a) {
    ScanTask task;
    task.p_lo = parse_count(a.p_lo);
    task.p_hi = parse_count(a.p_hi);
    task.orders = parse_orders(a.orders);
    task.n_max = a.n_max;
    task.nonresidue_cap = parse_count(a.cap);
    task.shard_width = parse_count(a.shard_width);
    if (!a.no_bound) {
        ReferenceConstant ref;
        ref.n0 = a.n0.value_or(static_cast<int>(a.n_max));
        ref.p0 = a.p0 ? parse_real(*a.p0) : static_cast<double>(task.p_lo);
        if (a.constant) {
            ref.C = *a.constant;
        } else {
            const auto g = compute_g(BoundInput<double>(ref.n0, ref.p0)).g;
            if (!g) throw usage_error("g(n0, p0) is undefined for the chosen reference");
            ref.C = *g;
        }
        task.reference = ref;
    }

    ScanOptions opts;
    opts.threads = a.threads;
    if (!a.csv.empty()) opts.csv_path = a.csv;
    if (!a.jsonl.empty()) opts.jsonl_path = a.jsonl;
    if (!a.checkpoint.empty()) opts.checkpoint = a.checkpoint;
    opts.max_shards = a.max_shards;
    opts.halt_on_violation = !a.keep_going;

    const auto summary = run_scan(task, opts);
    json j = to_json(summary);
    if (task.reference) j["reference"] = {{"n0", task.reference->n0}, {"p0", task.reference->p0}, {"C", task.reference->C}};
    emit(j.dump(2) + "\n", a.output);

    if (summary.first_violation) {
        const auto& v = *summary.first_violation;
        std::cerr << "violation: p=" << v.p << " d=" << v.d << " n=" << v.n << " q_n=" << v.q_n << "\n"
                  << "reproduce: nonres nonresidues --p " << v.p << " --d " << v.d << " --n " << v.n << "\n";
        return kExitFailure;
    }
    if (summary.totals.cap_failures > 0) return kExitCap;
    return kExitOk;
}

void add_output_flags(CLI::App* sub, std::string& format, std::string& output, std::vector<std::string> formats) {
    sub->add_option("--format", format, "Output format")->check(CLI::IsMember(formats));
    sub->add_option("-o,--output", output, "Write output to this file instead of stdout");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Explicit bounds for the smallest prime nonresidues of Dirichlet characters"};
    app.require_subcommand(1);
    int verbosity = 0;
    app.add_flag("-v,--verbose", verbosity, "More diagnostics on stderr");

    unsigned default_threads = 1;
    if (const char* env = std::getenv("NONRES_THREADS")) {
        try {
            default_threads = static_cast<unsigned>(std::max(1ul, std::stoul(env)));
        } catch (const std::exception&) {
            std::cerr << "warning: ignoring NONRES_THREADS='" << env << "'\n";
        }
    }

    TableArgs ta;
    auto* table = app.add_subcommand("table", "Constants g(n0, p0) over a grid");
    table->add_option("--n0", ta.n0, "n0 values: 3, 1..8 or 1,2,5")->capture_default_str();
    table->add_option("--p0", ta.p0, "Comma-separated p0 values, e.g. 1e7,1e8")->capture_default_str();
    table->add_option("--rounding", ta.rounding, "Rounding of displayed values")->check(CLI::IsMember({"up", "nearest"}))->capture_default_str();
    table->add_option("--digits", ta.digits, "Decimals shown in text and CSV")->check(CLI::Range(0, 15))->capture_default_str();
    add_output_flags(table, ta.format, ta.output, {"text", "csv", "json"});

    BoundArgs ba;
    auto* bound = app.add_subcommand("bound", "C = g(n0, p0) and the bound on q_n at p");
    bound->add_option("--n", ba.n, "Index n of the nonresidue")->required();
    bound->add_option("--p", ba.p, "Prime p (real, scientific notation allowed)")->required();
    bound->add_option("--n0", ba.n0, "n0 of the constant (default n)");
    bound->add_option("--p0", ba.p0, "p0 of the constant (default p)");
    add_output_flags(bound, ba.format, ba.output, {"text", "json"});

    NonresidueArgs na;
    auto* nonres_cmd = app.add_subcommand("nonresidues", "Smallest primes outside the kernel of a character of order d");
    nonres_cmd->add_option("--p", na.p, "Odd prime modulus")->required();
    nonres_cmd->add_option("--d", na.d, "Character order, d | p-1")->capture_default_str();
    nonres_cmd->add_option("--n", na.n, "How many nonresidues")->capture_default_str();
    nonres_cmd->add_option("--cap", na.cap, "Search cap on q")->capture_default_str();
    add_output_flags(nonres_cmd, na.format, na.output, {"text", "json"});

    VerifyArgs va;
    va.threads = default_threads;
    auto* verify = app.add_subcommand("verify", "Brute-force checks of the lemma inequalities");
    verify->add_option("--lemma", va.lemmas, "Suite to run (repeatable)")->check(CLI::IsMember(suite_names()));
    verify->add_flag("--all", va.all, "Run every suite");
    verify->add_flag("--small", va.small, "Desk-scale grids (default)");
    verify->add_flag("--quick", va.quick, "Reduced grids");
    verify->add_option("--r-max", va.r_max, "Largest r for the stirling suite");
    verify->add_option("--x-max", va.x_max, "Largest x for the totient suite");
    verify->add_option("--p-max", va.p_max, "Largest prime for the prime-indexed suites");
    verify->add_option("--trials", va.trials, "Random trials for the disjoint suite");
    verify->add_option("--seed", va.seed, "Seed for randomized suites")->capture_default_str();
    verify->add_option("-j,--threads", va.threads, "Worker threads (default $NONRES_THREADS or 1)")->check(CLI::PositiveNumber);
    verify->add_option("--report", va.report, "Write the JSON report to this file");
    add_output_flags(verify, va.format, va.output, {"text", "json"});

    ScanArgs sa;
    sa.threads = default_threads;
    auto* scan = app.add_subcommand("scan", "Compute q_1..q_n over a prime range and check the bound");
    scan->add_option("--p-lo", sa.p_lo, "Smallest p (e.g. 1e7)")->required();
    scan->add_option("--p-hi", sa.p_hi, "Largest p, inclusive (e.g. 1e7+1e5)")->required();
    scan->add_option("--orders", sa.orders, "quadratic, divisors:D or fixed:d1,d2,...")->capture_default_str();
    scan->add_option("--n-max", sa.n_max, "Nonresidues per (p, d)")->check(CLI::PositiveNumber)->capture_default_str();
    scan->add_option("--n0", sa.n0, "n0 of the reference constant (default n-max)");
    scan->add_option("--p0", sa.p0, "p0 of the reference constant (default p-lo)");
    scan->add_option("--constant", sa.constant, "Use this C instead of g(n0, p0)");
    scan->add_flag("--no-bound", sa.no_bound, "Only record nonresidues; no bound check");
    scan->add_option("--cap", sa.cap, "Search cap on q")->capture_default_str();
    scan->add_option("--shard-width", sa.shard_width, "Integers per shard")->capture_default_str();
    scan->add_option("-j,--threads", sa.threads, "Worker threads (default $NONRES_THREADS or 1)")->check(CLI::PositiveNumber);
    scan->add_option("--csv", sa.csv, "Write records as CSV");
    scan->add_option("--jsonl", sa.jsonl, "Write records as JSON lines");
    scan->add_option("--checkpoint", sa.checkpoint, "Checkpoint file; resumes when it exists");
    scan->add_option("--max-shards", sa.max_shards, "Stop after this many shards");
    scan->add_flag("--keep-going", sa.keep_going, "Do not halt on the first violation");
    scan->add_option("-o,--output", sa.output, "Write the summary to this file instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (*table) return cmd_table(ta);
        if (*bound) return cmd_bound(ba);
        if (*nonres_cmd) return cmd_nonresidues(na);
        if (*verify) return cmd_verify(va);
        if (*scan) return cmd_scan(sa);
    } catch (const search_cap_exceeded& e) {
        std::cerr << "cap exhausted: " << e.what() << "\n";
        return kExitCap;
    } catch (const threshold_exceeded& e) {
        std::cerr << "resource limit: " << e.what() << "\n";
        return kExitCap;
    } catch (const precondition_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        if (verbosity > 0) std::cerr << "(unexpected exception type)\n";
        return kExitFailure;
    }
    return kExitUsage;
}
