#pragma once

/**
 * @file report.hpp
 * @brief Text, CSV and JSON renderings of the constants table and of lemma
 * reports.
 */

#include "json.hpp"

#include "nonres/constants.hpp"
#include "nonres/verify.hpp"

#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

namespace nonres {

enum class Rounding { up, nearest };

/// v rounded to `digits` decimals in the given direction, printed with
/// exactly that many decimals.
inline std::string format_fixed(double v, int digits, Rounding mode) {
    const double scale = std::pow(10.0, digits);
    double scaled = v * scale;
    // Guard against representation noise in values that are already exact.
    const double nearest = std::round(scaled);
    if (std::abs(scaled - nearest) < 1e-9) scaled = nearest;
    const double q = mode == Rounding::up ? std::ceil(scaled) : std::round(scaled);
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, q / scale);
    return buf;
}

/// "1e7" for powers of ten, shortest %g form otherwise.
inline std::string format_p0(double p0) {
    const double k = std::round(std::log10(p0));
    if (k >= 1 && std::abs(p0 - std::pow(10.0, k)) <= 1e-12 * p0) {
        return "1e" + std::to_string(static_cast<int>(k));
    }
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.10g", p0);
    return buf;
}

/// Rows n0, columns p0, "-" for cells where the bound is not available.
inline std::string table_text(const ConstantsTable<double>& t, int digits, Rounding mode) {
    const int width = std::max(8, digits + 5);
    std::string out;
    char buf[64];
    std::snprintf(buf, sizeof buf, "%-6s", "n0\\p0");
    out += buf;
    for (double p0 : t.p0s) {
        std::snprintf(buf, sizeof buf, "%*s", width, format_p0(p0).c_str());
        out += buf;
    }
    out += "\n";
    for (const auto& row : t.rows) {
        std::snprintf(buf, sizeof buf, "%-6d", row.front().n0);
        out += buf;
        for (const auto& c : row) {
            const std::string v = c.g ? format_fixed(*c.g, digits, mode) : "-";
            std::snprintf(buf, sizeof buf, "%*s", width, v.c_str());
            out += buf;
        }
        out += "\n";
    }
    return out;
}

/// Header "n0,<p0>,...", one row per n0, "-" for unavailable cells.
inline std::string table_csv(const ConstantsTable<double>& t, int digits, Rounding mode) {
    std::string out = "n0";
    for (double p0 : t.p0s) out += "," + format_p0(p0);
    out += "\n";
    for (const auto& row : t.rows) {
        out += std::to_string(row.front().n0);
        for (const auto& c : row) out += "," + (c.g ? format_fixed(*c.g, digits, mode) : std::string("-"));
        out += "\n";
    }
    return out;
}

inline nlohmann::ordered_json table_json(const ConstantsTable<double>& t) {
    auto arr = nlohmann::ordered_json::array();
    for (const auto& row : t.rows) {
        for (const auto& c : row) {
            nlohmann::ordered_json j;
            j["n0"] = c.n0;
            j["p0"] = c.p0;
            j["g"] = c.g ? nlohmann::ordered_json(*c.g) : nlohmann::ordered_json(nullptr);
            j["xstar"] = c.xstar;
            j["failed_conditions"] = c.failed_conditions;
            arr.push_back(std::move(j));
        }
    }
    return arr;
}

inline nlohmann::ordered_json to_json(const LemmaReport& r) {
    nlohmann::ordered_json j;
    j["lemma"] = r.lemma;
    j["instances_run"] = r.instances_run;
    j["passes"] = r.passes;
    j["failures"] = r.failures;
    j["vacuous_skips"] = r.vacuous_skips;
    j["hypothesis_failures"] = r.hypothesis_failures;
    j["min_slack"] = std::isfinite(r.min_slack) ? nlohmann::ordered_json(r.min_slack) : nlohmann::ordered_json(nullptr);
    j["worst_instance"] = r.worst_instance.empty() ? nlohmann::ordered_json(nullptr) : nlohmann::ordered_json(r.worst_instance);
    j["failure_examples"] = r.failure_examples;
    j["ok"] = r.ok();
    return j;
}

}  // namespace nonres
