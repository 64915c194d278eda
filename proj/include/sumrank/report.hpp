#pragma once

// Machine-readable results of the command-line front end.
//
// Every count is serialised as a decimal string. Keys are emitted in sorted order
// (nlohmann::json's default object map), so parsing a report and dumping it again
// with the same indent reproduces the bytes exactly.

#include <algorithm>
#include <chrono>
#include <ctime>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "compositions.hpp"
#include "count.hpp"
#include "params.hpp"

namespace sumrank {

inline constexpr const char* kToolName = "sumrank";
inline constexpr const char* kToolVersion = "0.1.0";

enum class FormulaVariant {
    sphere,
    ball,
    exact,
    thm1_literal,
    thm2_literal,
    thm2_profile,
    thm3_literal,
    thm3_aggregate,
    lemma8,
};

inline const char* to_string(FormulaVariant v) {
    switch (v) {
        case FormulaVariant::sphere: return "sphere";
        case FormulaVariant::ball: return "ball";
        case FormulaVariant::exact: return "exact";
        case FormulaVariant::thm1_literal: return "thm1-literal";
        case FormulaVariant::thm2_literal: return "thm2-literal";
        case FormulaVariant::thm2_profile: return "thm2-profile";
        case FormulaVariant::thm3_literal: return "thm3-literal";
        case FormulaVariant::thm3_aggregate: return "thm3-aggregate";
        case FormulaVariant::lemma8: return "lemma8";
    }
    return "?";
}

inline const std::vector<std::string>& formula_variant_names() {
    static const std::vector<std::string> names = {
        "sphere", "ball", "exact", "thm1-literal", "thm2-literal",
        "thm2-profile", "thm3-literal", "thm3-aggregate", "lemma8",
    };
    return names;
}

enum class Match { yes, no, not_run };

inline const char* to_string(Match m) {
    switch (m) {
        case Match::yes: return "yes";
        case Match::no: return "no";
        case Match::not_run: return "not-run";
    }
    return "?";
}

inline nlohmann::json params_json(const Params& p) {
    return {{"q", p.q()}, {"m", p.m()}, {"eta", p.eta()}, {"ell", p.ell()}, {"n", p.n()}, {"mu", p.mu()}};
}

inline nlohmann::json profile_json(const RankProfile& profile) { return profile.parts(); }

/// One evaluated quantity, optionally compared against an independent value.
///
/// `oracle_value` is the brute-force count. `reference_value` is used in the
/// discrepancy section, where a literal formula is set against the oracle-verified
/// per-profile computation named by `reference_variant`.
struct Record {
    nlohmann::json query = nlohmann::json::object();
    FormulaVariant variant = FormulaVariant::exact;
    std::string value;
    std::optional<std::string> oracle_value = std::nullopt;
    std::optional<std::string> reference_value = std::nullopt;
    std::optional<FormulaVariant> reference_variant = std::nullopt;

    Match match() const {
        if (!oracle_value) return Match::not_run;
        return *oracle_value == value ? Match::yes : Match::no;
    }
};

/// A verification grid cell that was not run.
struct SkippedCell {
    Params params;
    std::string reason;
    std::string required;
};

struct Report {
    std::string command;
    std::optional<Params> params;
    nlohmann::json summary = nlohmann::json::object();
    std::vector<Record> records;
    std::vector<Record> discrepancies;
    std::vector<SkippedCell> skipped;
    std::string timestamp;

    /// True when every required record that was compared matched.
    bool all_required_match() const {
        for (const Record& r : records)
            if (r.match() == Match::no) return false;
        return true;
    }

    std::string status() const {
        if (!all_required_match()) return "failed";
        if (!skipped.empty()) return "skipped";
        return "ok";
    }
};

inline std::string utc_timestamp() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

inline nlohmann::json to_json(const Record& r) {
    nlohmann::json out = {
        {"query", r.query},
        {"formula_variant", to_string(r.variant)},
        {"value", r.value},
        {"oracle_value", r.oracle_value ? nlohmann::json(*r.oracle_value) : nlohmann::json(nullptr)},
        {"match", to_string(r.match())},
    };
    if (r.reference_value) {
        out["reference_value"] = *r.reference_value;
        out["reference_variant"] = r.reference_variant ? to_string(*r.reference_variant) : "";
        out["reference_match"] = (r.oracle_value && *r.oracle_value == *r.reference_value) ? "yes"
                                 : r.oracle_value                                        ? "no"
                                                                                         : "not-run";
    }
    return out;
}

inline nlohmann::json to_json(const Report& report) {
    nlohmann::json records = nlohmann::json::array();
    for (const Record& r : report.records) records.push_back(to_json(r));
    nlohmann::json discrepancies = nlohmann::json::array();
    for (const Record& r : report.discrepancies) discrepancies.push_back(to_json(r));
    nlohmann::json skipped = nlohmann::json::array();
    for (const SkippedCell& s : report.skipped) {
        skipped.push_back({{"params", params_json(s.params)}, {"reason", s.reason}, {"required", s.required}});
    }
    return {
        {"tool", kToolName},
        {"version", kToolVersion},
        {"timestamp", report.timestamp},
        {"command", report.command},
        {"params", report.params ? params_json(*report.params) : nlohmann::json(nullptr)},
        {"summary", report.summary},
        {"records", std::move(records)},
        {"paper_variant_discrepancies", std::move(discrepancies)},
        {"skipped", std::move(skipped)},
        {"status", report.status()},
    };
}

inline std::string serialize(const Report& report) { return to_json(report).dump(2) + "\n"; }

namespace detail {

inline bool is_decimal_string(const nlohmann::json& j) {
    if (!j.is_string()) return false;
    const std::string& s = j.get_ref<const std::string&>();
    const std::size_t from = (!s.empty() && s[0] == '-') ? 1 : 0;
    return s.size() > from && s.find_first_not_of("0123456789", from) == std::string::npos;
}

inline void validate_record(const nlohmann::json& r, const std::string& where, bool discrepancy,
                            std::vector<std::string>& errors) {
    auto fail = [&](const std::string& msg) { errors.push_back(where + ": " + msg); };
    if (!r.is_object()) return fail("record is not an object");
    if (!r.contains("query") || !r["query"].is_object()) fail("missing object 'query'");
    if (!r.contains("formula_variant") || !r["formula_variant"].is_string()) {
        fail("missing string 'formula_variant'");
    } else {
        const auto& names = formula_variant_names();
        if (std::find(names.begin(), names.end(), r["formula_variant"].get<std::string>()) == names.end())
            fail("unknown formula_variant '" + r["formula_variant"].get<std::string>() + "'");
    }
    if (!r.contains("value") || !is_decimal_string(r["value"])) fail("'value' must be a decimal string");
    if (!r.contains("oracle_value") || !(r["oracle_value"].is_null() || is_decimal_string(r["oracle_value"])))
        fail("'oracle_value' must be null or a decimal string");
    if (!r.contains("match") || !r["match"].is_string()) {
        fail("missing string 'match'");
    } else {
        const std::string m = r["match"].get<std::string>();
        if (m != "yes" && m != "no" && m != "not-run") fail("bad 'match' value '" + m + "'");
    }
    if (discrepancy) {
        if (!r.contains("reference_value") || !is_decimal_string(r["reference_value"]))
            fail("'reference_value' must be a decimal string");
        if (!r.contains("reference_variant") || !r["reference_variant"].is_string())
            fail("missing string 'reference_variant'");
    }
}

}  // namespace detail

/// Structural check of a serialised report. Returns one message per violation.
inline std::vector<std::string> validate_report(const nlohmann::json& j) {
    std::vector<std::string> errors;
    if (!j.is_object()) return {"report is not an object"};
    for (const char* key : {"tool", "version", "timestamp", "command", "status"}) {
        if (!j.contains(key) || !j[key].is_string()) errors.push_back(std::string("missing string '") + key + "'");
    }
    if (!j.contains("params") || !(j["params"].is_null() || j["params"].is_object()))
        errors.push_back("'params' must be null or an object");
    if (!j.contains("summary") || !j["summary"].is_object()) errors.push_back("missing object 'summary'");
    for (const char* key : {"records", "paper_variant_discrepancies", "skipped"}) {
        if (!j.contains(key) || !j[key].is_array()) {
            errors.push_back(std::string("missing array '") + key + "'");
        }
    }
    if (!errors.empty()) return errors;
    for (std::size_t i = 0; i < j["records"].size(); ++i)
        detail::validate_record(j["records"][i], "records[" + std::to_string(i) + "]", false, errors);
    const auto& disc = j["paper_variant_discrepancies"];
    for (std::size_t i = 0; i < disc.size(); ++i)
        detail::validate_record(disc[i], "paper_variant_discrepancies[" + std::to_string(i) + "]", true, errors);
    for (std::size_t i = 0; i < j["skipped"].size(); ++i) {
        const auto& s = j["skipped"][i];
        if (!s.is_object() || !s.contains("params") || !s.contains("reason") ||
            !s.contains("required") || !detail::is_decimal_string(s["required"]))
            errors.push_back("skipped[" + std::to_string(i) + "]: malformed");
    }
    return errors;
}

}  // namespace sumrank
