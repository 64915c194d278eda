#pragma once

// The operations behind the `volume`, `intersect` and `verify` subcommands. Each
// returns a Report; rendering and process exit codes live here too so the CLI
// binary only parses flags.

#include <algorithm>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "compositions.hpp"
#include "count.hpp"
#include "errors.hpp"
#include "intersections.hpp"
#include "oracle.hpp"
#include "params.hpp"
#include "report.hpp"
#include "volumes.hpp"

namespace sumrank {

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int invalid_arguments = 2;
inline constexpr int budget_refusal = 3;
inline constexpr int check_failure = 4;
}  // namespace exit_code

inline int exit_code_for(const Report& report) {
    if (!report.all_required_match()) return exit_code::check_failure;
    if (!report.skipped.empty()) return exit_code::budget_refusal;
    return exit_code::ok;
}

/// Parses "2,0,1" into a profile.
inline RankProfile parse_profile(const std::string& text) {
    std::vector<unsigned> parts;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        if (item.empty() || item.find_first_not_of("0123456789") != std::string::npos || item.size() > 6) {
            throw InvalidArgument("profile entries must be nonnegative integers (got '" + text + "')");
        }
        parts.push_back(static_cast<unsigned>(std::stoul(item)));
    }
    if (parts.empty()) throw InvalidArgument("profile must not be empty");
    return RankProfile(std::move(parts));
}

// ---------------------------------------------------------------------------
// volume

enum class VolumeKind { sphere, ball, distribution };

inline VolumeKind parse_volume_kind(const std::string& text) {
    if (text == "sphere") return VolumeKind::sphere;
    if (text == "ball") return VolumeKind::ball;
    if (text == "distribution") return VolumeKind::distribution;
    throw InvalidArgument("--kind must be one of sphere, ball, distribution (got '" + text + "')");
}

struct VolumeOptions {
    Params params;
    VolumeKind kind = VolumeKind::sphere;
    std::optional<unsigned> t;
    bool with_oracle = false;
    oracle::Budget budget;
    std::string timestamp = utc_timestamp();
};

inline Report run_volume(const VolumeOptions& opt) {
    const Params& p = opt.params;
    Report report;
    report.command = "volume";
    report.params = p;
    report.timestamp = opt.timestamp;

    std::optional<std::vector<Count>> oracle_distribution;
    if (opt.with_oracle) {
        const oracle::DistanceHistogram hist(p, RankProfile(std::vector<unsigned>(p.ell(), 0)), opt.budget);
        oracle_distribution.emplace();
        for (unsigned t = 0; t <= p.max_weight(); ++t) oracle_distribution->push_back(hist.sphere(t));
    }
    auto oracle_prefix = [&](unsigned t) {
        Count total = 0;
        for (unsigned j = 0; j <= std::min(t, p.max_weight()); ++j) total += (*oracle_distribution)[j];
        return total;
    };

    if (opt.kind == VolumeKind::distribution) {
        const std::vector<Count> dist = weight_distribution(p);
        nlohmann::json values = nlohmann::json::array();
        for (unsigned t = 0; t < dist.size(); ++t) {
            values.push_back(to_decimal(dist[t]));
            Record r{{{"t", t}}, FormulaVariant::sphere, to_decimal(dist[t])};
            if (oracle_distribution) r.oracle_value = to_decimal((*oracle_distribution)[t]);
            report.records.push_back(std::move(r));
        }
        report.summary["distribution"] = std::move(values);
        return report;
    }

    if (!opt.t) throw InvalidArgument("--t is required for --kind sphere and --kind ball");
    const unsigned t = *opt.t;
    Record r{{{"t", t}}, opt.kind == VolumeKind::sphere ? FormulaVariant::sphere : FormulaVariant::ball, ""};
    if (opt.kind == VolumeKind::sphere) {
        r.value = to_decimal(sphere_volume(p, t));
        if (oracle_distribution) {
            r.oracle_value = to_decimal(t <= p.max_weight() ? (*oracle_distribution)[t] : Count(0));
        }
    } else {
        r.value = to_decimal(ball_volume(p, t));
        if (oracle_distribution) r.oracle_value = to_decimal(oracle_prefix(t));
    }
    report.summary["value"] = r.value;
    report.records.push_back(std::move(r));
    return report;
}

/// `t,count` rows for a distribution report.
inline std::string render_distribution_csv(const Report& report) {
    if (!report.summary.contains("distribution")) {
        throw InvalidArgument("--format csv is only available for --kind distribution");
    }
    std::string out = "t,count\n";
    const auto& values = report.summary["distribution"];
    for (std::size_t t = 0; t < values.size(); ++t) {
        out += std::to_string(t) + "," + values[t].get<std::string>() + "\n";
    }
    return out;
}

// ---------------------------------------------------------------------------
// intersect

enum class IntersectVariant { exact, thm1_literal, thm2, thm3 };

inline IntersectVariant parse_intersect_variant(const std::string& text) {
    if (text == "exact") return IntersectVariant::exact;
    if (text == "thm1-literal") return IntersectVariant::thm1_literal;
    if (text == "thm2") return IntersectVariant::thm2;
    if (text == "thm3") return IntersectVariant::thm3;
    throw InvalidArgument("--variant must be one of exact, thm1-literal, thm2, thm3 (got '" + text + "')");
}

/// Options for `intersect`. The center distance is given either as a per-block
/// profile or as a scalar t. For thm2 the radii are implied (delta, 1); for thm3 the
/// first radius u is gamma and the second is implied as delta - gamma.
struct IntersectOptions {
    Params params;
    IntersectVariant variant = IntersectVariant::exact;
    std::optional<unsigned> u;
    std::optional<unsigned> s;
    std::optional<RankProfile> profile;
    std::optional<unsigned> t;
    bool with_oracle = false;
    oracle::Budget budget;
    std::string timestamp = utc_timestamp();
};

namespace detail {

inline nlohmann::json intersection_query(std::optional<unsigned> u, std::optional<unsigned> s,
                                         const std::optional<RankProfile>& profile, std::optional<unsigned> t) {
    nlohmann::json q = nlohmann::json::object();
    if (u) q["u"] = *u;
    if (s) q["s"] = *s;
    if (profile) q["profile"] = profile_json(*profile);
    if (t) q["t"] = *t;
    return q;
}

}  // namespace detail

inline Report run_intersect(const IntersectOptions& opt) {
    const Params& p = opt.params;
    Report report;
    report.command = "intersect";
    report.params = p;
    report.timestamp = opt.timestamp;

    if (opt.profile && opt.t) throw InvalidArgument("give either --profile or --t, not both");
    if (!opt.profile && !opt.t) throw InvalidArgument("one of --profile or --t is required");
    if (opt.profile) detail::require_profile(p, *opt.profile, "--profile");
    if (opt.t && *opt.t > p.max_weight()) {
        throw InvalidArgument("--t exceeds the largest sum-rank distance ell*mu=" + std::to_string(p.max_weight()));
    }
    const unsigned distance = opt.profile ? opt.profile->total() : *opt.t;

    // Oracle value for a concrete profile, when requested.
    auto oracle_within = [&](unsigned u, unsigned s, const RankProfile& profile) -> std::optional<std::string> {
        if (!opt.with_oracle) return std::nullopt;
        return to_decimal(oracle::count_intersection(p, u, s, profile, opt.budget));
    };
    auto profiles_for_distance = [&]() {
        return enumerate_uniform(distance, p.ell(), p.mu()).to_vector();
    };

    switch (opt.variant) {
        case IntersectVariant::exact: {
            if (!opt.u || !opt.s) throw InvalidArgument("variant exact requires --u and --s");
            if (!opt.profile) throw InvalidArgument("variant exact requires --profile");
            const IntersectionQuery query(p, *opt.u, *opt.s, *opt.profile);
            Record r{detail::intersection_query(opt.u, opt.s, opt.profile, std::nullopt), FormulaVariant::exact,
                     to_decimal(sumrank_intersection_exact(query))};
            r.oracle_value = oracle_within(*opt.u, *opt.s, *opt.profile);
            report.summary["exact"] = r.value;
            report.records.push_back(std::move(r));
            break;
        }
        case IntersectVariant::thm1_literal: {
            if (!opt.u || !opt.s) throw InvalidArgument("variant thm1-literal requires --u and --s");
            if (*opt.u + *opt.s < distance) throw InvalidArgument("thm1-literal requires u + s >= t");
            Record r{detail::intersection_query(opt.u, opt.s, std::nullopt, distance), FormulaVariant::thm1_literal,
                     to_decimal(theorem1_literal(p, *opt.u, *opt.s, distance))};
            report.summary["thm1-literal"] = r.value;
            report.records.push_back(std::move(r));
            nlohmann::json exact = nlohmann::json::object();
            for (const RankProfile& prof : opt.profile ? std::vector<RankProfile>{*opt.profile} : profiles_for_distance()) {
                Record e{detail::intersection_query(opt.u, opt.s, prof, std::nullopt), FormulaVariant::exact,
                         to_decimal(sumrank_intersection_exact(IntersectionQuery(p, *opt.u, *opt.s, prof)))};
                e.oracle_value = oracle_within(*opt.u, *opt.s, prof);
                exact[prof.to_string()] = e.value;
                report.records.push_back(std::move(e));
            }
            report.summary["exact"] = std::move(exact);
            break;
        }
        case IntersectVariant::thm2: {
            if (distance == 0) throw InvalidArgument("thm2 requires a nonzero center distance");
            if (opt.t) {
                Record lit{detail::intersection_query(distance, 1u, std::nullopt, distance),
                           FormulaVariant::thm2_literal, theorem2_literal(p, distance).str()};
                report.summary["thm2-literal"] = lit.value;
                report.records.push_back(std::move(lit));
            }
            nlohmann::json per_profile = nlohmann::json::object();
            for (const RankProfile& prof : opt.profile ? std::vector<RankProfile>{*opt.profile} : profiles_for_distance()) {
                Record r{detail::intersection_query(distance, 1u, prof, std::nullopt), FormulaVariant::thm2_profile,
                         to_decimal(theorem2_per_profile(p, prof))};
                r.oracle_value = oracle_within(distance, 1, prof);
                per_profile[prof.to_string()] = r.value;
                report.records.push_back(std::move(r));
            }
            report.summary["thm2-profile"] = std::move(per_profile);
            break;
        }
        case IntersectVariant::thm3: {
            if (!opt.u) throw InvalidArgument("variant thm3 requires --u (gamma)");
            const unsigned gamma = *opt.u;
            if (gamma > distance) throw InvalidArgument("thm3 requires gamma = u <= t");
            if (opt.s && *opt.s != distance - gamma) {
                throw InvalidArgument("thm3 fixes s = t - u; got s=" + std::to_string(*opt.s));
            }
            if (opt.t) {
                Record lit{detail::intersection_query(gamma, distance - gamma, std::nullopt, distance),
                           FormulaVariant::thm3_literal, to_decimal(theorem3_literal(p, gamma, distance))};
                report.summary["thm3-literal"] = lit.value;
                report.records.push_back(std::move(lit));
            }
            nlohmann::json aggregate = nlohmann::json::object();
            for (const RankProfile& prof : opt.profile ? std::vector<RankProfile>{*opt.profile} : profiles_for_distance()) {
                Record r{detail::intersection_query(gamma, distance - gamma, prof, std::nullopt),
                         FormulaVariant::thm3_aggregate, to_decimal(theorem3_aggregate(p, gamma, prof))};
                r.oracle_value = oracle_within(gamma, distance - gamma, prof);
                aggregate[prof.to_string()] = r.value;
                report.records.push_back(std::move(r));
            }
            report.summary["thm3-aggregate"] = std::move(aggregate);
            break;
        }
    }
    return report;
}

// ---------------------------------------------------------------------------
// verify

/// Parses a grid description: "default", "none", or cells "q:m,eta,ell" separated by ';'.
/// The result is sorted by (q, m, eta, ell) with duplicates removed.
inline std::vector<Params> parse_grid(const std::string& text) {
    std::vector<Params> cells;
    if (text == "none") return cells;
    if (text == "default") {
        cells = {Params(2, 2, 2, 1), Params(2, 2, 2, 2), Params(2, 2, 1, 3)};
    } else {
        std::stringstream in(text);
        std::string cell;
        while (std::getline(in, cell, ';')) {
            const auto colon = cell.find(':');
            if (colon == std::string::npos) throw InvalidArgument("grid cell must look like q:m,eta,ell (got '" + cell + "')");
            const RankProfile dims = parse_profile(cell.substr(colon + 1));
            if (dims.size() != 3) throw InvalidArgument("grid cell must look like q:m,eta,ell (got '" + cell + "')");
            const RankProfile q = parse_profile(cell.substr(0, colon));
            if (q.size() != 1) throw InvalidArgument("grid cell must look like q:m,eta,ell (got '" + cell + "')");
            cells.emplace_back(q[0], dims[0], dims[1], dims[2]);
        }
    }
    auto key = [](const Params& p) { return std::tuple(p.q(), p.m(), p.eta(), p.ell()); };
    std::sort(cells.begin(), cells.end(), [&](const Params& a, const Params& b) { return key(a) < key(b); });
    cells.erase(std::unique(cells.begin(), cells.end()), cells.end());
    for (const Params& p : cells) oracle::require_prime(p.q());
    return cells;
}

struct VerifyOptions {
    std::vector<Params> grid;
    oracle::Budget budget;
    std::string timestamp = utc_timestamp();
};

namespace detail {

inline nlohmann::json cell_query(const Params& p) {
    return {{"q", p.q()}, {"m", p.m()}, {"eta", p.eta()}, {"ell", p.ell()}};
}

// All oracle-vs-formula comparisons for one grid cell.
inline void verify_cell(const Params& p, const oracle::Budget& budget, Report& report) {
    const unsigned top = p.max_weight();

    // Spheres and balls.
    const std::vector<Count> dist = weight_distribution(p);
    const oracle::DistanceHistogram origin(p, RankProfile(std::vector<unsigned>(p.ell(), 0)), budget);
    Count oracle_ball = 0;
    for (unsigned t = 0; t <= top; ++t) {
        oracle_ball += origin.sphere(t);
        nlohmann::json q = cell_query(p);
        q["t"] = t;
        report.records.push_back({q, FormulaVariant::sphere, to_decimal(sphere_volume(p, t)),
                                  to_decimal(origin.sphere(t))});
        report.records.push_back({q, FormulaVariant::ball, to_decimal(ball_volume(p, t)), to_decimal(oracle_ball)});
    }

    // Rank-1 additivity inside one block.
    for (unsigned r = 0; r <= p.mu(); ++r) {
        nlohmann::json q = cell_query(p);
        q["r"] = r;
        report.records.push_back({q, FormulaVariant::lemma8, to_decimal(rank1_additive_pairs(p.eta(), p.m(), r, p.q())),
                                  to_decimal(oracle::count_rank1_additive(p.eta(), p.m(), r, p.q(), budget))});
    }

    // Every distance profile of the center pair.
    std::vector<unsigned> bounds(p.ell(), p.mu());
    for (unsigned delta = 0; delta <= top; ++delta) {
        for (const RankProfile& profile : enumerate_bounded(delta, bounds)) {
            const oracle::DistanceHistogram hist(p, profile, budget);

            for (unsigned u = 0; u <= top; ++u) {
                for (unsigned s = 0; s <= top; ++s) {
                    nlohmann::json q = cell_query(p);
                    q["u"] = u;
                    q["s"] = s;
                    q["profile"] = profile_json(profile);
                    const std::string oracle_value = to_decimal(hist.within(u, s));
                    const std::string exact = to_decimal(sumrank_intersection_exact(IntersectionQuery(p, u, s, profile)));
                    report.records.push_back({q, FormulaVariant::exact, exact, oracle_value});
                    if (u + s >= delta) {
                        report.discrepancies.push_back({q, FormulaVariant::thm1_literal,
                                                        to_decimal(theorem1_literal(p, u, s, delta)), oracle_value,
                                                        exact, FormulaVariant::exact});
                    }
                }
            }

            for (unsigned gamma = 0; gamma <= delta; ++gamma) {
                nlohmann::json q = cell_query(p);
                q["gamma"] = gamma;
                q["profile"] = profile_json(profile);
                const std::string oracle_value = to_decimal(hist.within(gamma, delta - gamma));
                const std::string aggregate = to_decimal(theorem3_aggregate(p, gamma, profile));
                report.records.push_back({q, FormulaVariant::thm3_aggregate, aggregate, oracle_value});
                report.discrepancies.push_back({q, FormulaVariant::thm3_literal,
                                                to_decimal(theorem3_literal(p, gamma, delta)), oracle_value, aggregate,
                                                FormulaVariant::thm3_aggregate});
            }

            if (delta >= 1) {
                nlohmann::json q = cell_query(p);
                q["profile"] = profile_json(profile);
                const std::string oracle_value = to_decimal(hist.within(delta, 1));
                const std::string per_profile = to_decimal(theorem2_per_profile(p, profile));
                report.records.push_back({q, FormulaVariant::thm2_profile, per_profile, oracle_value});
                report.discrepancies.push_back({q, FormulaVariant::thm2_literal, theorem2_literal(p, delta).str(),
                                                oracle_value, per_profile, FormulaVariant::thm2_profile});
            }
        }
    }
}

}  // namespace detail

/// Runs every formula against the oracle on each grid cell. Cells whose enumeration
/// exceeds the budget are listed under `skipped`.
inline Report run_verify(const VerifyOptions& opt) {
    Report report;
    report.command = "verify";
    report.timestamp = opt.timestamp;
    nlohmann::json cells = nlohmann::json::array();
    for (const Params& p : opt.grid) {
        try {
            oracle::require_budget(p.q(), std::uint64_t{p.m()} * p.n(), opt.budget, "verify cell");
        } catch (const BudgetExceeded& e) {
            report.skipped.push_back({p, e.what(), e.required()});
            continue;
        }
        detail::verify_cell(p, opt.budget, report);
        cells.push_back(detail::cell_query(p));
    }

    std::size_t failures = 0;
    for (const Record& r : report.records) failures += r.match() == Match::no;
    std::size_t mismatches = 0;
    for (const Record& r : report.discrepancies) mismatches += r.match() == Match::no;
    report.summary = {
        {"cells_run", cells},
        {"required_checks", report.records.size()},
        {"required_failures", failures},
        {"skipped_cells", report.skipped.size()},
        {"paper_variant_checks", report.discrepancies.size()},
        {"paper_variant_mismatches", mismatches},
    };
    return report;
}

// ---------------------------------------------------------------------------
// text rendering

inline std::string render_text(const Report& report) {
    std::ostringstream out;
    out << kToolName << ' ' << kToolVersion << "  " << report.command << "  " << report.timestamp << '\n';
    if (report.params) {
        const Params& p = *report.params;
        out << "params: q=" << p.q() << " m=" << p.m() << " eta=" << p.eta() << " ell=" << p.ell()
            << " n=" << p.n() << " mu=" << p.mu() << '\n';
    }
    for (const auto& [key, value] : report.summary.items()) {
        out << key << ": " << (value.is_string() ? value.get<std::string>() : value.dump()) << '\n';
    }

    auto table = [&](const std::vector<Record>& rows, const char* title) {
        if (rows.empty()) return;
        out << '\n' << title << '\n';
        std::size_t wq = 5, wv = 5, wo = 6;
        for (const Record& r : rows) {
            wq = std::max(wq, r.query.dump().size());
            wv = std::max(wv, r.value.size());
            wo = std::max(wo, r.oracle_value.value_or("-").size());
        }
        auto pad = [](const std::string& s, std::size_t w) { return s + std::string(w - std::min(w, s.size()), ' '); };
        out << pad("variant", 15) << "  " << pad("query", wq) << "  " << pad("value", wv) << "  " << pad("oracle", wo)
            << "  match\n";
        for (const Record& r : rows) {
            out << pad(to_string(r.variant), 15) << "  " << pad(r.query.dump(), wq) << "  " << pad(r.value, wv) << "  "
                << pad(r.oracle_value.value_or("-"), wo) << "  " << to_string(r.match());
            if (r.reference_value) out << "  (" << to_string(*r.reference_variant) << " " << *r.reference_value << ")";
            out << '\n';
        }
    };
    table(report.records, "records");
    table(report.discrepancies, "paper-variant discrepancies");
    for (const SkippedCell& s : report.skipped) out << "skipped: " << s.reason << '\n';
    out << "status: " << report.status() << '\n';
    return out.str();
}

}  // namespace sumrank
