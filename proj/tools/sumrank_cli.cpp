// sumrank: sum-rank metric ball volumes and intersections.
//
//   sumrank volume    --q 2 --m 2 --eta 2 --ell 1 --kind sphere --t 1
//   sumrank intersect --q 2 --m 2 --eta 2 --ell 2 --u 1 --s 1 --profile 2,0
//   sumrank verify    --grid default

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "sumrank/commands.hpp"

namespace {

struct SharedFlags {
    unsigned q = 2;
    unsigned m = 1;
    unsigned eta = 1;
    unsigned ell = 1;
    std::string format = "json";
    std::uint64_t budget = sumrank::oracle::kDefaultBudget;
    std::string output;
    bool with_oracle = false;
};

void add_shared(CLI::App* cmd, SharedFlags& f, bool with_space) {
    if (with_space) {
        cmd->add_option("--q", f.q, "field size (>= 2; prime for oracle runs)")->required();
        cmd->add_option("--m", f.m, "extension degree")->required();
        cmd->add_option("--eta", f.eta, "block length")->required();
        cmd->add_option("--ell", f.ell, "number of blocks")->required();
        cmd->add_flag("--oracle", f.with_oracle, "also count by brute force and report matches");
    }
    cmd->add_option("--format", f.format, "json, text (or csv for --kind distribution)");
    cmd->add_option("--budget", f.budget, "largest number of vectors one oracle run may enumerate");
    cmd->add_option("--output", f.output, "write the report to this file instead of stdout");
}

std::string render(const sumrank::Report& report, const std::string& format) {
    if (format == "json") return sumrank::serialize(report);
    if (format == "text") return sumrank::render_text(report);
    if (format == "csv") return sumrank::render_distribution_csv(report);
    throw sumrank::InvalidArgument("--format must be json, text or csv (got '" + format + "')");
}

int emit(const sumrank::Report& report, const SharedFlags& f) {
    const std::string text = render(report, f.format);
    if (f.output.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(f.output);
        if (!out) throw sumrank::InvalidArgument("cannot write '" + f.output + "'");
        out << text;
    }
    return sumrank::exit_code_for(report);
}

template <typename T>
std::optional<T> given(const CLI::Option* opt, const T& value) {
    return opt->count() ? std::optional<T>(value) : std::nullopt;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact volumes of balls and ball intersections in the sum-rank metric"};
    app.require_subcommand(1);

    SharedFlags volume_flags;
    std::string kind = "sphere";
    unsigned volume_t = 0;
    auto* volume = app.add_subcommand("volume", "sphere/ball volume or the full weight distribution");
    add_shared(volume, volume_flags, true);
    volume->add_option("--kind", kind, "sphere, ball or distribution");
    auto* volume_t_opt = volume->add_option("--t", volume_t, "radius");

    SharedFlags intersect_flags;
    std::string variant = "exact";
    unsigned u = 0;
    unsigned s = 0;
    unsigned intersect_t = 0;
    std::string profile;
    auto* intersect = app.add_subcommand("intersect", "volume of the intersection of two balls");
    add_shared(intersect, intersect_flags, true);
    auto* u_opt = intersect->add_option("--u", u, "first radius (gamma for thm3)");
    auto* s_opt = intersect->add_option("--s", s, "second radius");
    auto* profile_opt = intersect->add_option("--profile", profile, "per-block center distances, e.g. 2,0");
    auto* t_opt = intersect->add_option("--t", intersect_t, "scalar center distance");
    intersect->add_option("--variant", variant, "exact, thm1-literal, thm2 or thm3");

    SharedFlags verify_flags;
    std::string grid = "default";
    auto* verify = app.add_subcommand("verify", "compare every formula with brute-force counts");
    add_shared(verify, verify_flags, false);
    verify->add_option("--grid", grid, "default, none, or cells q:m,eta,ell separated by ';'");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : sumrank::exit_code::invalid_arguments;
    }

    try {
        if (volume->parsed()) {
            const SharedFlags& f = volume_flags;
            sumrank::VolumeOptions opt{sumrank::Params(f.q, f.m, f.eta, f.ell)};
            opt.kind = sumrank::parse_volume_kind(kind);
            opt.t = given(volume_t_opt, volume_t);
            opt.with_oracle = f.with_oracle;
            opt.budget.max_items = f.budget;
            return emit(sumrank::run_volume(opt), f);
        }
        if (intersect->parsed()) {
            const SharedFlags& f = intersect_flags;
            sumrank::IntersectOptions opt{sumrank::Params(f.q, f.m, f.eta, f.ell)};
            opt.variant = sumrank::parse_intersect_variant(variant);
            opt.u = given(u_opt, u);
            opt.s = given(s_opt, s);
            opt.t = given(t_opt, intersect_t);
            if (profile_opt->count()) opt.profile = sumrank::parse_profile(profile);
            opt.with_oracle = f.with_oracle;
            opt.budget.max_items = f.budget;
            return emit(sumrank::run_intersect(opt), f);
        }
        const SharedFlags& f = verify_flags;
        sumrank::VerifyOptions opt;
        opt.grid = sumrank::parse_grid(grid);
        opt.budget.max_items = f.budget;
        return emit(sumrank::run_verify(opt), f);
    } catch (const sumrank::InvalidArgument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return sumrank::exit_code::invalid_arguments;
    } catch (const sumrank::BudgetExceeded& e) {
        std::cerr << "error: " << e.what() << '\n';
        return sumrank::exit_code::budget_refusal;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return 1;
    }
}
