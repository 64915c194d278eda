#include <gtest/gtest.h>

#include "sumrank/commands.hpp"

using namespace sumrank;

namespace {

constexpr const char* kFixedTime = "2026-01-01T00:00:00Z";

VolumeOptions volume(Params p, VolumeKind kind, std::optional<unsigned> t) {
    VolumeOptions opt{p};
    opt.kind = kind;
    opt.t = t;
    opt.timestamp = kFixedTime;
    return opt;
}

IntersectOptions intersect(Params p, IntersectVariant v) {
    IntersectOptions opt{p};
    opt.variant = v;
    opt.timestamp = kFixedTime;
    return opt;
}

}  // namespace

TEST(VolumeCommand, SphereBallAndDistribution) {
    const Params p(2, 2, 2, 1);
    EXPECT_EQ(run_volume(volume(p, VolumeKind::sphere, 1)).summary, nlohmann::json({{"value", "9"}}));
    EXPECT_EQ(run_volume(volume(p, VolumeKind::ball, 0)).summary, nlohmann::json({{"value", "1"}}));
    const Report dist = run_volume(volume(p, VolumeKind::distribution, std::nullopt));
    EXPECT_EQ(dist.summary["distribution"], nlohmann::json({"1", "9", "6"}));
    EXPECT_EQ(render_distribution_csv(dist), "t,count\n0,1\n1,9\n2,6\n");
}

TEST(VolumeCommand, RequiresRadius) {
    EXPECT_THROW(run_volume(volume(Params(2, 2, 2, 1), VolumeKind::sphere, std::nullopt)), InvalidArgument);
    EXPECT_THROW(render_distribution_csv(run_volume(volume(Params(2, 2, 2, 1), VolumeKind::ball, 1))), InvalidArgument);
    EXPECT_THROW(parse_volume_kind("cube"), InvalidArgument);
}

TEST(VolumeCommand, OracleComparison) {
    VolumeOptions opt = volume(Params(2, 2, 2, 2), VolumeKind::distribution, std::nullopt);
    opt.with_oracle = true;
    const Report r = run_volume(opt);
    ASSERT_EQ(r.records.size(), 5u);
    for (const Record& rec : r.records) EXPECT_EQ(rec.match(), Match::yes);
    EXPECT_EQ(exit_code_for(r), exit_code::ok);

    opt.budget.max_items = 10;
    EXPECT_THROW(run_volume(opt), BudgetExceeded);
}

TEST(IntersectCommand, ExactExamples) {
    const Params p(2, 2, 2, 2);
    IntersectOptions opt = intersect(p, IntersectVariant::exact);
    opt.u = 1;
    opt.s = 1;
    opt.profile = RankProfile{2, 0};
    opt.with_oracle = true;
    const Report r = run_intersect(opt);
    EXPECT_EQ(r.summary, nlohmann::json({{"exact", "6"}}));
    EXPECT_EQ(r.records.at(0).match(), Match::yes);

    opt.u = 0;
    opt.s = 9;
    opt.profile = RankProfile{1, 1};
    EXPECT_EQ(run_intersect(opt).summary, nlohmann::json({{"exact", "1"}}));

    opt.u = 1;
    opt.s = 0;
    opt.profile = RankProfile{2, 0};
    EXPECT_EQ(run_intersect(opt).summary, nlohmann::json({{"exact", "0"}}));
}

TEST(IntersectCommand, ScalarDistanceReportsLiteralAndPerProfile) {
    const Params p(2, 2, 2, 2);
    IntersectOptions opt = intersect(p, IntersectVariant::thm2);
    opt.t = 2;
    const Report r2 = run_intersect(opt);
    EXPECT_EQ(r2.summary["thm2-literal"], "20");
    EXPECT_EQ(r2.summary["thm2-profile"], nlohmann::json({{"0,2", "10"}, {"1,1", "11"}, {"2,0", "10"}}));

    opt = intersect(p, IntersectVariant::thm3);
    opt.t = 2;
    opt.u = 1;
    const Report r3 = run_intersect(opt);
    EXPECT_EQ(r3.summary["thm3-literal"], "18");
    EXPECT_EQ(r3.summary["thm3-aggregate"], nlohmann::json({{"0,2", "6"}, {"1,1", "2"}, {"2,0", "6"}}));

    opt = intersect(p, IntersectVariant::thm1_literal);
    opt.t = 2;
    opt.u = 1;
    opt.s = 1;
    const Report r1 = run_intersect(opt);
    EXPECT_EQ(r1.summary["thm1-literal"], "14");
    EXPECT_EQ(r1.summary["exact"], nlohmann::json({{"0,2", "6"}, {"1,1", "2"}, {"2,0", "6"}}));
}

TEST(IntersectCommand, RejectsBadCombinations) {
    const Params p(2, 2, 2, 2);
    IntersectOptions opt = intersect(p, IntersectVariant::thm2);
    opt.profile = RankProfile{0, 0};
    EXPECT_THROW(run_intersect(opt), InvalidArgument);
    opt.profile.reset();
    EXPECT_THROW(run_intersect(opt), InvalidArgument);  // neither profile nor t
    opt.t = 0;
    EXPECT_THROW(run_intersect(opt), InvalidArgument);
    opt = intersect(p, IntersectVariant::exact);
    opt.u = 1;
    opt.s = 1;
    opt.t = 2;
    EXPECT_THROW(run_intersect(opt), InvalidArgument);  // exact needs a profile
    opt.t.reset();
    opt.profile = RankProfile{3, 0};
    EXPECT_THROW(run_intersect(opt), InvalidArgument);
    EXPECT_THROW(parse_intersect_variant("thm4"), InvalidArgument);
    EXPECT_THROW(parse_profile("1,,2"), InvalidArgument);
    EXPECT_THROW(parse_profile("1,-2"), InvalidArgument);
}

TEST(VerifyCommand, EmptyGrid) {
    VerifyOptions opt;
    opt.grid = parse_grid("none");
    opt.timestamp = kFixedTime;
    const Report r = run_verify(opt);
    EXPECT_TRUE(r.records.empty());
    EXPECT_EQ(exit_code_for(r), exit_code::ok);
    EXPECT_TRUE(validate_report(to_json(r)).empty());
}

TEST(VerifyCommand, BudgetSkipIsRecorded) {
    VerifyOptions opt;
    opt.grid = parse_grid("2:2,2,2;2:2,2,1");
    opt.budget.max_items = 100;
    opt.timestamp = kFixedTime;
    const Report r = run_verify(opt);
    ASSERT_EQ(r.skipped.size(), 1u);
    EXPECT_EQ(r.skipped[0].required, "256");
    EXPECT_FALSE(r.records.empty());
    EXPECT_EQ(exit_code_for(r), exit_code::budget_refusal);
    EXPECT_EQ(r.status(), "skipped");
}

TEST(VerifyCommand, GridParsing) {
    const auto grid = parse_grid("3:1,1,2;2:2,2,1;2:2,2,1");
    ASSERT_EQ(grid.size(), 2u);
    EXPECT_EQ(grid[0], Params(2, 2, 2, 1));
    EXPECT_EQ(grid[1], Params(3, 1, 1, 2));
    EXPECT_EQ(parse_grid("default").size(), 3u);
    EXPECT_THROW(parse_grid("4:1,1,1"), InvalidArgument);
    EXPECT_THROW(parse_grid("2:1,1"), InvalidArgument);
    EXPECT_THROW(parse_grid("garbage"), InvalidArgument);
}

TEST(VerifyCommand, FailingRecordGivesCheckFailure) {
    Report r;
    r.records.push_back({nlohmann::json::object(), FormulaVariant::exact, "5", std::string("6")});
    EXPECT_EQ(exit_code_for(r), exit_code::check_failure);
    EXPECT_EQ(r.status(), "failed");
    // discrepancy mismatches never fail
    Report d;
    d.discrepancies.push_back({nlohmann::json::object(), FormulaVariant::thm1_literal, "5", std::string("6"),
                               std::string("6"), FormulaVariant::exact});
    EXPECT_EQ(exit_code_for(d), exit_code::ok);
}

TEST(ReportJson, RoundTripIsByteIdentical) {
    VerifyOptions opt;
    opt.grid = parse_grid("2:2,2,1;3:1,1,2");
    opt.timestamp = kFixedTime;
    const std::string text = serialize(run_verify(opt));
    const nlohmann::json parsed = nlohmann::json::parse(text);
    EXPECT_EQ(parsed.dump(2) + "\n", text);
    EXPECT_TRUE(validate_report(parsed).empty());

    IntersectOptions io = intersect(Params(2, 2, 2, 2), IntersectVariant::thm3);
    io.t = 3;
    io.u = 2;
    const std::string itext = serialize(run_intersect(io));
    EXPECT_EQ(nlohmann::json::parse(itext).dump(2) + "\n", itext);
}

TEST(ReportJson, CountsAreDecimalStrings) {
    const Report r = run_volume(volume(Params(2, 8, 8, 8), VolumeKind::ball, 64));
    const nlohmann::json j = to_json(r);
    ASSERT_TRUE(j["summary"]["value"].is_string());
    EXPECT_EQ(from_decimal(j["summary"]["value"].get<std::string>()), ipow(2, 512));
    EXPECT_TRUE(validate_report(j).empty());
}

TEST(ReportJson, ValidatorCatchesViolations) {
    nlohmann::json j = to_json(run_volume(volume(Params(2, 2, 2, 1), VolumeKind::sphere, 1)));
    j["records"][0]["formula_variant"] = "thm9";
    j["records"][0]["value"] = 9;
    EXPECT_EQ(validate_report(j).size(), 2u);
    j.erase("records");
    EXPECT_FALSE(validate_report(j).empty());
}

TEST(ReportText, Renders) {
    const std::string text = render_text(run_volume(volume(Params(2, 2, 2, 1), VolumeKind::sphere, 1)));
    EXPECT_NE(text.find("value: 9"), std::string::npos);
    EXPECT_NE(text.find("status: ok"), std::string::npos);
}
