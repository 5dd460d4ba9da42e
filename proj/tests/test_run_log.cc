/* vim: set sw=4 sts=4 et : */

#include <embedlab/combinators.hh>
#include <embedlab/constructions.hh>
#include <embedlab/errors.hh>
#include <embedlab/order_to_equivalence.hh>
#include <embedlab/run_log.hh>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include <sstream>

using namespace embedlab;
using nlohmann::json;

namespace
{
    auto omega(std::size_t stages, PolicyKind p = PolicyKind::Fair) -> StructureStream
    {
        return generate(CanonicalSpec{ Family::Omega, 1, Policy{ p, 0 } }, stages);
    }

    auto lines(const std::string & text) -> std::vector<std::string>
    {
        std::vector<std::string> result;
        std::istringstream in(text);
        for (std::string line ; std::getline(in, line) ; )
            result.push_back(line);
        return result;
    }
}

TEST(Run, ReplicateOnOmega)
{
    auto input = omega(50);
    auto log = run(replicate(2), input, 50);
    ASSERT_EQ(log.stage_count(), 50u);
    auto out = log.final_diagram();
    EXPECT_EQ(out.size(), 2 * input.final_stage().size());
    EXPECT_TRUE(out.is_total());
    for (std::size_t s = 0 ; s < 50 ; ++s) {
        auto expected = evaluate(*replicate(2), input.stage(s), s);
        ASSERT_TRUE(included_in(log.stage(s), expected) && included_in(expected, log.stage(s))) << s;
    }
}

TEST(Run, OutputsAreCumulative)
{
    auto input = omega(30);
    auto log = run(interval_fill(replicate(1), FillStyle::LeftClosed), input, 30, parse_budget_schedule("div:3"));
    for (std::size_t s = 1 ; s < 30 ; ++s)
        ASSERT_TRUE(included_in(log.stage(s - 1), log.stage(s)));
}

TEST(Run, Errors)
{
    EXPECT_THROW(run(replicate(2), omega(10), 11), InvalidInput);
    EXPECT_THROW(run(ord2eq(), generate(CanonicalSpec{ Family::E, 1, { } }, 5), 5), SignatureError);
    BudgetSchedule wobbly("wobbly", [] (std::size_t s) -> Budget { return s % 2 ? 1 : 4; });
    EXPECT_THROW(run(replicate(2), omega(10), 10, wobbly), InvalidSchedule);
}

TEST(Schedule, Parse)
{
    EXPECT_EQ(parse_budget_schedule("id")(7), 7u);
    EXPECT_EQ(parse_budget_schedule("div:4")(9), 2u);
    EXPECT_THROW(parse_budget_schedule("div:0"), InvalidSchedule);
    EXPECT_THROW(parse_budget_schedule("triple"), InvalidSchedule);
}

TEST(Jsonl, RoundTrip)
{
    auto a = generate(CanonicalSpec{ Family::OmegaK, 2, { } }, 30);
    auto b = generate(CanonicalSpec{ Family::OmegaStarK, 2, { } }, 30);
    auto log = run(phi_pair(StagePair{ a, b }), omega(20, PolicyKind::Ascending), 20, BudgetSchedule(), "r1");
    auto text = format_run_log(log);
    auto rows = lines(text);
    ASSERT_EQ(rows.size(), 20u);
    for (std::size_t s = 0 ; s < rows.size() ; ++s) {
        auto j = json::parse(rows[s]);
        EXPECT_EQ(j.at("v"), 1);
        EXPECT_EQ(j.at("stage"), s);
        EXPECT_EQ(j.at("run"), "r1");
    }
    auto back = parse_run_log(text);
    EXPECT_EQ(back, log);
    EXPECT_EQ(format_run_log(back), text);
}

TEST(Jsonl, ParseErrors)
{
    auto text = format_run_log(run(replicate(1), omega(3), 3));
    auto rows = lines(text);

    auto bad_version = rows;
    bad_version[1].replace(bad_version[1].find("\"v\":1"), 5, "\"v\":2");
    try {
        parse_run_log(bad_version[0] + "\n" + bad_version[1] + "\n");
        FAIL();
    }
    catch (const ParseError & e) {
        EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos) << e.what();
    }

    auto bad_fact = rows;
    auto at = bad_fact[2].find("lt ");
    ASSERT_NE(at, std::string::npos);
    bad_fact[2].replace(at, 2, "le");
    try {
        parse_run_log(bad_fact[0] + "\n" + bad_fact[1] + "\n" + bad_fact[2] + "\n");
        FAIL();
    }
    catch (const ParseError & e) {
        EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos) << e.what();
    }

    EXPECT_THROW(parse_run_log(rows[0] + "\n" + rows[2] + "\n"), ParseError);
    EXPECT_THROW(parse_run_log("\n\n"), ParseError);
    EXPECT_THROW(parse_run_log("{not json}\n"), ParseError);
}

TEST(Run, Deterministic)
{
    auto input = generate(CanonicalSpec{ Family::OnePlusEta, 1, Policy{ PolicyKind::Permuted, 11 } }, 40);
    auto first = format_run_log(run(ord2eq(), input, 40, BudgetSchedule(), "d"));
    auto again = format_run_log(run(ord2eq(), input, 40, BudgetSchedule(), "d"));
    EXPECT_EQ(first, again);
}
