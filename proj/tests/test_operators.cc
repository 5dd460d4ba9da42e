/* vim: set sw=4 sts=4 et : */

#include <embedlab/combinators.hh>
#include <embedlab/equivalence_to_order.hh>
#include <embedlab/errors.hh>
#include <embedlab/monotonicity.hh>
#include <embedlab/order_to_equivalence.hh>
#include <embedlab/registry.hh>
#include <embedlab/run_log.hh>

#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

using namespace embedlab;
using std::vector;

namespace
{
    auto tag(Element copy, Element source) -> Element
    {
        return TaggedElement{ copy, source }.encoded();
    }

    // emits every input element, plus an extra one only on small inputs
    class Shrinking final : public EnumerationOperator
    {
        public:
            auto name() const -> std::string override { return "shrinking"; }
            auto input_signature() const -> Signature override { return Signature::LinearOrder; }
            auto output_signature() const -> Signature override { return Signature::LinearOrder; }
            auto apply(const FiniteDiagram & alpha, Budget) const -> FiniteDiagram override
            {
                auto order = alpha.empty() ? vector<Element>{ } : OrderView(alpha).order();
                if (alpha.size() < 3)
                    order.push_back(1000);
                return chain_diagram(order);
            }
    };

    // brute-force inclusion over every pair, not only covering ones
    auto all_pairs_monotone(const EnumerationOperator & op, std::size_t max_size, Budget max_budget) -> bool
    {
        auto orders = orders_on_subsets(max_size);
        for (auto & b : orders) {
            auto beta = chain_diagram(b);
            for (auto & a : orders) {
                auto alpha = chain_diagram(a);
                if (! included_in(alpha, beta))
                    continue;
                for (Budget n = 0 ; n <= max_budget ; ++n)
                    for (Budget m = n ; m <= max_budget ; ++m)
                        if (! included_in(evaluate(op, alpha, n), evaluate(op, beta, m)))
                            return false;
            }
        }
        return true;
    }

    auto factorial(std::size_t n) -> std::size_t
    {
        return n <= 1 ? 1 : n * factorial(n - 1);
    }

    auto binomial(std::size_t n, std::size_t k) -> std::size_t
    {
        return factorial(n) / (factorial(k) * factorial(n - k));
    }
}

TEST(Evaluate, SignatureMismatch)
{
    EXPECT_THROW(evaluate(*replicate(1), partition_diagram({ { 0, 1 } }), 3), SignatureError);
    EXPECT_THROW(evaluate(*eq2ord_v1(), chain_diagram({ 0, 1 }), 3), SignatureError);
}

TEST(Evaluate, EmptyInputIsBudgetMonotone)
{
    for (auto op : { replicate(2), ord2eq(), eq2ord_v1() }) {
        FiniteDiagram empty(op->input_signature());
        EXPECT_TRUE(included_in(evaluate(*op, empty, 0), evaluate(*op, empty, 1)));
    }
}

TEST(Replicate, CopiesInOrder)
{
    auto out = evaluate(*replicate(2), chain_diagram({ 5, 3 }), 0);
    EXPECT_EQ(OrderView(out).order(), (vector<Element>{ tag(0, 5), tag(0, 3), tag(1, 5), tag(1, 3) }));
    EXPECT_EQ(OrderView(evaluate(*replicate(1), chain_diagram({ 0, 1 }), 10)).order(), (vector<Element>{ tag(0, 0), tag(0, 1) }));
    EXPECT_THROW(replicate(0), InvalidSpec);
    EXPECT_THROW(evaluate(*replicate(2), parse_diagram("el 0\nel 1\n"), 0), InvalidInput);
    EXPECT_EQ(replicate(3)->name(), "replicate:3");
}

TEST(Combinators, Reverse)
{
    auto out = evaluate(*reverse(replicate(1)), chain_diagram({ 0, 1 }), 0);
    EXPECT_EQ(OrderView(out).order(), (vector<Element>{ tag(0, 1), tag(0, 0) }));
}

TEST(Combinators, ConcatenatePutsTheFirstBelow)
{
    auto out = evaluate(*concatenate(replicate(1), replicate(1)), chain_diagram({ 0, 1 }), 0);
    auto order = OrderView(out).order();
    ASSERT_EQ(order.size(), 4u);
    for (std::size_t i = 0 ; i < 4 ; ++i)
        EXPECT_EQ(join_untag(order[i]).first, i < 2 ? 0u : 1u);
    EXPECT_THROW(concatenate(replicate(1), ord2eq()), SignatureError);
}

TEST(Combinators, DisjointUnionNeedsEquivalences)
{
    EXPECT_THROW(disjoint_union(replicate(1), replicate(1)), SignatureError);
    auto out = evaluate(*disjoint_union(ord2eq(), ord2eq()), chain_diagram({ 0, 1, 2 }), 2);
    auto one = evaluate(*ord2eq(), chain_diagram({ 0, 1, 2 }), 2);
    EXPECT_EQ(out.size(), 2 * one.size());
    EXPECT_EQ(Partition(out).classes().size(), 2 * Partition(one).classes().size());
}

TEST(Combinators, IntervalFillLeftClosed)
{
    Budget n = 40;
    auto out = evaluate(*interval_fill(replicate(1), FillStyle::LeftClosed), chain_diagram({ 7 }), n);
    EXPECT_EQ(out.size(), n + 1);
    OrderView v(out);
    EXPECT_EQ(v.least(), cantor_pair(tag(0, 7), 0));
    // the greatest is a dense point, and a bigger budget puts a new point above it
    EXPECT_NE(cantor_unpair(*v.greatest()).second, 0u);
    auto more = OrderView(evaluate(*interval_fill(replicate(1), FillStyle::LeftClosed), chain_diagram({ 7 }), n + 2));
    EXPECT_NE(more.greatest(), v.greatest());
    EXPECT_TRUE(more.less(*v.greatest(), *more.greatest()));
}

TEST(Combinators, FillAndReverseDoNotCommute)
{
    auto endpoint = [] (Element x) { return cantor_unpair(x).second == 0; };
    auto input = chain_diagram({ 0, 1 });
    auto a = OrderView(evaluate(*reverse(interval_fill(replicate(1), FillStyle::LeftClosed)), input, 6));
    auto b = OrderView(evaluate(*interval_fill(reverse(replicate(1)), FillStyle::LeftClosed), input, 6));
    EXPECT_TRUE(endpoint(*a.greatest()));
    EXPECT_FALSE(endpoint(*a.least()));
    EXPECT_TRUE(endpoint(*b.least()));
    EXPECT_FALSE(endpoint(*b.greatest()));
}

TEST(Combinators, ComposeChecksSignatures)
{
    EXPECT_THROW(compose(replicate(1), eq2ord_v1()), SignatureError);
    auto c = compose(ord2eq(), eq2ord_v1());
    EXPECT_EQ(c->input_signature(), Signature::LinearOrder);
    EXPECT_EQ(c->output_signature(), Signature::LinearOrder);
    EXPECT_EQ(c->name(), "ord2eq|eq2ord_v1");
}

TEST(Monotonicity, EnumerationCounts)
{
    std::size_t orders = 0;
    for (std::size_t k = 0 ; k <= 6 ; ++k)
        orders += binomial(6, k) * factorial(k);
    EXPECT_EQ(orders_on_subsets(6).size(), orders);
    // partitions of subsets of a 6-set are partitions of a 7-set: Bell(7)
    EXPECT_EQ(partitions_on_subsets(6).size(), 877u);
    EXPECT_EQ(orders_of({ 1, 2, 3 }).size(), 6u);
}

TEST(Monotonicity, RandomChecksPass)
{
    EXPECT_TRUE(check_monotonicity(*ord2eq(), 1000, 8, 1).passed);
    EXPECT_TRUE(check_monotonicity(*eq2ord_v1(), 1000, 5, 2).passed);
    EXPECT_TRUE(check_monotonicity(*concatenate(replicate(1), replicate(2)), 500, 6, 3).passed);
}

TEST(Monotonicity, BrokenOperatorIsCaught)
{
    Shrinking broken;
    auto r = check_monotonicity(broken, 1000, 6, 4);
    ASSERT_FALSE(r.passed);
    ASSERT_TRUE(r.counterexample);
    EXPECT_FALSE(included_in(evaluate(broken, r.counterexample->alpha, r.counterexample->n),
                evaluate(broken, r.counterexample->beta, r.counterexample->m)));

    auto e = exhaustive_monotonicity(broken, 4, 2);
    EXPECT_FALSE(e.passed);
    EXPECT_EQ(e.counterexample->missing, Fact::el(1000));
    EXPECT_FALSE(all_pairs_monotone(broken, 4, 2));
}

TEST(Monotonicity, CoveringStepsAgreeWithAllPairs)
{
    for (auto op : { replicate(2), ord2eq(), interval_fill(replicate(1), FillStyle::RightClosed) }) {
        EXPECT_TRUE(all_pairs_monotone(*op, 4, 4)) << op->name();
        EXPECT_TRUE(exhaustive_monotonicity(*op, 4, 4).passed) << op->name();
    }
}

TEST(Schedules, Named)
{
    EXPECT_EQ(parse_budget_schedule("id")(17), 17u);
    EXPECT_EQ(parse_budget_schedule("div:6")(17), 2u);
    EXPECT_EQ(parse_budget_schedule("sqrt")(17), 4u);
    EXPECT_EQ(parse_budget_schedule("sqrt")(16), 4u);
    EXPECT_THROW(parse_budget_schedule("div:0"), InvalidSchedule);
    EXPECT_THROW(parse_budget_schedule("log"), InvalidSchedule);
}

TEST(Registry, ParsesExpressions)
{
    auto op = parse_enumeration_operator("concat(eq2ord_v1|fill:left, eq2ord_v2|fill:right)");
    EXPECT_EQ(op->input_signature(), Signature::Equivalence);
    EXPECT_EQ(op->output_signature(), Signature::LinearOrder);
    EXPECT_EQ(parse_enumeration_operator("rev(replicate:2)")->name(), "rev(replicate:2)");
    EXPECT_EQ(parse_enumeration_operator("replicate:2|rev")->output_signature(), Signature::LinearOrder);
    EXPECT_EQ(parse_enumeration_operator("(ord2eq)|class_multiplier")->name(), "ord2eq|class_multiplier");
}

TEST(Registry, Errors)
{
    EXPECT_THROW(parse_operator("bogus"), UnknownOperator);
    EXPECT_THROW(parse_operator("replicate:0"), InvalidSpec);
    EXPECT_THROW(parse_operator("replicate:x"), InvalidSpec);
    EXPECT_THROW(parse_operator("concat(replicate:1"), InvalidSpec);
    EXPECT_THROW(parse_operator("formula2eq"), InvalidSpec);
    EXPECT_THROW(parse_operator("concat(replicate:1,ord2eq)"), SignatureError);
    EXPECT_THROW(parse_enumeration_operator("phi_pair"), InvalidTarget);
    EXPECT_THROW(parse_operator("concat(phi_pair,replicate:1)"), InvalidSpec);
    EXPECT_TRUE(std::holds_alternative<ConstructionPtr>(parse_operator("phi_pair")));
    auto names = operator_names();
    EXPECT_NE(std::find(names.begin(), names.end(), "pair_formula2eq"), names.end());
}
