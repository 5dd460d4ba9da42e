/* vim: set sw=4 sts=4 et : */

#ifndef EMBEDLAB_GUARD_MONOTONICITY_HH
#define EMBEDLAB_GUARD_MONOTONICITY_HH 1

#include <embedlab/operator.hh>

#include <cstdint>
#include <optional>
#include <vector>

namespace embedlab
{
    struct MonotonicityCounterexample
    {
        FiniteDiagram alpha;
        FiniteDiagram beta;
        Budget n = 0;
        Budget m = 0;
        Fact missing;
    };

    struct MonotonicityReport
    {
        bool passed = true;
        std::size_t checks = 0;
        std::optional<MonotonicityCounterexample> counterexample;
    };

    /// Random pairs alpha <= beta with |beta| <= max_size and budgets
    /// n <= m <= max_budget; stops at the first counterexample.
    auto check_monotonicity(const EnumerationOperator &, std::size_t trials, std::size_t max_size,
            std::uint64_t seed, Budget max_budget = 16) -> MonotonicityReport;

    /**
     * Every input diagram on a subset of {0, ..., max_size - 1} (total
     * orders, or partitions) and every budget up to max_budget. Checks all
     * covering steps: one more element, a merge of two classes, or one more
     * unit of budget. Inclusion is transitive, so this covers every pair.
     */
    auto exhaustive_monotonicity(const EnumerationOperator &, std::size_t max_size, Budget max_budget)
        -> MonotonicityReport;

    /// All total orders on all subsets of {0, ..., n - 1}, as element lists.
    auto orders_on_subsets(std::size_t n) -> std::vector<std::vector<Element>>;

    /// All total orders of exactly the given elements.
    auto orders_of(std::vector<Element> ids) -> std::vector<std::vector<Element>>;

    /// All set partitions of all subsets of {0, ..., n - 1}.
    auto partitions_on_subsets(std::size_t n) -> std::vector<std::vector<std::vector<Element>>>;
}

#endif
