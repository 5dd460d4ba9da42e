/* vim: set sw=4 sts=4 et : */

#include <embedlab/monotonicity.hh>

#include <algorithm>
#include <map>
#include <random>
#include <unordered_map>

using std::size_t;
using std::vector;

namespace embedlab
{
    namespace
    {
        // closure of one output, built once and queried many times
        class Closure
        {
            public:
                explicit Closure(const FiniteDiagram & d) :
                    _diagram(&d)
                {
                    if (d.signature() == Signature::Equivalence)
                        _partition.emplace(d);
                    else if (d.is_total())
                        _order.emplace(d);
                }

                auto missing(const Closure & smaller) const -> std::optional<Fact>
                {
                    if (_partition && smaller._partition && _partition->refined_by(*smaller._partition))
                        return std::nullopt;
                    if (_order && smaller._order && _order->extends(*smaller._order))
                        return std::nullopt;
                    return first_missing(*smaller._diagram, *_diagram);
                }

            private:
                const FiniteDiagram * _diagram;
                std::optional<Partition> _partition;
                std::optional<OrderView> _order;
        };

        auto split_class(const vector<vector<Element>> & classes, size_t which, std::uint64_t mask)
            -> vector<vector<Element>>
        {
            vector<vector<Element>> result;
            for (size_t c = 0 ; c < classes.size() ; ++c) {
                if (c != which) {
                    result.push_back(classes[c]);
                    continue;
                }
                vector<Element> left, right;
                for (size_t i = 0 ; i < classes[c].size() ; ++i)
                    (((mask >> i) & 1) ? right : left).push_back(classes[c][i]);
                result.push_back(left);
                result.push_back(right);
            }
            return result;
        }

        auto without(const vector<vector<Element>> & classes, Element x) -> vector<vector<Element>>
        {
            vector<vector<Element>> result;
            for (auto & c : classes) {
                vector<Element> kept;
                for (auto y : c)
                    if (y != x)
                        kept.push_back(y);
                if (! kept.empty())
                    result.push_back(kept);
            }
            return result;
        }
    }

    auto orders_of(vector<Element> ids) -> vector<vector<Element>>
    {
        std::sort(ids.begin(), ids.end());
        vector<vector<Element>> result;
        do
            result.push_back(ids);
        while (std::next_permutation(ids.begin(), ids.end()));
        return result;
    }

    auto orders_on_subsets(size_t n) -> vector<vector<Element>>
    {
        vector<vector<Element>> result;
        for (std::uint64_t mask = 0 ; mask < (std::uint64_t{ 1 } << n) ; ++mask) {
            vector<Element> ids;
            for (size_t i = 0 ; i < n ; ++i)
                if ((mask >> i) & 1)
                    ids.push_back(i);
            for (auto & o : orders_of(ids))
                result.push_back(std::move(o));
        }
        return result;
    }

    auto partitions_on_subsets(size_t n) -> vector<vector<vector<Element>>>
    {
        // restricted growth strings over {0..n-1}, with label 0 meaning "absent"
        vector<vector<vector<Element>>> result;
        vector<size_t> label(n, 0);
        while (true) {
            vector<vector<Element>> classes;
            for (size_t i = 0 ; i < n ; ++i)
                if (label[i] != 0) {
                    if (classes.size() < label[i])
                        classes.resize(label[i]);
                    classes[label[i] - 1].push_back(i);
                }
            if (std::all_of(classes.begin(), classes.end(), [] (auto & c) { return ! c.empty(); }))
                result.push_back(classes);

            size_t i = n;
            while (i > 0) {
                --i;
                size_t highest = 0;
                for (size_t j = 0 ; j < i ; ++j)
                    highest = std::max(highest, label[j]);
                if (label[i] <= highest) {
                    ++label[i];
                    std::fill(label.begin() + i + 1, label.end(), 0);
                    break;
                }
                if (i == 0)
                    return result;
            }
            if (n == 0)
                return result;
        }
    }

    auto exhaustive_monotonicity(const EnumerationOperator & op, size_t max_size, Budget max_budget)
        -> MonotonicityReport
    {
        MonotonicityReport report;
        bool order_input = op.input_signature() == Signature::LinearOrder;

        vector<FiniteDiagram> inputs;
        std::map<std::string, size_t> index;
        vector<vector<size_t>> lower;    // covering predecessors of each input

        if (order_input) {
            auto orders = orders_on_subsets(max_size);
            for (auto & o : orders) {
                index.emplace(format_diagram_literal(chain_diagram(o)), inputs.size());
                inputs.push_back(chain_diagram(o));
            }
            for (auto & o : orders) {
                vector<size_t> below;
                for (size_t i = 0 ; i < o.size() ; ++i) {
                    auto smaller = o;
                    smaller.erase(smaller.begin() + i);
                    below.push_back(index.at(format_diagram_literal(chain_diagram(smaller))));
                }
                lower.push_back(std::move(below));
            }
        }
        else {
            auto partitions = partitions_on_subsets(max_size);
            auto key = [] (const vector<vector<Element>> & p) {
                return format_diagram_literal(FiniteDiagram(Signature::Equivalence, star_facts(p)));
            };
            for (auto & p : partitions) {
                index.emplace(key(p), inputs.size());
                inputs.emplace_back(Signature::Equivalence, star_facts(p));
            }
            for (auto & p : partitions) {
                vector<size_t> below;
                for (auto & c : p)
                    for (auto x : c)
                        below.push_back(index.at(key(without(p, x))));
                for (size_t c = 0 ; c < p.size() ; ++c)
                    for (std::uint64_t mask = 1 ; mask + 1 < (std::uint64_t{ 1 } << p[c].size()) ; ++mask)
                        if (! (mask & 1))    // each split once: first member stays left
                            below.push_back(index.at(key(split_class(p, c, mask))));
                lower.push_back(std::move(below));
            }
        }

        // budget-major, so only two budget layers of outputs are alive
        vector<FiniteDiagram> previous, current;
        vector<Closure> previous_closures, current_closures;
        for (Budget n = 0 ; n <= max_budget ; ++n) {
            current.clear();
            current_closures.clear();
            current.reserve(inputs.size());
            for (auto & input : inputs)
                current.push_back(evaluate(op, input, n));
            for (auto & output : current)
                current_closures.emplace_back(output);

            for (size_t b = 0 ; b < inputs.size() ; ++b) {
                auto check = [&] (const Closure & smaller, size_t a, Budget an) {
                    ++report.checks;
                    if (auto f = current_closures[b].missing(smaller)) {
                        report.passed = false;
                        report.counterexample = MonotonicityCounterexample{ inputs[a], inputs[b], an, n, *f };
                        return false;
                    }
                    return true;
                };
                if (n > 0 && ! check(previous_closures[b], b, n - 1))
                    return report;
                for (auto a : lower[b])
                    if (! check(current_closures[a], a, n))
                        return report;
            }
            std::swap(previous, current);
            std::swap(previous_closures, current_closures);
        }
        return report;
    }

    auto check_monotonicity(const EnumerationOperator & op, size_t trials, size_t max_size,
            std::uint64_t seed, Budget max_budget) -> MonotonicityReport
    {
        MonotonicityReport report;
        std::mt19937_64 rng(seed);
        auto below = [&] (std::uint64_t bound) { return std::uniform_int_distribution<std::uint64_t>(0, bound)(rng); };
        bool order_input = op.input_signature() == Signature::LinearOrder;

        for (size_t t = 0 ; t < trials ; ++t) {
            vector<Element> pool(2 * max_size + 1);
            for (size_t i = 0 ; i < pool.size() ; ++i)
                pool[i] = i;
            std::shuffle(pool.begin(), pool.end(), rng);
            pool.resize(below(max_size));

            vector<Element> kept;
            for (auto x : pool)
                if (below(2) != 0)
                    kept.push_back(x);

            FiniteDiagram alpha(op.input_signature()), beta(op.input_signature());
            if (order_input) {
                beta = chain_diagram(pool);
                alpha = beta.restricted_to(kept);
            }
            else {
                auto class_count = pool.empty() ? 1 : below(pool.size() - 1) + 1;
                vector<vector<Element>> classes(class_count), finer;
                for (auto x : pool)
                    classes[below(class_count - 1)].push_back(x);
                for (auto & c : classes) {
                    vector<Element> left, right;
                    for (auto x : c)
                        if (std::find(kept.begin(), kept.end(), x) != kept.end())
                            ((below(3) == 0) ? right : left).push_back(x);
                    finer.push_back(left);
                    finer.push_back(right);
                }
                beta = FiniteDiagram(Signature::Equivalence, star_facts(classes));
                alpha = FiniteDiagram(Signature::Equivalence, star_facts(finer));
            }

            auto n = below(max_budget);
            auto m = n + below(max_budget - n);
            ++report.checks;
            if (auto f = first_missing(evaluate(op, alpha, n), evaluate(op, beta, m))) {
                report.passed = false;
                report.counterexample = MonotonicityCounterexample{ alpha, beta, n, m, *f };
                return report;
            }
        }
        return report;
    }
}
