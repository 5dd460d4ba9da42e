/* vim: set sw=4 sts=4 et : */
#ifndef EMBEDLAB_GUARD_TESTS_ORACLES_HH
#define EMBEDLAB_GUARD_TESTS_ORACLES_HH 1

// Slow reference computations for the classifier, rebuilt stage by stage
// from whole diagrams.

#include <embedlab/diagram.hh>
#include <embedlab/run_log.hh>

#include <algorithm>
#include <map>
#include <optional>
#include <vector>

namespace embedlab::oracle
{
    struct ClassHistory
    {
        std::size_t size = 0;
        std::size_t last_growth = 0;
        bool frozen = false;
    };

    /// Classes of the final stage keyed by least member, frozen when not
    /// grown in the last `window` stages.
    inline auto growth_census(const RunLog & log, std::size_t window) -> std::map<Element, ClassHistory>
    {
        std::map<Element, ClassHistory> result;
        auto stages = log.stage_count();
        if (stages == 0)
            return result;
        Partition last(log.final_diagram());
        std::map<Element, Element> least_of;
        for (auto & c : last.classes()) {
            auto least = *std::min_element(c.begin(), c.end());
            least_of[last.representative(least)] = least;
            result[least].size = c.size();
        }

        std::map<Element, std::size_t> seen;
        for (std::size_t s = 0 ; s < stages ; ++s) {
            std::map<Element, std::size_t> present;
            auto d = log.stage(s);
            for (auto x : d.domain())
                ++present[least_of.at(last.representative(x))];
            for (auto & [least, n] : present)
                if (n > seen[least]) {
                    seen[least] = n;
                    result[least].last_growth = s;
                }
        }
        for (auto & [_, h] : result)
            h.frozen = h.last_growth + window <= stages - 1;
        return result;
    }

    inline auto frozen_of_size(const std::map<Element, ClassHistory> & c, std::size_t size) -> std::size_t
    {
        return std::count_if(c.begin(), c.end(), [&] (auto & kv) { return kv.second.frozen && kv.second.size == size; });
    }

    struct Neighbours
    {
        std::size_t pred_changes = 0;
        std::size_t succ_changes = 0;
    };

    struct Fingerprint
    {
        std::map<Element, Neighbours> changes;
        std::size_t least_held = 0;
        std::size_t greatest_held = 0;
        std::optional<Element> least;
        std::optional<Element> greatest;

        auto unstable(std::size_t W, bool pred) const -> std::size_t
        {
            return std::count_if(changes.begin(), changes.end(), [&] (auto & kv) {
                    return (pred ? kv.second.pred_changes : kv.second.succ_changes) >= W; });
        }
    };

    inline auto fingerprint(const RunLog & log) -> Fingerprint
    {
        Fingerprint fp;
        std::map<Element, std::optional<Element>> pred, succ;
        for (std::size_t s = 0 ; s < log.stage_count() ; ++s) {
            auto order = OrderView(log.stage(s)).order();
            for (std::size_t i = 0 ; i < order.size() ; ++i) {
                std::optional<Element> p, q;
                if (i > 0)
                    p = order[i - 1];
                if (i + 1 < order.size())
                    q = order[i + 1];
                auto x = order[i];
                if (! pred.contains(x)) {
                    pred[x] = p;
                    succ[x] = q;
                    fp.changes[x];
                    continue;
                }
                fp.changes[x].pred_changes += pred[x] != p;
                fp.changes[x].succ_changes += succ[x] != q;
                pred[x] = p;
                succ[x] = q;
            }
            std::optional<Element> lo, hi;
            if (! order.empty()) {
                lo = order.front();
                hi = order.back();
            }
            fp.least_held = (lo && lo == fp.least) ? fp.least_held + 1 : (lo ? 1 : 0);
            fp.greatest_held = (hi && hi == fp.greatest) ? fp.greatest_held + 1 : (hi ? 1 : 0);
            fp.least = lo;
            fp.greatest = hi;
        }
        return fp;
    }
}

#endif
