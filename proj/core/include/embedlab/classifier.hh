/* vim: set sw=4 sts=4 et : */

#ifndef EMBEDLAB_GUARD_CLASSIFIER_HH
#define EMBEDLAB_GUARD_CLASSIFIER_HH 1

#include <embedlab/run_log.hh>
#include <embedlab/stream.hh>

#include <nlohmann/json.hpp>

#include <optional>
#include <vector>

namespace embedlab
{
    struct ClassRecord
    {
        Element representative = 0;
        std::size_t size = 0;
        bool frozen = false;
        std::size_t last_growth = 0;

        auto operator== (const ClassRecord &) const -> bool = default;
    };

    struct ClassCensus
    {
        /// Sorted by representative (the least member).
        std::vector<ClassRecord> classes;
        bool from_annotations = false;

        auto frozen_of_size(std::size_t) const -> std::size_t;
        auto frozen_count() const -> std::size_t;
    };

    /**
     * If any record carries a "frozen" annotation, a class is frozen when
     * some member was flagged in each of the last `window` stages. Otherwise
     * a class is frozen when it has not grown (creation counts) in the last
     * `window` stages.
     */
    auto census(const RunLog &, std::size_t window) -> ClassCensus;

    /// Census of a stream, treated as a log of its stages.
    auto census(const StructureStream &, std::size_t window) -> ClassCensus;

    struct ElementTrace
    {
        Element element = 0;
        std::size_t entered_at = 0;
        std::size_t pred_changes = 0;
        std::size_t succ_changes = 0;
    };

    struct OrderFingerprint
    {
        std::vector<ElementTrace> elements;
        std::size_t window = 0;
        std::size_t horizon = 0;
        std::size_t pred_unstable = 0;
        std::size_t succ_unstable = 0;
        std::optional<Element> stable_least;
        std::optional<Element> stable_greatest;
        /// How many final stages the final least / greatest held that role.
        std::size_t least_held = 0;
        std::size_t greatest_held = 0;

        auto pred_unstable_elements() const -> std::vector<Element>;
        auto succ_unstable_elements() const -> std::vector<Element>;
    };

    /**
     * Immediate predecessor and successor changes after entry, per element.
     * An element is unstable with at least W changes. The final least
     * (greatest) element is stable when it held the role for at least
     * max(W, ceil(stages / 4)) stages.
     */
    auto fingerprint(const RunLog &, std::size_t W) -> OrderFingerprint;
    auto fingerprint(const StructureStream &, std::size_t W) -> OrderFingerprint;

    /// Exhaustive isomorphism test for domains of at most 8 elements.
    auto finite_iso(const FiniteDiagram &, const FiniteDiagram &) -> bool;

    struct Verdict
    {
        bool consistent = false;
        std::string claim;
        std::string reason;
        nlohmann::json evidence;
    };

    /// window = 0 picks max(W, ceil(stages / 4)) for the census.
    auto consistency_verdict(const RunLog &, const CanonicalSpec & claimed, std::size_t W, std::size_t window = 0) -> Verdict;

    auto log_of(const StructureStream &) -> RunLog;

    auto census_json(const ClassCensus &) -> nlohmann::json;
    auto fingerprint_json(const OrderFingerprint &) -> nlohmann::json;
    auto verdict_json(const Verdict &) -> nlohmann::json;
}

#endif
