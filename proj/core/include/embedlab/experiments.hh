/* vim: set sw=4 sts=4 et : */

#ifndef EMBEDLAB_GUARD_EXPERIMENTS_HH
#define EMBEDLAB_GUARD_EXPERIMENTS_HH 1

#include <embedlab/sigma2.hh>

#include <nlohmann/json.hpp>

#include <cstdint>
#include <memory>
#include <set>
#include <string>
#include <vector>

namespace embedlab
{
    /// exists x0 . forall y0 . not lt y0 x0
    auto least_element_sentence() -> std::shared_ptr<const Sigma2Sentence>;

    /// exists x0 . forall y0 . not lt x0 y0
    auto greatest_element_sentence() -> std::shared_ptr<const Sigma2Sentence>;

    struct ExperimentResult
    {
        std::string id;
        nlohmann::json config;
        bool passed = false;
        nlohmann::json evidence;
        double seconds = 0;
    };

    struct CriterionResult
    {
        int number = 0;
        std::string title;
        bool passed = false;
        std::vector<ExperimentResult> experiments;
        double seconds = 0;
    };

    struct SuiteOptions
    {
        std::uint64_t seed = 7;
        /// Criteria 1 to 8; empty means all.
        std::set<int> only;
    };

    auto run_criterion(int number, const SuiteOptions &) -> CriterionResult;
    auto run_suite(const SuiteOptions &) -> std::vector<CriterionResult>;

    /// FNV-1a 64 of the canonical JSON serialization, as 16 hex digits.
    auto config_digest(const nlohmann::json &) -> std::string;

    /// One record per experiment and one per criterion; no timings.
    auto suite_jsonl(const std::vector<CriterionResult> &, const SuiteOptions &) -> std::string;

    /// Human-readable summary with wall times.
    auto suite_table(const std::vector<CriterionResult> &) -> std::string;
}

#endif
