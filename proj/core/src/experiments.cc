/* vim: set sw=4 sts=4 et : */

#include <embedlab/experiments.hh>
#include <embedlab/classifier.hh>
#include <embedlab/class_operators.hh>
#include <embedlab/combinators.hh>
#include <embedlab/constructions.hh>
#include <embedlab/equivalence_to_order.hh>
#include <embedlab/errors.hh>
#include <embedlab/forcing.hh>
#include <embedlab/monotonicity.hh>
#include <embedlab/order_to_equivalence.hh>
#include <embedlab/pairing.hh>
#include <embedlab/registry.hh>
#include <embedlab/run_log.hh>
#include <embedlab/stream.hh>

#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>

using nlohmann::json;
using std::size_t;
using std::string;
using std::vector;

namespace embedlab
{
    namespace
    {
        constexpr size_t seeded_runs = 20;

        using Clock = std::chrono::steady_clock;

        auto seconds_since(Clock::time_point start) -> double
        {
            return std::chrono::duration<double>(Clock::now() - start).count();
        }

        auto timed(string id, json config, const std::function<bool (json &)> & body) -> ExperimentResult
        {
            ExperimentResult result;
            result.id = std::move(id);
            result.config = std::move(config);
            auto start = Clock::now();
            try {
                result.passed = body(result.evidence);
            }
            catch (const std::exception & e) {
                result.passed = false;
                result.evidence["error"] = e.what();
            }
            result.seconds = seconds_since(start);
            return result;
        }

        auto spec_of(Family family, std::uint64_t k, PolicyKind kind, std::uint64_t seed = 0) -> CanonicalSpec
        {
            return CanonicalSpec{ family, k, Policy{ kind, seed } };
        }

        auto spec_json(const CanonicalSpec & spec) -> json
        {
            return spec.describe();
        }

        /// The element stage s adds over stage s - 1; nullopt unless exactly one.
        auto added_element(const FiniteDiagram & before, const FiniteDiagram & after) -> std::optional<Element>
        {
            std::optional<Element> found;
            for (auto x : after.domain())
                if (! before.has_element(x)) {
                    if (found)
                        return std::nullopt;
                    found = x;
                }
            return found;
        }

        // Kleene-Brouwer comparison written from the definition: a proper
        // extension precedes its prefix, otherwise the first difference decides.
        auto kb_reference(const vector<Element> & a, const vector<Element> & b) -> bool
        {
            for (size_t i = 0 ; ; ++i) {
                if (i == a.size() && i == b.size())
                    return false;
                if (i == b.size())
                    return true;
                if (i == a.size())
                    return false;
                if (a[i] != b[i])
                    return a[i] < b[i];
            }
        }

        auto bitmask_tuples(const FiniteDiagram & alpha, size_t interior, size_t last) -> vector<vector<Element>>
        {
            Partition p(alpha);
            auto & dom = alpha.domain();
            vector<vector<Element>> out;
            for (std::uint64_t mask = 1 ; mask < (std::uint64_t(1) << dom.size()) ; ++mask) {
                vector<Element> t;
                for (size_t i = 0 ; i < dom.size() ; ++i)
                    if (mask & (std::uint64_t(1) << i))
                        t.push_back(dom[i]);
                bool ok = p.class_size(t.back()) >= last;
                for (size_t i = 0 ; ok && i + 1 < t.size() ; ++i)
                    ok = p.class_size(t[i]) >= interior;
                if (ok)
                    out.push_back(t);
            }
            return out;
        }

        // ---- criterion 1

        auto shipped_operators() -> vector<std::pair<string, OperatorPtr>>
        {
            RegistryContext ctx;
            ctx.phi = least_element_sentence();
            ctx.psi = greatest_element_sentence();
            vector<string> exprs = {
                "replicate:1", "replicate:2", "replicate:3", "rev(replicate:2)",
                "concat(replicate:1,replicate:2)",
                "replicate:2|fill:left", "replicate:1|fill:right",
                "ord2eq", "eq2ord_v1", "eq2ord_v2", "class_multiplier",
                "formula2eq", "formula2eq_dual", "pair_formula2eq",
                "ord2eq|class_multiplier", "union(ord2eq,ord2eq)",
                "concat(eq2ord_v1|fill:left,eq2ord_v2|fill:right)",
                "ord2eq|eq2ord_v1", "rev(eq2ord_v2)"
            };
            vector<std::pair<string, OperatorPtr>> ops;
            for (auto & e : exprs)
                ops.emplace_back(e, parse_enumeration_operator(e, ctx));
            return ops;
        }

        auto criterion_monotonicity(const SuiteOptions &) -> vector<ExperimentResult>
        {
            vector<ExperimentResult> out;
            for (auto & [expr, op] : shipped_operators()) {
                json config{ { "op", expr }, { "max_size", 6 }, { "max_budget", 16 } };
                out.push_back(timed("monotonicity/" + expr, config, [&, op = op] (json & ev) {
                    auto report = exhaustive_monotonicity(*op, 6, 16);
                    ev["checks"] = report.checks;
                    if (report.counterexample) {
                        auto & c = *report.counterexample;
                        ev["counterexample"] = json{
                            { "alpha", format_diagram_literal(c.alpha) }, { "beta", format_diagram_literal(c.beta) },
                            { "n", c.n }, { "m", c.m }, { "missing", to_string(c.missing) } };
                    }
                    return report.passed;
                }));
            }
            return out;
        }

        // ---- criterion 2

        auto criterion_trichotomy(const SuiteOptions &) -> vector<ExperimentResult>
        {
            vector<ExperimentResult> out;
            for (std::uint64_t q = 1 ; q <= 3 ; ++q) {
                json config{ { "op", "replicate:" + std::to_string(q) }, { "max_alpha", 4 }, { "ext_bound", 3 } };
                out.push_back(timed("trichotomy/replicate:" + std::to_string(q), config, [q] (json & ev) {
                    auto report = trichotomy_scan(replicate(q), 4, 3, 0);
                    ev["alphas"] = report.alphas;
                    ev["pairs"] = report.pairs;
                    ev["extensions"] = report.extensions;
                    ev["violations"] = report.violations;
                    // the forced order must list copies by source rank, copy index first
                    size_t bad = 0;
                    for (auto & perm : report.permutations) {
                        auto source = OrderView(perm.alpha).order();
                        vector<Element> expected;
                        for (std::uint64_t c = 0 ; c < q ; ++c)
                            for (auto x : source)
                                expected.push_back(TaggedElement{ c, x }.encoded());
                        if (perm.order != expected)
                            ++bad;
                    }
                    ev["unexpected_permutations"] = bad;
                    return report.violations.empty() && bad == 0 && report.alphas > 0;
                }));
            }
            return out;
        }

        // ---- criterion 3

        auto criterion_eq2ord(const SuiteOptions &) -> vector<ExperimentResult>
        {
            vector<ExperimentResult> out;
            for (int version = 1 ; version <= 2 ; ++version) {
                string name = version == 1 ? "eq2ord_v1" : "eq2ord_v2";
                json config{ { "op", name }, { "max_elements", 5 }, { "ids", 7 }, { "budget", 28 } };
                out.push_back(timed("eq2ord_oracle/" + name, config, [version] (json & ev) {
                    auto op = version == 1 ? eq2ord_v1() : eq2ord_v2();
                    size_t instances = 0, mismatches = 0;
                    for (auto & classes : partitions_on_subsets(7)) {
                        size_t n = 0;
                        for (auto & c : classes)
                            n += c.size();
                        if (n > 5)
                            continue;
                        ++instances;
                        auto alpha = partition_diagram(classes);
                        auto expected = bitmask_tuples(alpha, version == 1 ? 2 : 3, version == 1 ? 1 : 2);
                        std::stable_sort(expected.begin(), expected.end(), kb_reference);
                        if (version == 2)
                            std::reverse(expected.begin(), expected.end());
                        auto output = evaluate(*op, alpha, 28);
                        vector<vector<Element>> got;
                        if (! output.empty())
                            for (auto x : OrderView(output).order())
                                got.push_back(decode_increasing_tuple(x));
                        if (got != expected)
                            ++mismatches;
                    }
                    ev["instances"] = instances;
                    ev["mismatches"] = mismatches;

                    // classes {0, 1}, {2}
                    bool example_ok = true;
                    if (version == 1) {
                        auto alpha = partition_diagram({ { 0, 1 }, { 2 } });
                        vector<vector<Element>> expected = { { 0, 1, 2 }, { 0, 1 }, { 0, 2 }, { 0 }, { 1, 2 }, { 1 }, { 2 } };
                        vector<vector<Element>> got;
                        for (auto x : OrderView(evaluate(*op, alpha, 28)).order())
                            got.push_back(decode_increasing_tuple(x));
                        example_ok = got == expected;
                        ev["worked_example"] = example_ok;
                    }
                    return mismatches == 0 && example_ok && instances == 1842;
                }));
            }
            return out;
        }

        // ---- criterion 4

        auto criterion_ord2eq(const SuiteOptions & options) -> vector<ExperimentResult>
        {
            vector<ExperimentResult> out;
            for (auto family : { Family::OnePlusEta, Family::EtaPlusOne })
                for (size_t i = 0 ; i < seeded_runs ; ++i) {
                    auto spec = spec_of(family, 1, PolicyKind::Permuted, options.seed + i);
                    json config{ { "op", "ord2eq" }, { "input", spec_json(spec) }, { "stages", 100 }, { "window", 30 } };
                    out.push_back(timed("ord2eq/" + spec.describe(), config, [spec, family] (json & ev) {
                        auto log = run(ord2eq(), generate(spec, 100), 100);
                        auto c = census(log, 30);
                        ev["frozen_size_1"] = c.frozen_of_size(1);
                        ev["frozen_size_2"] = c.frozen_of_size(2);
                        ev["frozen"] = c.frozen_count();
                        if (family == Family::OnePlusEta)
                            return c.frozen_of_size(1) == 1 && c.frozen_of_size(2) == 0;
                        return c.frozen_of_size(1) == 0 && c.frozen_of_size(2) == 1;
                    }));
                }
            return out;
        }

        // ---- criterion 5

        struct PairTargets
        {
            StructureStream a, b;
        };

        auto phi_pair_run(const PairTargets & targets, const CanonicalSpec & spec, bool omega_side, bool monotone,
                json & ev) -> bool
        {
            constexpr size_t stages = 64;
            auto input = generate(spec, stages);
            auto log = run(phi_pair(StagePair{ targets.a, targets.b }), input, stages);

            vector<string> building;
            vector<size_t> t;
            for (auto & r : log.records()) {
                building.push_back(r.annotations.at("building").get<string>());
                t.push_back(r.annotations.at("t").get<size_t>());
            }
            size_t switches = log.records().back().annotations.at("switches").get<size_t>();
            size_t settled = 0;
            for (size_t s = 1 ; s < stages ; ++s)
                if (building[s] != building[s - 1])
                    settled = s;

            // the stage by which the guess must have settled, read off the input
            auto final_input = OrderView(input.final_stage());
            Element extremum = omega_side ? *final_input.least() : *final_input.greatest();
            size_t bound = 0;
            while (! input.stage(bound).has_element(extremum))
                ++bound;
            string right = omega_side ? "A" : "B";
            if (building[bound] != right) {
                OrderView at(input.stage(bound));
                Element edge = omega_side ? *at.greatest() : *at.least();
                size_t s = bound + 1;
                for ( ; s < stages ; ++s) {
                    OrderView now(input.stage(s));
                    Element e = omega_side ? *now.greatest() : *now.least();
                    if (e != edge)
                        break;
                }
                bound = s;
            }

            // after settling, one new output element per stage at the target's rank
            auto & target = omega_side ? targets.a : targets.b;
            size_t growth_violations = 0;
            for (size_t s = settled + 1 ; s < stages ; ++s) {
                auto before = log.stage(s - 1), after = log.stage(s);
                auto x = added_element(before, after);
                if (t[s] != t[s - 1] + 1 || ! x || after.size() != t[s] + 1) {
                    ++growth_violations;
                    continue;
                }
                auto y = added_element(target.stage(t[s] - 1), target.stage(t[s]));
                if (! y || OrderView(after).rank(*x) != OrderView(target.stage(t[s])).rank(*y))
                    ++growth_violations;
            }

            ev["final"] = building.back();
            ev["settled_at"] = settled;
            ev["settle_bound"] = bound;
            ev["switches"] = switches;
            ev["growth_violations"] = growth_violations;
            bool ok = building.back() == right && settled <= bound && growth_violations == 0;
            if (monotone)
                ok = ok && switches <= 2;
            return ok;
        }

        auto criterion_phi_pair(const SuiteOptions & options) -> vector<ExperimentResult>
        {
            auto targets = std::make_shared<PairTargets>(PairTargets{
                generate(spec_of(Family::OmegaK, 2, PolicyKind::Fair), 128),
                generate(spec_of(Family::OmegaStarK, 2, PolicyKind::Fair), 128) });
            vector<ExperimentResult> out;
            auto add = [&] (const CanonicalSpec & spec, bool omega_side, bool monotone) {
                json config{ { "op", "phi_pair" }, { "targets", { "omega_k:2", "omega_star_k:2" } },
                    { "input", spec_json(spec) }, { "stages", 64 } };
                out.push_back(timed("phi_pair/" + spec.describe(), config, [=] (json & ev) {
                    return phi_pair_run(*targets, spec, omega_side, monotone, ev);
                }));
            };
            for (size_t i = 0 ; i < seeded_runs ; ++i)
                add(spec_of(Family::Omega, 1, PolicyKind::Permuted, options.seed + i), true, false);
            for (size_t i = 0 ; i < seeded_runs ; ++i)
                add(spec_of(Family::OmegaStar, 1, PolicyKind::Permuted, options.seed + i), false, false);
            add(spec_of(Family::Omega, 1, PolicyKind::Ascending), true, true);
            add(spec_of(Family::OmegaStar, 1, PolicyKind::Descending), false, true);
            return out;
        }

        // ---- criterion 6

        auto criterion_phi_sigma2(const SuiteOptions & options) -> vector<ExperimentResult>
        {
            vector<ExperimentResult> out;
            for (auto family : { Family::OmegaK, Family::OmegaStarK })
                for (size_t i = 0 ; i < seeded_runs ; ++i) {
                    auto spec = spec_of(family, 2, PolicyKind::Permuted, options.seed + i);
                    json config{ { "op", "phi_sigma2" }, { "phi", "least" }, { "psi", "greatest" },
                        { "input", spec_json(spec) }, { "stages", 100 } };
                    out.push_back(timed("phi_sigma2/" + spec.describe(), config, [spec, family] (json & ev) {
                        auto log = run(phi_sigma2(least_element_sentence(), greatest_element_sentence()),
                                generate(spec, 100), 100);
                        string want = family == Family::OmegaK ? "top" : "bottom";
                        size_t suffix = 0;
                        for (auto r = log.records().rbegin() ; r != log.records().rend() ; ++r) {
                            if (r->annotations.at("placement").get<string>() != want)
                                break;
                            ++suffix;
                        }
                        ev["placement"] = want;
                        ev["suffix"] = suffix;
                        return suffix >= 50;
                    }));
                }
            return out;
        }

        // ---- criterion 7

        auto criterion_replicate(const SuiteOptions &) -> vector<ExperimentResult>
        {
            vector<ExperimentResult> out;
            vector<std::pair<std::uint64_t, std::uint64_t>> cases = { { 1, 2 }, { 2, 2 }, { 2, 3 }, { 3, 2 } };
            for (auto [k, q] : cases)
                for (auto family : { Family::OmegaK, Family::OmegaStarK }) {
                    auto spec = spec_of(family, k, PolicyKind::Fair);
                    string op = "replicate:" + std::to_string(q);
                    json config{ { "op", op }, { "input", spec_json(spec) }, { "stages", 300 }, { "W", 5 } };
                    out.push_back(timed("divisibility/" + op + "/" + spec.describe(), config, [=] (json & ev) {
                        auto log = run(replicate(q), generate(spec, 300), 300);
                        auto fp = fingerprint(log, 5);
                        ev["pred_unstable"] = fp.pred_unstable;
                        ev["succ_unstable"] = fp.succ_unstable;
                        ev["stable_least"] = fp.stable_least.has_value();
                        ev["stable_greatest"] = fp.stable_greatest.has_value();
                        ev["expected"] = k * q - 1;
                        if (family == Family::OmegaK)
                            return fp.pred_unstable == k * q - 1 && fp.stable_least.has_value();
                        return fp.succ_unstable == k * q - 1 && fp.stable_greatest.has_value();
                    }));
                }
            return out;
        }

        // ---- criterion 8

        auto criterion_pipelines(const SuiteOptions &) -> vector<ExperimentResult>
        {
            vector<ExperimentResult> out;
            constexpr size_t stages = 100;
            string pair_schedule = "div:8", concat_schedule = "div:6";

            for (std::uint64_t k = 1 ; k <= 3 ; ++k)
                for (auto family : { Family::OmegaK, Family::OmegaStarK }) {
                    auto spec = spec_of(family, k, PolicyKind::Fair);
                    bool omega_side = family == Family::OmegaK;
                    auto claim = spec_of(Family::EHatK, omega_side ? 1 : 2, PolicyKind::Fair);
                    auto other = spec_of(Family::EHatK, omega_side ? 2 : 1, PolicyKind::Fair);
                    json config{ { "op", "pair_formula2eq" }, { "phi", "least" }, { "psi", "greatest" },
                        { "input", spec_json(spec) }, { "stages", stages }, { "schedule", pair_schedule },
                        { "claim", claim.name() } };
                    out.push_back(timed("pair_formula2eq/" + spec.describe(), config, [=] (json & ev) {
                        auto op = pair_formula2eq(least_element_sentence(), greatest_element_sentence());
                        auto log = run(op, generate(spec, stages), stages, parse_budget_schedule(pair_schedule));
                        auto mine = consistency_verdict(log, claim, 5), theirs = consistency_verdict(log, other, 5);
                        ev["verdict"] = verdict_json(mine);
                        ev["other_side"] = verdict_json(theirs);
                        return mine.consistent && ! theirs.consistent;
                    }));
                }

            string expr = "concat(eq2ord_v1|fill:left,eq2ord_v2|fill:right)";
            for (std::uint64_t k = 1 ; k <= 2 ; ++k) {
                auto spec = spec_of(Family::EHatK, k, PolicyKind::Fair);
                auto claim = spec_of(k == 1 ? Family::OnePlusEta : Family::EtaPlusOne, 1, PolicyKind::Fair);
                json config{ { "op", expr }, { "input", spec_json(spec) }, { "stages", stages },
                    { "schedule", concat_schedule }, { "W", 5 }, { "claim", claim.name() } };
                out.push_back(timed("endpoints/" + spec.describe(), config, [=] (json & ev) {
                    auto input = generate(spec, stages);
                    auto c = census(input, 0);
                    ev["input_census"] = json{ { "frozen", c.frozen_count() }, { "frozen_of_size_k", c.frozen_of_size(k) } };
                    auto log = run(parse_operator(expr), input, stages, parse_budget_schedule(concat_schedule));
                    auto fp = fingerprint(log, 5);
                    auto verdict = consistency_verdict(log, claim, 5);
                    ev["stable_least"] = fp.stable_least.has_value();
                    ev["stable_greatest"] = fp.stable_greatest.has_value();
                    ev["least_held"] = fp.least_held;
                    ev["greatest_held"] = fp.greatest_held;
                    ev["horizon"] = fp.horizon;
                    ev["verdict"] = verdict_json(verdict);
                    bool endpoints = k == 1
                        ? (fp.stable_least && ! fp.stable_greatest)
                        : (! fp.stable_least && fp.stable_greatest);
                    return endpoints && verdict.consistent;
                }));
            }
            return out;
        }

        struct CriterionEntry
        {
            int number;
            const char * title;
            vector<ExperimentResult> (* runner)(const SuiteOptions &);
        };

        const CriterionEntry criteria[] = {
            { 1, "monotonicity", criterion_monotonicity },
            { 2, "forcing trichotomy", criterion_trichotomy },
            { 3, "eq2ord oracle", criterion_eq2ord },
            { 4, "ord2eq limit", criterion_ord2eq },
            { 5, "phi_pair", criterion_phi_pair },
            { 6, "phi_sigma2", criterion_phi_sigma2 },
            { 7, "divisibility", criterion_replicate },
            { 8, "top-pair pipeline", criterion_pipelines }
        };
    }

    auto least_element_sentence() -> std::shared_ptr<const Sigma2Sentence>
    {
        static auto s = std::make_shared<const Sigma2Sentence>(parse_sigma2(
                    "exists 1\ndisjunct 0\nforall 1: not lt y0 x0\n"));
        return s;
    }

    auto greatest_element_sentence() -> std::shared_ptr<const Sigma2Sentence>
    {
        static auto s = std::make_shared<const Sigma2Sentence>(parse_sigma2(
                    "exists 1\ndisjunct 0\nforall 1: not lt x0 y0\n"));
        return s;
    }

    auto run_criterion(int number, const SuiteOptions & options) -> CriterionResult
    {
        for (auto & entry : criteria)
            if (entry.number == number) {
                CriterionResult result;
                result.number = number;
                result.title = entry.title;
                auto start = Clock::now();
                result.experiments = entry.runner(options);
                result.seconds = seconds_since(start);
                result.passed = ! result.experiments.empty();
                for (auto & e : result.experiments)
                    result.passed = result.passed && e.passed;
                return result;
            }
        throw InvalidSpec("no criterion " + std::to_string(number));
    }

    auto run_suite(const SuiteOptions & options) -> vector<CriterionResult>
    {
        vector<CriterionResult> results;
        for (auto & entry : criteria)
            if (options.only.empty() || options.only.count(entry.number))
                results.push_back(run_criterion(entry.number, options));
        return results;
    }

    auto config_digest(const json & config) -> string
    {
        std::uint64_t h = 14695981039346656037ull;
        for (unsigned char c : config.dump()) {
            h ^= c;
            h *= 1099511628211ull;
        }
        char buf[17];
        std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
        return buf;
    }

    auto suite_jsonl(const vector<CriterionResult> & results, const SuiteOptions & options) -> string
    {
        std::ostringstream out;
        for (auto & c : results) {
            for (auto & e : c.experiments) {
                json config = e.config;
                config["seed"] = options.seed;
                json record{ { "v", 1 }, { "criterion", c.number }, { "experiment", e.id },
                    { "digest", config_digest(config) }, { "config", config },
                    { "verdict", e.passed ? "PASS" : "FAIL" }, { "evidence", e.evidence } };
                out << record.dump() << '\n';
            }
            json summary{ { "v", 1 }, { "criterion", c.number }, { "title", c.title },
                { "experiments", c.experiments.size() }, { "verdict", c.passed ? "PASS" : "FAIL" } };
            out << summary.dump() << '\n';
        }
        return out.str();
    }

    auto suite_table(const vector<CriterionResult> & results) -> string
    {
        std::ostringstream out;
        char line[160];
        std::snprintf(line, sizeof line, "%-3s %-20s %-6s %8s %9s\n", "#", "criterion", "result", "passed", "seconds");
        out << line;
        for (auto & c : results) {
            size_t passed = 0;
            for (auto & e : c.experiments)
                passed += e.passed;
            string ratio = std::to_string(passed) + "/" + std::to_string(c.experiments.size());
            std::snprintf(line, sizeof line, "%-3d %-20s %-6s %8s %9.2f\n", c.number, c.title.c_str(),
                    c.passed ? "PASS" : "FAIL", ratio.c_str(), c.seconds);
            out << line;
            for (auto & e : c.experiments)
                if (! e.passed) {
                    out << "    failed: " << e.id << " " << e.evidence.dump() << '\n';
                }
        }
        return out.str();
    }
}
