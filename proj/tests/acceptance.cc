/* vim: set sw=4 sts=4 et : */

// Acceptance run: the CLI suite twice, then an independent recomputation of
// every criterion. One PASS/FAIL line per criterion; exit status 1 on any
// failure.

#include "oracles.hh"

#include <embedlab/classifier.hh>
#include <embedlab/combinators.hh>
#include <embedlab/constructions.hh>
#include <embedlab/equivalence_to_order.hh>
#include <embedlab/experiments.hh>
#include <embedlab/order_to_equivalence.hh>
#include <embedlab/registry.hh>
#include <embedlab/run_log.hh>
#include <embedlab/stream.hh>

#include <nlohmann/json.hpp>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <sys/wait.h>

namespace fs = std::filesystem;
using namespace embedlab;
using nlohmann::json;
using std::size_t;
using std::string;
using std::vector;

namespace
{
    struct Check
    {
        bool ok = true;
        string detail;

        auto fail(const string & why) -> void
        {
            if (ok)
                detail = why;
            ok = false;
        }
    };

    struct SuiteReport
    {
        std::map<int, json> summary;
        std::map<int, vector<json>> experiments;
    };

    auto slurp(const fs::path & p) -> string
    {
        std::ifstream in(p, std::ios::binary);
        std::stringstream s;
        s << in.rdbuf();
        return s.str();
    }

    auto run_cli(const string & args) -> int
    {
        auto command = string(EMBEDLAB_CLI) + " " + args;
        int status = std::system(command.c_str());
        return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    }

    auto parse_report(const string & text) -> SuiteReport
    {
        SuiteReport r;
        std::istringstream in(text);
        for (string line ; std::getline(in, line) ; ) {
            auto j = json::parse(line);
            int c = j.at("criterion");
            if (j.contains("experiment"))
                r.experiments[c].push_back(j);
            else
                r.summary[c] = j;
        }
        return r;
    }

    // "one_plus_eta/permuted:7" or "omega_k:2/fair"
    auto input_spec(const string & text) -> CanonicalSpec
    {
        auto slash = text.find('/');
        auto spec = parse_claim(text.substr(0, slash));
        auto policy = text.substr(slash + 1);
        std::uint64_t seed = 0;
        if (auto colon = policy.find(':') ; colon != string::npos) {
            seed = std::stoull(policy.substr(colon + 1));
            policy = policy.substr(0, colon);
        }
        spec.policy = parse_policy(policy, seed);
        return spec;
    }

    auto sentences() -> RegistryContext
    {
        RegistryContext ctx;
        ctx.phi = least_element_sentence();
        ctx.psi = greatest_element_sentence();
        return ctx;
    }

    auto chain_of(const vector<Element> & order) -> FiniteDiagram
    {
        vector<Fact> facts;
        for (auto x : order)
            facts.push_back(Fact::el(x));
        for (size_t i = 0 ; i + 1 < order.size() ; ++i)
            facts.push_back(Fact::lt(order[i], order[i + 1]));
        return FiniteDiagram(Signature::LinearOrder, facts);
    }

    auto classes_of(const std::map<Element, std::uint64_t> & label) -> FiniteDiagram
    {
        vector<Fact> facts;
        std::map<std::uint64_t, Element> first;
        for (auto & [x, l] : label) {
            facts.push_back(Fact::el(x));
            auto [it, fresh] = first.emplace(l, x);
            if (! fresh)
                facts.push_back(Fact::sim(it->second, x));
        }
        return FiniteDiagram(Signature::Equivalence, facts);
    }

    // ---- criterion 1: sampled alpha below beta, budgets n <= m

    auto check_monotonicity(const SuiteReport & r) -> Check
    {
        Check c;
        auto ctx = sentences();
        std::mt19937_64 rng(7);
        size_t pairs = 0;
        for (auto & e : r.experiments.at(1)) {
            string expr = e.at("config").at("op");
            auto op = parse_enumeration_operator(expr, ctx);
            bool orders = op->input_signature() == Signature::LinearOrder;
            for (int trial = 0 ; trial < 300 ; ++trial) {
                vector<Element> ids(8);
                std::iota(ids.begin(), ids.end(), 0);
                std::shuffle(ids.begin(), ids.end(), rng);
                ids.resize(rng() % 7);
                vector<bool> keep(ids.size());
                for (size_t i = 0 ; i < ids.size() ; ++i)
                    keep[i] = rng() % 3 != 0;

                FiniteDiagram alpha, beta;
                if (orders) {
                    vector<Element> sub;
                    for (size_t i = 0 ; i < ids.size() ; ++i)
                        if (keep[i])
                            sub.push_back(ids[i]);
                    alpha = chain_of(sub);
                    beta = chain_of(ids);
                }
                else {
                    std::map<Element, std::uint64_t> big, small;
                    for (size_t i = 0 ; i < ids.size() ; ++i) {
                        big[ids[i]] = rng() % 3;
                        if (keep[i])
                            small[ids[i]] = big[ids[i]] * 2 + rng() % 2;
                    }
                    alpha = classes_of(small);
                    beta = classes_of(big);
                }
                Budget m = rng() % 17, n = rng() % (m + 1);
                ++pairs;
                if (! included_in(evaluate(*op, alpha, n), evaluate(*op, beta, m))) {
                    c.fail(expr + " on " + format_diagram_literal(alpha) + " / " + format_diagram_literal(beta));
                    return c;
                }
            }
        }
        c.detail = std::to_string(pairs) + " sampled pairs";
        return c;
    }

    // ---- criterion 2: the copy-major order survives every extension

    auto check_trichotomy(const SuiteReport &) -> Check
    {
        Check c;
        size_t extensions = 0;
        for (std::uint64_t q = 1 ; q <= 3 ; ++q) {
            auto op = replicate(q);
            for (size_t m = 0 ; m <= 4 ; ++m) {
                vector<Element> order(m);
                std::iota(order.begin(), order.end(), 0);
                do {
                    vector<Element> expected;
                    for (Element k = 0 ; k < q ; ++k)
                        for (auto x : order)
                            expected.push_back(TaggedElement{ k, x }.encoded());

                    // insertion positions for up to three fresh elements
                    vector<vector<Element>> frontier{ order };
                    for (Element fresh = m ; fresh < m + 3 ; ++fresh) {
                        vector<vector<Element>> next;
                        for (auto & base : frontier)
                            for (size_t pos = 0 ; pos <= base.size() ; ++pos) {
                                auto grown = base;
                                grown.insert(grown.begin() + pos, fresh);
                                next.push_back(grown);
                            }
                        frontier.insert(frontier.end(), next.begin(), next.end());
                    }
                    for (auto & beta : frontier) {
                        ++extensions;
                        OrderView out(evaluate(*op, chain_of(beta), 16));
                        for (size_t i = 0 ; i + 1 < expected.size() ; ++i)
                            if (! out.less(expected[i], expected[i + 1])) {
                                c.fail("replicate:" + std::to_string(q) + " disagrees on an extension of size "
                                        + std::to_string(beta.size()));
                                return c;
                            }
                    }
                } while (std::next_permutation(order.begin(), order.end()));
            }
        }
        c.detail = std::to_string(extensions) + " extensions";
        return c;
    }

    // ---- criterion 3: brute-force tuple order

    auto kb_less(const vector<Element> & a, const vector<Element> & b) -> bool
    {
        auto common = std::min(a.size(), b.size());
        for (size_t i = 0 ; i < common ; ++i)
            if (a[i] != b[i])
                return a[i] < b[i];
        return a.size() > b.size();
    }

    auto reference_order(const vector<Element> & domain, const std::map<Element, size_t> & class_size,
            size_t interior, size_t last, Budget n, bool reversed) -> vector<Element>
    {
        vector<vector<Element>> tuples;
        for (std::uint32_t mask = 1 ; mask < (1u << domain.size()) ; ++mask) {
            vector<Element> t;
            Budget weight = 0;
            for (size_t i = 0 ; i < domain.size() ; ++i)
                if (mask >> i & 1) {
                    t.push_back(domain[i]);
                    weight += domain[i] + 1;
                }
            bool ok = weight <= n && class_size.at(t.back()) >= last;
            for (size_t i = 0 ; i + 1 < t.size() ; ++i)
                ok = ok && class_size.at(t[i]) >= interior;
            if (ok)
                tuples.push_back(t);
        }
        std::sort(tuples.begin(), tuples.end(), kb_less);
        if (reversed)
            std::reverse(tuples.begin(), tuples.end());
        vector<Element> codes;
        for (auto & t : tuples)
            codes.push_back(encode_increasing_tuple(t));
        return codes;
    }

    auto next_growth_string(vector<std::uint64_t> & a) -> bool
    {
        for (size_t i = a.size() ; i-- > 1 ; )
            if (a[i] <= *std::max_element(a.begin(), a.begin() + i)) {
                ++a[i];
                std::fill(a.begin() + i + 1, a.end(), 0);
                return true;
            }
        return false;
    }

    auto check_eq2ord(const SuiteReport &) -> Check
    {
        Check c;
        size_t instances = 0;
        for (std::uint32_t subset = 0 ; subset < (1u << 7) ; ++subset) {
            vector<Element> domain;
            for (Element x = 0 ; x < 7 ; ++x)
                if (subset >> x & 1)
                    domain.push_back(x);
            if (domain.size() > 5)
                continue;
            // restricted growth strings enumerate the partitions of the domain
            vector<std::uint64_t> label(domain.size(), 0);
            do {
                std::map<Element, std::uint64_t> labels;
                std::map<std::uint64_t, size_t> counts;
                for (size_t i = 0 ; i < domain.size() ; ++i) {
                    labels[domain[i]] = label[i];
                    ++counts[label[i]];
                }
                std::map<Element, size_t> size;
                for (auto & [x, l] : labels)
                    size[x] = counts[l];
                auto alpha = classes_of(labels);
                ++instances;
                for (bool v2 : { false, true }) {
                    auto got = OrderView(evaluate(*(v2 ? eq2ord_v2() : eq2ord_v1()), alpha, 28)).order();
                    auto want = reference_order(domain, size, v2 ? 3 : 2, v2 ? 2 : 1, 28, v2);
                    if (got != want) {
                        c.fail(string(v2 ? "eq2ord_v2" : "eq2ord_v1") + " on " + format_diagram_literal(alpha));
                        return c;
                    }
                }
            } while (next_growth_string(label));
        }
        if (instances != 1842)
            c.fail("enumerated " + std::to_string(instances) + " instances");

        // the worked example, bit for bit
        std::map<Element, std::uint64_t> worked{ { 0, 0 }, { 1, 0 }, { 2, 1 } };
        vector<vector<Element>> tuples{ { 0, 1, 2 }, { 0, 1 }, { 0, 2 }, { 0 }, { 1, 2 }, { 1 }, { 2 } };
        vector<Element> codes;
        for (auto & t : tuples)
            codes.push_back(encode_increasing_tuple(t));
        if (OrderView(evaluate(*eq2ord_v1(), classes_of(worked), 28)).order() != codes)
            c.fail("worked example differs");
        if (c.ok)
            c.detail = std::to_string(instances) + " partitions, both variants";
        return c;
    }

    // ---- criterion 4: growth census of ord2eq runs

    auto check_ord2eq(const SuiteReport & r) -> Check
    {
        Check c;
        for (auto & e : r.experiments.at(4)) {
            auto spec = input_spec(e.at("config").at("input"));
            size_t stages = e.at("config").at("stages"), window = e.at("config").at("window");
            auto log = run(ord2eq(), generate(spec, stages), stages);
            auto classes = oracle::growth_census(log, window);
            bool left = spec.family == Family::OnePlusEta;
            auto ones = oracle::frozen_of_size(classes, 1), twos = oracle::frozen_of_size(classes, 2);
            if ((left ? ones : twos) != 1 || (left ? twos : ones) != 0)
                c.fail(spec.describe() + ": frozen sizes 1/2 = " + std::to_string(ones) + "/" + std::to_string(twos));
        }
        if (c.ok)
            c.detail = "40 growth censuses";
        return c;
    }

    // ---- criterion 5: guess trace, settle bound, growth rule

    // rank of the element stage t adds to a one-element-per-stage stream
    auto insertion_ranks(const StructureStream & s) -> vector<size_t>
    {
        vector<size_t> ranks;
        StageCursor cursor(s);
        std::set<Element> seen;
        while (cursor.next()) {
            OrderView v(cursor.current());
            for (auto x : v.order())
                if (seen.insert(x).second)
                    ranks.push_back(*v.rank(x));
        }
        return ranks;
    }

    auto check_phi_pair(const SuiteReport & r) -> Check
    {
        Check c;
        auto a = generate(parse_claim("omega_k:2"), 128), b = generate(parse_claim("omega_star_k:2"), 128);
        auto ranks_a = insertion_ranks(a), ranks_b = insertion_ranks(b);
        auto op = phi_pair(StagePair{ a, b });
        for (auto & e : r.experiments.at(5)) {
            auto spec = input_spec(e.at("config").at("input"));
            size_t stages = e.at("config").at("stages");
            auto input = generate(spec, stages);
            auto log = run(op, input, stages);
            auto name = spec.describe();

            vector<char> building;
            for (auto & rec : log.records())
                building.push_back(rec.annotations.at("building").get<string>()[0]);
            size_t settled = building.size() - 1;
            while (settled > 0 && building[settled - 1] == building.back())
                --settled;
            bool omega = spec.family == Family::Omega;
            if (building.back() != (omega ? 'A' : 'B'))
                c.fail(name + " ends building " + string(1, building.back()));

            // the guess can only move while the input's far endpoint still changes
            std::optional<Element> lo, hi;
            size_t last_near = 0, bound = stages;
            for (size_t s = 0 ; s < stages ; ++s) {
                OrderView v(input.stage(s));
                auto l = *v.least(), g = *v.greatest();
                bool near = omega ? (lo && l != *lo) : (hi && g != *hi);
                bool far = omega ? (hi && g != *hi) : (lo && l != *lo);
                if (near || s == 0) {
                    last_near = s;
                    bound = stages;
                }
                else if (far && bound == stages)
                    bound = s;
                lo = l;
                hi = g;
            }
            if (bound == stages)
                bound = last_near;
            if (settled > bound)
                c.fail(name + " settled at " + std::to_string(settled) + " past " + std::to_string(bound));

            // after settling, each stage adds one element where the target adds its next one
            auto & ranks = building.back() == 'A' ? ranks_a : ranks_b;
            for (size_t s = settled + 1 ; s < stages ; ++s) {
                auto before = log.stage(s - 1).size();
                auto now = log.stage(s);
                size_t t = log.records()[s].annotations.at("t");
                if (now.size() != before + 1 || t >= ranks.size()
                        || OrderView(now).rank(Element(before)) != ranks[t]) {
                    c.fail(name + " breaks the target's growth at stage " + std::to_string(s));
                    break;
                }
            }

            if (spec.policy.kind == PolicyKind::Ascending || spec.policy.kind == PolicyKind::Descending) {
                size_t switches = log.records().back().annotations.at("switches");
                if (switches > 2)
                    c.fail(name + " switched " + std::to_string(switches) + " times");
            }
        }
        if (c.ok)
            c.detail = std::to_string(r.experiments.at(5).size()) + " traces";
        return c;
    }

    // ---- criterion 6: suffix of placements read off the final order

    auto check_phi_sigma2(const SuiteReport & r) -> Check
    {
        Check c;
        auto op = phi_sigma2(least_element_sentence(), greatest_element_sentence());
        size_t shortest = ~size_t{ 0 };
        for (auto & e : r.experiments.at(6)) {
            auto spec = input_spec(e.at("config").at("input"));
            size_t stages = e.at("config").at("stages");
            auto log = run(op, generate(spec, stages), stages);
            OrderView final_order(log.final_diagram());
            bool top = spec.family == Family::OmegaK;

            // element i is created at stage i; walk back while it lies beyond all older ones
            vector<size_t> rank(stages);
            for (Element x = 0 ; x < stages ; ++x)
                rank[x] = *final_order.rank(x);
            size_t suffix = 0;
            for (size_t i = stages - 1 ; i > 0 ; --i) {
                bool beyond = true;
                for (size_t j = 0 ; j < i && beyond ; ++j)
                    beyond = top ? rank[j] < rank[i] : rank[j] > rank[i];
                if (! beyond)
                    break;
                ++suffix;
            }
            shortest = std::min(shortest, suffix);
            if (suffix < 50)
                c.fail(spec.describe() + " suffix " + std::to_string(suffix));
        }
        if (c.ok)
            c.detail = "shortest suffix " + std::to_string(shortest);
        return c;
    }

    // ---- criterion 7: fingerprint oracle on replicate runs

    auto check_divisibility(const SuiteReport & r) -> Check
    {
        Check c;
        for (auto & e : r.experiments.at(7)) {
            auto & config = e.at("config");
            auto spec = input_spec(config.at("input"));
            size_t stages = config.at("stages"), W = config.at("W");
            std::uint64_t q = std::stoull(config.at("op").get<string>().substr(10));
            auto log = run(replicate(q), generate(spec, stages), stages);
            auto fp = oracle::fingerprint(log);
            size_t horizon = std::max(W, (stages + 3) / 4);
            bool omega = spec.family == Family::OmegaK;
            auto expected = spec.k * q - 1;
            auto unstable = fp.unstable(W, omega);
            bool endpoint = omega ? fp.least_held >= horizon : fp.greatest_held >= horizon;
            if (unstable != expected || ! endpoint)
                c.fail(spec.describe() + " x" + std::to_string(q) + ": " + std::to_string(unstable)
                        + " unstable, expected " + std::to_string(expected));
        }
        if (c.ok)
            c.detail = "8 fingerprints";
        return c;
    }

    // ---- criterion 8: census and endpoints of the pipelines

    auto check_pipelines(const SuiteReport & r) -> Check
    {
        Check c;
        auto ctx = sentences();
        size_t pairs = 0, concats = 0;
        for (auto & e : r.experiments.at(8)) {
            auto & config = e.at("config");
            auto spec = input_spec(config.at("input"));
            size_t stages = config.at("stages");
            auto schedule = parse_budget_schedule(config.at("schedule").get<string>());
            auto op = parse_operator(config.at("op").get<string>(), ctx);
            auto log = run(op, generate(spec, stages), stages, schedule);
            size_t horizon = std::max<size_t>(5, (stages + 3) / 4);

            if (spec.family == Family::OmegaK || spec.family == Family::OmegaStarK) {
                ++pairs;
                auto classes = oracle::growth_census(log, horizon);
                auto side = [&] (size_t k) {
                    size_t frozen = 0;
                    for (auto & [_, h] : classes)
                        frozen += h.frozen;
                    auto sized = oracle::frozen_of_size(classes, k);
                    return sized >= 2 && sized == frozen;
                };
                bool omega = spec.family == Family::OmegaK;
                if (! side(omega ? 1 : 2) || side(omega ? 2 : 1))
                    c.fail(spec.describe() + " census is not on its side");
            }
            else {
                ++concats;
                auto fp = oracle::fingerprint(log);
                bool least = fp.least_held >= horizon, greatest = fp.greatest_held >= horizon;
                bool left = spec.k == 1;
                if (least != left || greatest == left)
                    c.fail(spec.describe() + " endpoints held " + std::to_string(fp.least_held) + "/"
                            + std::to_string(fp.greatest_held));
            }
        }
        if (c.ok)
            c.detail = std::to_string(pairs) + " censuses, " + std::to_string(concats) + " endpoint reports";
        return c;
    }

    struct Criterion
    {
        int number;
        const char * title;
        size_t experiments;
        Check (* oracle)(const SuiteReport &);
    };

    const Criterion criteria[] = {
        { 1, "monotonicity", 19, check_monotonicity },
        { 2, "forcing trichotomy", 3, check_trichotomy },
        { 3, "eq2ord oracle equivalence", 2, check_eq2ord },
        { 4, "ord2eq limit behaviour", 40, check_ord2eq },
        { 5, "phi_pair", 42, check_phi_pair },
        { 6, "phi_sigma2", 40, check_phi_sigma2 },
        { 7, "divisibility", 8, check_divisibility },
        { 8, "top-pair pipeline", 8, check_pipelines },
    };

    auto suite_verdict(const SuiteReport & r, const Criterion & c) -> Check
    {
        Check check;
        if (! r.summary.contains(c.number)) {
            check.fail("no suite record");
            return check;
        }
        if (r.summary.at(c.number).at("verdict") != "PASS")
            check.fail("suite verdict FAIL");
        auto & runs = r.experiments.contains(c.number) ? r.experiments.at(c.number) : vector<json>{ };
        size_t passed = std::count_if(runs.begin(), runs.end(), [] (auto & j) { return j.at("verdict") == "PASS"; });
        if (runs.size() != c.experiments || passed != runs.size())
            check.fail("suite " + std::to_string(passed) + "/" + std::to_string(runs.size())
                    + ", expected " + std::to_string(c.experiments));
        check.detail = "suite " + std::to_string(passed) + "/" + std::to_string(runs.size());
        return check;
    }

    auto line(bool ok, int number, const string & title, const string & detail, double seconds) -> void
    {
        std::printf("%s  criterion %d  %-28s %7.2fs  %s\n", ok ? "PASS" : "FAIL", number, title.c_str(), seconds,
                detail.c_str());
        std::fflush(stdout);
    }
}

auto main() -> int
{
    auto dir = fs::temp_directory_path() / "embedlab-acceptance";
    fs::remove_all(dir);
    fs::create_directories(dir);
    auto first = dir / "first.jsonl", second = dir / "second.jsonl";

    auto start = std::chrono::steady_clock::now();
    int status_a = run_cli("suite --all --seed 7 --out " + first.string() + " --table " + (dir / "table.txt").string()
            + " >" + (dir / "stdout.txt").string());
    int status_b = run_cli("suite --all --seed 7 --out " + second.string() + " >" + (dir / "stdout.txt").string());
    std::fputs(slurp(dir / "table.txt").c_str(), stdout);
    double suite_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    auto text = slurp(first);
    SuiteReport report;
    bool parsed = true;
    try {
        report = parse_report(text);
    }
    catch (const std::exception & e) {
        std::printf("suite report unreadable: %s\n", e.what());
        parsed = false;
    }

    bool all = true;
    for (auto & c : criteria) {
        auto t0 = std::chrono::steady_clock::now();
        Check suite, own;
        if (parsed) {
            suite = suite_verdict(report, c);
            try {
                if (report.experiments.contains(c.number))
                    own = c.oracle(report);
                else
                    own.fail("no experiments");
            }
            catch (const std::exception & e) {
                own.fail(string("oracle threw: ") + e.what());
            }
        }
        else
            suite.fail("unreadable report");
        double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        bool ok = suite.ok && own.ok;
        all = all && ok;
        line(ok, c.number, c.title, suite.detail + "; oracle: " + own.detail, seconds);
    }

    bool identical = status_a == 0 && status_b == 0 && ! text.empty() && text == slurp(second);
    all = all && identical;
    line(identical, 9, "determinism",
            "two suite runs, exit " + std::to_string(status_a) + "/" + std::to_string(status_b) + ", "
            + std::to_string(text.size()) + " bytes" + (identical ? " identical" : " differ"), suite_seconds);

    fs::remove_all(dir);
    return all ? 0 : 1;
}
