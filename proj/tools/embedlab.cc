/* vim: set sw=4 sts=4 et : */

#include <embedlab/axiom_table.hh>
#include <embedlab/classifier.hh>
#include <embedlab/errors.hh>
#include <embedlab/experiments.hh>
#include <embedlab/forcing.hh>
#include <embedlab/registry.hh>
#include <embedlab/run_log.hh>
#include <embedlab/sigma2.hh>
#include <embedlab/stream.hh>

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace embedlab;
using nlohmann::json;
using std::string;

namespace
{
    enum ExitCode
    {
        exit_ok = 0,
        exit_usage = 2,
        exit_signature = 3,
        exit_suite_failure = 4
    };

    auto read_file(const string & path) -> string
    {
        std::ifstream in(path, std::ios::binary);
        if (! in)
            throw InvalidSpec("cannot read " + path);
        std::ostringstream s;
        s << in.rdbuf();
        return s.str();
    }

    // write to a sibling temporary, then rename over the target
    auto write_file(const string & path, const string & text) -> void
    {
        auto tmp = path + ".tmp";
        {
            std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
            if (! out)
                throw InvalidSpec("cannot write " + path);
            out << text;
            if (! out.flush())
                throw InvalidSpec("cannot write " + path);
        }
        std::filesystem::rename(tmp, path);
    }

    auto emit(const string & path, const string & text) -> void
    {
        if (path.empty() || path == "-")
            std::cout << text << std::flush;
        else
            write_file(path, text);
    }

    struct GenArgs
    {
        string family, policy = "fair", out;
        std::uint64_t k = 1, seed = 0;
        std::size_t stages = 0;
    };

    struct RunArgs
    {
        string op, in, log, schedule = "id", phi, psi, axioms, run_id;
        string target_a = "omega_k:2", target_b = "omega_star_k:2";
        std::size_t stages = 0;
    };

    struct ForceArgs
    {
        string op, alpha, atom, axioms, out;
        std::size_t ext = 0;
        Budget budget = 0;
    };

    struct ClassifyArgs
    {
        string log, in, claim, out;
        std::size_t W = 5, window = 0;
    };

    struct SuiteArgs
    {
        bool all = false;
        std::vector<int> criteria;
        std::uint64_t seed = 7;
        string out, table;
    };

    auto sentence_from(const string & path) -> std::shared_ptr<const Sigma2Sentence>
    {
        if (path.empty())
            return nullptr;
        return std::make_shared<const Sigma2Sentence>(parse_sigma2(read_file(path)));
    }

    auto registry_context(const string & phi, const string & psi, const string & axioms) -> RegistryContext
    {
        RegistryContext ctx;
        ctx.phi = sentence_from(phi);
        ctx.psi = sentence_from(psi);
        if (! axioms.empty())
            ctx.axioms = parse_axiom_table(read_file(axioms), std::filesystem::path(axioms).stem().string());
        return ctx;
    }

    auto cmd_gen(const GenArgs & a) -> int
    {
        CanonicalSpec spec{ parse_family(a.family), a.k, parse_policy(a.policy, a.seed) };
        auto stream = generate(spec, a.stages);
        emit(a.out, format_stream(stream));
        std::cerr << "generated " << spec.describe() << ": " << stream.stage_count() << " stages, "
            << stream.final_stage().size() << " elements\n";
        return exit_ok;
    }

    auto cmd_run(const RunArgs & a) -> int
    {
        auto ctx = registry_context(a.phi, a.psi, a.axioms);
        ctx.target_a = parse_claim(a.target_a);
        ctx.target_b = parse_claim(a.target_b);
        auto op = parse_operator(a.op, ctx);
        auto input = parse_stream(read_file(a.in));
        auto stages = a.stages == 0 ? input.stage_count() : a.stages;
        auto log = run(op, input, stages, parse_budget_schedule(a.schedule), a.run_id);
        emit(a.log, format_run_log(log));
        return exit_ok;
    }

    auto cmd_force(const ForceArgs & a) -> int
    {
        auto ctx = registry_context("", "", a.axioms);
        ForcingQuery q{ parse_enumeration_operator(a.op, ctx), parse_diagram(read_file(a.alpha)),
            parse_fact(a.atom), a.ext, a.budget };
        auto verdict = bounded_force(q);
        json record{ { "v", 1 }, { "op", a.op }, { "alpha", format_diagram_literal(q.alpha) },
            { "atom", to_string(q.atom) }, { "ext", a.ext }, { "budget", a.budget },
            { "outcome", outcome_name(verdict.outcome) } };
        if (verdict.certificate)
            record["certificate"] = format_diagram_literal(*verdict.certificate);
        emit(a.out, record.dump() + "\n");
        return exit_ok;
    }

    auto cmd_classify(const ClassifyArgs & a) -> int
    {
        if (a.log.empty() == a.in.empty())
            throw InvalidSpec("classify needs exactly one of --log and --in");
        auto log = a.log.empty() ? log_of(parse_stream(read_file(a.in))) : parse_run_log(read_file(a.log));
        auto claim = parse_claim(a.claim);
        auto verdict = consistency_verdict(log, claim, a.W, a.window);
        json record = verdict_json(verdict);
        record["v"] = 1;
        record["source"] = a.log.empty() ? a.in : a.log;
        record["W"] = a.W;
        emit(a.out, record.dump() + "\n");
        std::cerr << (verdict.consistent ? "CONSISTENT" : "INCONSISTENT") << ": " << verdict.reason << '\n';
        return exit_ok;
    }

    auto cmd_suite(const SuiteArgs & a) -> int
    {
        SuiteOptions options;
        options.seed = a.seed;
        if (const char * env = std::getenv("EMBEDLAB_SEED"))
            options.seed = std::stoull(env);
        if (! a.all) {
            if (a.criteria.empty())
                throw InvalidSpec("suite needs --all or --criterion");
            options.only.insert(a.criteria.begin(), a.criteria.end());
        }
        auto results = run_suite(options);
        auto jsonl = suite_jsonl(results, options), table = suite_table(results);
        emit(a.out, jsonl);
        if (! a.table.empty())
            write_file(a.table, table);
        (a.out.empty() || a.out == "-" ? std::cerr : std::cout) << table;
        for (auto & r : results)
            if (! r.passed)
                return exit_suite_failure;
        return exit_ok;
    }

    const char * grammar_help = R"(Operator expressions:
  expr  := term ('|' stage)*
  stage := fill:left | fill:right | rev | term
  term  := name[:param] | concat(expr,expr) | union(expr,expr) | rev(expr) | (expr)
Names: replicate:<q>, ord2eq, eq2ord_v1, eq2ord_v2, class_multiplier, formula2eq,
formula2eq_dual, pair_formula2eq, axioms, phi_pair, phi_sigma2.
Budget schedules: id, sqrt, div:<d>.)";
}

auto main(int argc, char ** argv) -> int
{
    CLI::App app{ "embedlab: enumeration operators on countable structures" };
    app.require_subcommand(1);
    app.footer(grammar_help);

    GenArgs gen;
    auto * g = app.add_subcommand("gen", "write a canonical structure stream");
    g->add_option("--family", gen.family, "omega, omega_star, omega_k, omega_star_k, one_plus_eta, eta_plus_one, eta, e, e_k, e_hat_k")->required();
    g->add_option("--k", gen.k, "family parameter");
    g->add_option("--policy", gen.policy, "fair, permuted, ascending, descending");
    g->add_option("--seed", gen.seed, "seed for the permuted policy");
    g->add_option("--stages", gen.stages, "number of stages")->required();
    g->add_option("--out", gen.out, "stream file (default stdout)");

    RunArgs runa;
    auto * r = app.add_subcommand("run", "run an operator over a stream, writing a JSONL log");
    r->add_option("--op", runa.op, "operator expression")->required();
    r->add_option("--in", runa.in, "input stream file")->required();
    r->add_option("--stages", runa.stages, "stages to run (default all)");
    r->add_option("--schedule", runa.schedule, "budget schedule");
    r->add_option("--log", runa.log, "log file (default stdout)");
    r->add_option("--phi", runa.phi, "sentence file for phi");
    r->add_option("--psi", runa.psi, "sentence file for psi");
    r->add_option("--axioms", runa.axioms, "axiom table file");
    r->add_option("--target-a", runa.target_a, "phi_pair target A");
    r->add_option("--target-b", runa.target_b, "phi_pair target B");
    r->add_option("--run-id", runa.run_id, "run id recorded in the log");

    ForceArgs force;
    auto * f = app.add_subcommand("force", "bounded forcing query");
    f->add_option("--op", force.op, "operator expression")->required();
    f->add_option("--alpha", force.alpha, "diagram file")->required();
    f->add_option("--atom", force.atom, "atom, e.g. \"lt 1 4\"")->required();
    f->add_option("--ext", force.ext, "extension bound");
    f->add_option("--budget", force.budget, "budget");
    f->add_option("--axioms", force.axioms, "axiom table file");
    f->add_option("--out", force.out, "output file (default stdout)");

    ClassifyArgs classify;
    auto * c = app.add_subcommand("classify", "consistency verdict for a log or stream");
    c->add_option("--log", classify.log, "JSONL run log");
    c->add_option("--in", classify.in, "stream file");
    c->add_option("--claim", classify.claim, "claimed structure, e.g. omega_k:3")->required();
    c->add_option("--W", classify.W, "instability threshold");
    c->add_option("--window", classify.window, "census window (0 = automatic)");
    c->add_option("--out", classify.out, "output file (default stdout)");

    SuiteArgs suite;
    auto * s = app.add_subcommand("suite", "run the acceptance experiments");
    s->add_flag("--all", suite.all, "run every criterion");
    s->add_option("--criterion", suite.criteria, "criterion number (repeatable)")->check(CLI::Range(1, 8));
    s->add_option("--seed", suite.seed, "base seed (EMBEDLAB_SEED overrides)");
    s->add_option("--out", suite.out, "JSONL report (default stdout)");
    s->add_option("--table", suite.table, "also write the table here");

    try {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError & e) {
        auto code = app.exit(e);
        return code == 0 ? exit_ok : exit_usage;
    }

    try {
        if (*g)
            return cmd_gen(gen);
        if (*r)
            return cmd_run(runa);
        if (*f)
            return cmd_force(force);
        if (*c)
            return cmd_classify(classify);
        return cmd_suite(suite);
    }
    catch (const SignatureError & e) {
        std::cerr << e.what() << '\n';
        return exit_signature;
    }
    catch (const std::exception & e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_usage;
    }
}
