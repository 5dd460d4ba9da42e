/* vim: set sw=4 sts=4 et : */

#include <embedlab/forcing.hh>
#include <embedlab/errors.hh>
#include <embedlab/monotonicity.hh>
#include <embedlab/sigma2.hh>

#include <algorithm>
#include <map>
#include <set>

using std::size_t;
using std::string;
using std::vector;

namespace embedlab
{
    namespace
    {
        auto require_orders(const EnumerationOperator & op) -> void
        {
            if (op.input_signature() != Signature::LinearOrder || op.output_signature() != Signature::LinearOrder)
                throw SignatureError("forcing is defined for linear-order operators, " + op.name() + " is not one");
        }

        // every total order on alpha's elements plus `fresh`, keeping alpha's order
        auto interleavings(const vector<Element> & base, const vector<Element> & fresh) -> vector<vector<Element>>
        {
            vector<vector<Element>> result;
            for (auto & fresh_order : orders_of(fresh)) {
                // choose positions by a nondecreasing slot sequence
                vector<size_t> slot(fresh_order.size(), 0);
                while (true) {
                    vector<Element> merged;
                    size_t f = 0;
                    for (size_t i = 0 ; i <= base.size() ; ++i) {
                        while (f < slot.size() && slot[f] == i)
                            merged.push_back(fresh_order[f++]);
                        if (i < base.size())
                            merged.push_back(base[i]);
                    }
                    result.push_back(std::move(merged));

                    size_t i = slot.size();
                    while (i > 0 && slot[i - 1] == base.size())
                        --i;
                    if (i == 0)
                        break;
                    ++slot[i - 1];
                    for (size_t j = i ; j < slot.size() ; ++j)
                        slot[j] = slot[i - 1];
                }
            }
            return result;
        }

        auto describe(const FiniteDiagram & d) -> string
        {
            return "{" + format_diagram_literal(d) + "}";
        }
    }

    auto outcome_name(Outcome o) -> string
    {
        switch (o) {
            case Outcome::Forced:  return "FORCED";
            case Outcome::Refuted: return "REFUTED";
            case Outcome::Unknown: return "UNKNOWN";
        }
        return "?";
    }

    struct ForcingContext::Imp
    {
        OperatorPtr op;
        FiniteDiagram output;
        vector<FiniteDiagram> extensions;
        vector<ClosureModel> models;
    };

    ForcingContext::ForcingContext(OperatorPtr op, const FiniteDiagram & alpha, size_t ext_bound, Budget budget) :
        _imp(std::make_unique<Imp>())
    {
        require_orders(*op);
        if (! alpha.is_total())
            throw InvalidInput("forcing needs a total alpha");
        _imp->op = op;
        _imp->output = evaluate(*op, alpha, budget);

        auto base = OrderView(alpha).order();
        Element next = base.empty() ? 0 : *std::max_element(base.begin(), base.end()) + 1;
        for (size_t k = 0 ; k <= ext_bound ; ++k) {
            vector<Element> fresh;
            for (size_t i = 0 ; i < k ; ++i)
                fresh.push_back(next + i);
            for (auto & order : interleavings(base, fresh)) {
                auto beta = chain_diagram(order);
                _imp->models.emplace_back(evaluate(*op, beta, budget));
                _imp->extensions.push_back(std::move(beta));
            }
        }
    }

    ForcingContext::~ForcingContext() = default;

    auto ForcingContext::output() const -> const FiniteDiagram &
    {
        return _imp->output;
    }

    auto ForcingContext::extension_count() const -> size_t
    {
        return _imp->extensions.size();
    }

    auto ForcingContext::query(const Fact & atom) const -> ForcingVerdict
    {
        if (atom.relation != Relation::Lt)
            throw InvalidSpec("forcing atoms must be lt facts");
        for (auto x : { atom.lhs, atom.rhs })
            if (! _imp->output.has_element(x))
                throw NotInOutput("element " + std::to_string(x) + " is not in the output of " + _imp->op->name());

        for (size_t i = 0 ; i < _imp->extensions.size() ; ++i)
            if (atom.lhs == atom.rhs || _imp->models[i].entails(Atom::Lt, atom.rhs, atom.lhs))
                return ForcingVerdict{ Outcome::Refuted, _imp->extensions[i] };
        return ForcingVerdict{ _imp->op->extension_complete() ? Outcome::Forced : Outcome::Unknown, std::nullopt };
    }

    auto bounded_force(const ForcingQuery & q) -> ForcingVerdict
    {
        if (q.atom.relation != Relation::Lt)
            throw InvalidSpec("forcing atoms must be lt facts");
        return ForcingContext(q.op, q.alpha, q.ext_bound, q.budget).query(q.atom);
    }

    namespace
    {
        // forced order on `elements`, or a violation message
        auto forced_order(const ForcingContext & ctx, const vector<Element> & elements, size_t & pairs,
                string & problem) -> std::optional<vector<Element>>
        {
            std::map<Element, size_t> beaten;
            for (auto x : elements)
                beaten[x] = 0;
            for (size_t i = 0 ; i < elements.size() ; ++i)
                for (size_t j = i + 1 ; j < elements.size() ; ++j) {
                    auto x = elements[i], y = elements[j];
                    ++pairs;
                    bool xy = ctx.query(Fact::lt(x, y)).outcome == Outcome::Forced;
                    bool yx = ctx.query(Fact::lt(y, x)).outcome == Outcome::Forced;
                    if (xy == yx) {
                        problem = "pair " + std::to_string(x) + "," + std::to_string(y)
                            + (xy ? " forced both ways" : " forced neither way");
                        return std::nullopt;
                    }
                    ++beaten[xy ? y : x];
                }
            // a tournament is a total order iff its scores are 0, 1, ..., n - 1
            vector<Element> order(elements.size());
            vector<bool> used(elements.size(), false);
            for (auto & [x, score] : beaten) {
                if (score >= order.size() || used[score]) {
                    problem = "forced facts contain a cycle";
                    return std::nullopt;
                }
                used[score] = true;
                order[score] = x;
            }
            return order;
        }
    }

    auto trichotomy_scan(OperatorPtr op, size_t max_alpha, size_t ext_bound, Budget budget) -> TrichotomyReport
    {
        require_orders(*op);
        TrichotomyReport report;
        for (size_t m = 0 ; m <= max_alpha ; ++m) {
            vector<Element> ids;
            for (size_t i = 0 ; i < m ; ++i)
                ids.push_back(i);
            for (auto & order : orders_of(ids)) {
                auto alpha = chain_diagram(order);
                ++report.alphas;
                ForcingContext ctx(op, alpha, ext_bound, budget);
                auto & elements = ctx.output().domain();
                string problem;
                auto perm = forced_order(ctx, elements, report.pairs, problem);
                if (! perm) {
                    report.violations.push_back(describe(alpha) + ": " + problem);
                    continue;
                }
                report.permutations.push_back(ForcedPermutation{ alpha, *perm });

                for (size_t pos = 0 ; pos <= m ; ++pos) {
                    vector<Element> bigger = order;
                    bigger.insert(bigger.begin() + pos, m);
                    auto beta = chain_diagram(bigger);
                    ++report.extensions;
                    ForcingContext wider(op, beta, ext_bound, budget);
                    for (auto x : elements)
                        if (! wider.output().has_element(x)) {
                            problem = "element " + std::to_string(x) + " lost";
                            break;
                        }
                    if (! problem.empty()) {
                        report.violations.push_back(describe(beta) + ": " + problem);
                        continue;
                    }
                    size_t ignored = 0;
                    auto restricted = forced_order(wider, elements, ignored, problem);
                    if (! restricted)
                        report.violations.push_back(describe(beta) + ": " + problem);
                    else if (*restricted != *perm)
                        report.violations.push_back(describe(beta) + ": forced order on old elements changed");
                }
            }
        }
        return report;
    }

    auto disjoint_agreement_scan(OperatorPtr op, size_t max_alpha, size_t ext_bound, Budget budget) -> AgreementReport
    {
        require_orders(*op);
        AgreementReport report;
        vector<vector<Element>> orders;
        for (auto & o : orders_on_subsets(2 * max_alpha))
            if (! o.empty() && o.size() <= max_alpha)
                orders.push_back(o);

        vector<std::unique_ptr<ForcingContext>> contexts;
        for (auto & o : orders)
            contexts.push_back(std::make_unique<ForcingContext>(op, chain_diagram(o), ext_bound, budget));

        for (size_t a = 0 ; a < orders.size() ; ++a)
            for (size_t b = a + 1 ; b < orders.size() ; ++b) {
                std::set<Element> in_a(orders[a].begin(), orders[a].end());
                if (std::any_of(orders[b].begin(), orders[b].end(), [&] (Element x) { return in_a.contains(x); }))
                    continue;
                ++report.alpha_beta_pairs;

                vector<Element> shared;
                auto & da = contexts[a]->output().domain();
                for (auto x : contexts[b]->output().domain())
                    if (std::binary_search(da.begin(), da.end(), x))
                        shared.push_back(x);

                for (size_t i = 0 ; i < shared.size() ; ++i)
                    for (size_t j = 0 ; j < shared.size() ; ++j) {
                        if (i == j)
                            continue;
                        ++report.shared_pairs;
                        report.vacuous = false;
                        auto atom = Fact::lt(shared[i], shared[j]);
                        bool fa = contexts[a]->query(atom).outcome == Outcome::Forced;
                        bool fb = contexts[b]->query(atom).outcome == Outcome::Forced;
                        if (fa != fb)
                            report.violations.push_back(describe(chain_diagram(orders[a])) + " vs "
                                    + describe(chain_diagram(orders[b])) + " disagree on " + to_string(atom));
                    }
            }
        return report;
    }

    auto finiteness_probe(const AnyOperator & any, const FiniteDiagram & alpha, Budget ceiling) -> FinitenessReport
    {
        auto op = std::get_if<OperatorPtr>(&any);
        if (! op)
            throw InvalidTarget("finiteness probe needs an enumeration operator, " + operator_name(any) + " is a construction");
        if ((*op)->output_signature() != Signature::LinearOrder)
            throw InvalidTarget("finiteness probe needs linear-order output, " + (*op)->name() + " gives "
                    + signature_name((*op)->output_signature()));

        FinitenessReport report;
        for (Budget n = 0 ; n <= ceiling ; ++n)
            report.sizes.push_back(evaluate(**op, alpha, n).size());

        Budget settled = ceiling;
        while (settled > 0 && report.sizes[settled - 1] == report.sizes[ceiling])
            --settled;
        if (settled <= ceiling / 2) {
            report.stabilized = true;
            report.stabilization_point = settled;
        }
        return report;
    }
}
