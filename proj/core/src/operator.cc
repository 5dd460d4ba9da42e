/* vim: set sw=4 sts=4 et : */

#include <embedlab/operator.hh>
#include <embedlab/errors.hh>

#include <algorithm>

using std::vector;

namespace embedlab
{
    auto EnumerationOperator::annotate(const FiniteDiagram &, Budget) const -> nlohmann::json
    {
        return nullptr;
    }

    auto EnumerationOperator::extension_complete() const -> bool
    {
        return false;
    }

    auto evaluate(const EnumerationOperator & op, const FiniteDiagram & alpha, Budget n) -> FiniteDiagram
    {
        if (alpha.signature() != op.input_signature() && ! alpha.empty())
            throw SignatureError(op.name() + " expects " + signature_name(op.input_signature())
                    + " input, got " + signature_name(alpha.signature()));
        if (! alpha.is_consistent())
            throw InconsistentDiagram(op.name() + " given an inconsistent diagram");
        auto input = alpha.signature() == op.input_signature() ? alpha : FiniteDiagram(op.input_signature());
        return op.apply(input, n);
    }

    auto operator_name(const AnyOperator & op) -> std::string
    {
        return std::visit([] (auto & p) { return p->name(); }, op);
    }

    auto input_signature(const AnyOperator & op) -> Signature
    {
        return std::visit([] (auto & p) { return p->input_signature(); }, op);
    }

    auto output_signature(const AnyOperator & op) -> Signature
    {
        return std::visit([] (auto & p) { return p->output_signature(); }, op);
    }

    auto chain_facts(const vector<Element> & order) -> vector<Fact>
    {
        vector<Fact> facts;
        if (order.size() == 1)
            facts.push_back(Fact::el(order.front()));
        for (size_t i = 1 ; i < order.size() ; ++i)
            facts.push_back(Fact::lt(order[i - 1], order[i]));
        return facts;
    }

    auto star_facts(const vector<vector<Element>> & classes) -> vector<Fact>
    {
        vector<Fact> facts;
        for (auto & c : classes) {
            if (c.empty())
                continue;
            auto least = *std::min_element(c.begin(), c.end());
            if (c.size() == 1)
                facts.push_back(Fact::el(least));
            for (auto x : c)
                if (x != least)
                    facts.push_back(Fact::sim(least, x));
        }
        return facts;
    }
}
