/* vim: set sw=4 sts=4 et : */

#include <embedlab/combinators.hh>
#include <embedlab/dyadic.hh>
#include <embedlab/errors.hh>

#include <algorithm>
#include <map>
#include <set>

using nlohmann::json;
using std::string;
using std::vector;

namespace embedlab
{
    namespace
    {
        auto require_order_output(const OperatorPtr & op, const string & who) -> void
        {
            if (op->output_signature() != Signature::LinearOrder)
                throw SignatureError(who + " needs a linear-order operator, " + op->name() + " outputs "
                        + signature_name(op->output_signature()));
        }

        auto tag_facts(const FiniteDiagram & d, unsigned side, vector<Fact> & out) -> void
        {
            for (auto & f : d.facts())
                out.push_back(Fact{ f.relation, join_tag(side, f.lhs), f.relation == Relation::El ? 0 : join_tag(side, f.rhs) });
        }

        auto tag_frozen(const json & annotation, unsigned side, json & out) -> void
        {
            if (annotation.is_object() && annotation.contains("frozen"))
                for (auto & x : annotation["frozen"])
                    out.push_back(join_tag(side, x.get<Element>()));
        }

        // elements with no lt generator leaving (resp. entering) them
        auto extremal(const FiniteDiagram & d, bool maximal) -> vector<Element>
        {
            std::set<Element> blocked;
            for (auto & f : d.facts())
                if (f.relation == Relation::Lt)
                    blocked.insert(maximal ? f.lhs : f.rhs);
            vector<Element> result;
            for (auto x : d.domain())
                if (! blocked.contains(x))
                    result.push_back(x);
            return result;
        }

        class Replicate final : public EnumerationOperator
        {
            public:
                explicit Replicate(std::uint64_t q) : _q(q) { }

                auto name() const -> string override { return "replicate:" + std::to_string(_q); }
                auto input_signature() const -> Signature override { return Signature::LinearOrder; }
                auto output_signature() const -> Signature override { return Signature::LinearOrder; }
                auto extension_complete() const -> bool override { return true; }

                auto apply(const FiniteDiagram & alpha, Budget) const -> FiniteDiagram override
                {
                    if (! alpha.is_total())
                        throw InvalidInput("replicate needs a total order");
                    OrderView view(alpha);
                    vector<Element> order;
                    for (std::uint64_t copy = 0 ; copy < _q ; ++copy)
                        for (auto x : view.order())
                            order.push_back(TaggedElement{ copy, x }.encoded());
                    return FiniteDiagram(Signature::LinearOrder, chain_facts(order));
                }

            private:
                std::uint64_t _q;
        };

        class Reverse final : public EnumerationOperator
        {
            public:
                explicit Reverse(OperatorPtr inner) : _inner(std::move(inner)) { }

                auto name() const -> string override { return "rev(" + _inner->name() + ")"; }
                auto input_signature() const -> Signature override { return _inner->input_signature(); }
                auto output_signature() const -> Signature override { return Signature::LinearOrder; }
                auto extension_complete() const -> bool override { return _inner->extension_complete(); }

                auto apply(const FiniteDiagram & alpha, Budget n) const -> FiniteDiagram override
                {
                    auto facts = _inner->apply(alpha, n).facts();
                    for (auto & f : facts)
                        if (f.relation == Relation::Lt)
                            std::swap(f.lhs, f.rhs);
                    return FiniteDiagram(Signature::LinearOrder, std::move(facts));
                }

                auto annotate(const FiniteDiagram & alpha, Budget n) const -> json override
                {
                    return _inner->annotate(alpha, n);
                }

            private:
                OperatorPtr _inner;
        };

        class Binary : public EnumerationOperator
        {
            public:
                Binary(OperatorPtr a, OperatorPtr b) : _a(std::move(a)), _b(std::move(b)) { }

                auto input_signature() const -> Signature override { return _a->input_signature(); }
                auto extension_complete() const -> bool override
                {
                    return _a->extension_complete() && _b->extension_complete();
                }

                auto annotate(const FiniteDiagram & alpha, Budget n) const -> json override
                {
                    auto left = _a->annotate(alpha, n), right = _b->annotate(alpha, n);
                    if (left.is_null() && right.is_null())
                        return nullptr;
                    json result = { { "left", left }, { "right", right } };
                    auto frozen = json::array();
                    tag_frozen(left, 0, frozen);
                    tag_frozen(right, 1, frozen);
                    if (! frozen.empty())
                        result["frozen"] = std::move(frozen);
                    return result;
                }

            protected:
                OperatorPtr _a, _b;
        };

        class Concatenate final : public Binary
        {
            public:
                using Binary::Binary;

                auto name() const -> string override { return "concat(" + _a->name() + "," + _b->name() + ")"; }
                auto output_signature() const -> Signature override { return Signature::LinearOrder; }

                auto apply(const FiniteDiagram & alpha, Budget n) const -> FiniteDiagram override
                {
                    auto lower = _a->apply(alpha, n), upper = _b->apply(alpha, n);
                    vector<Fact> facts;
                    tag_facts(lower, 0, facts);
                    tag_facts(upper, 1, facts);
                    for (auto x : extremal(lower, true))
                        for (auto y : extremal(upper, false))
                            facts.push_back(Fact::lt(join_tag(0, x), join_tag(1, y)));
                    return FiniteDiagram(Signature::LinearOrder, std::move(facts));
                }
        };

        class DisjointUnion final : public Binary
        {
            public:
                using Binary::Binary;

                auto name() const -> string override { return "union(" + _a->name() + "," + _b->name() + ")"; }
                auto output_signature() const -> Signature override { return Signature::Equivalence; }

                auto apply(const FiniteDiagram & alpha, Budget n) const -> FiniteDiagram override
                {
                    vector<Fact> facts;
                    tag_facts(_a->apply(alpha, n), 0, facts);
                    auto middle = facts.size();
                    tag_facts(_b->apply(alpha, n), 1, facts);
                    // tagging is monotone, so both halves are already sorted
                    std::inplace_merge(facts.begin(), facts.begin() + middle, facts.end());
                    return FiniteDiagram(Signature::Equivalence, std::move(facts));
                }
        };

        class IntervalFill final : public EnumerationOperator
        {
            public:
                IntervalFill(OperatorPtr inner, FillStyle style) : _inner(std::move(inner)), _style(style) { }

                auto name() const -> string override
                {
                    return _inner->name() + (_style == FillStyle::LeftClosed ? "|fill:left" : "|fill:right");
                }

                auto input_signature() const -> Signature override { return _inner->input_signature(); }
                auto output_signature() const -> Signature override { return Signature::LinearOrder; }

                auto apply(const FiniteDiagram & alpha, Budget n) const -> FiniteDiagram override
                {
                    auto source = _inner->apply(alpha, n);

                    // block layout by dense value, endpoint outside the range
                    double endpoint = _style == FillStyle::LeftClosed ? -1.0 : 1.0;
                    auto values = dense_sequence(n);
                    vector<std::pair<double, Element>> slots{ { endpoint * 1e300, 0 } };
                    for (Element j = 1 ; j <= n ; ++j)
                        slots.emplace_back(values[j - 1], j);
                    std::sort(slots.begin(), slots.end());

                    vector<Fact> facts;
                    std::map<Element, std::pair<Element, Element>> ends;
                    for (auto x : source.domain()) {
                        vector<Element> block;
                        for (auto & [_, j] : slots)
                            block.push_back(cantor_pair(x, j));
                        auto chain = chain_facts(block);
                        facts.insert(facts.end(), chain.begin(), chain.end());
                        ends.emplace(x, std::pair{ block.front(), block.back() });
                    }
                    for (auto & f : source.facts())
                        if (f.relation == Relation::Lt)
                            facts.push_back(Fact::lt(ends.at(f.lhs).second, ends.at(f.rhs).first));
                    return FiniteDiagram(Signature::LinearOrder, std::move(facts));
                }

                auto annotate(const FiniteDiagram & alpha, Budget n) const -> json override
                {
                    return _inner->annotate(alpha, n);
                }

            private:
                OperatorPtr _inner;
                FillStyle _style;
        };

        class Compose final : public EnumerationOperator
        {
            public:
                Compose(OperatorPtr first, OperatorPtr second) : _first(std::move(first)), _second(std::move(second)) { }

                auto name() const -> string override { return _first->name() + "|" + _second->name(); }
                auto input_signature() const -> Signature override { return _first->input_signature(); }
                auto output_signature() const -> Signature override { return _second->output_signature(); }
                auto extension_complete() const -> bool override
                {
                    return _first->extension_complete() && _second->extension_complete();
                }

                auto apply(const FiniteDiagram & alpha, Budget n) const -> FiniteDiagram override
                {
                    return _second->apply(_first->apply(alpha, n), n);
                }

                auto annotate(const FiniteDiagram & alpha, Budget n) const -> json override
                {
                    return _second->annotate(_first->apply(alpha, n), n);
                }

            private:
                OperatorPtr _first, _second;
        };
    }

    auto replicate(std::uint64_t q) -> OperatorPtr
    {
        if (q == 0)
            throw InvalidSpec("replicate needs q >= 1");
        return std::make_shared<Replicate>(q);
    }

    auto reverse(OperatorPtr op) -> OperatorPtr
    {
        require_order_output(op, "rev");
        return std::make_shared<Reverse>(std::move(op));
    }

    auto concatenate(OperatorPtr a, OperatorPtr b) -> OperatorPtr
    {
        require_order_output(a, "concat");
        require_order_output(b, "concat");
        if (a->input_signature() != b->input_signature())
            throw SignatureError("concat of operators with different input signatures");
        return std::make_shared<Concatenate>(std::move(a), std::move(b));
    }

    auto disjoint_union(OperatorPtr a, OperatorPtr b) -> OperatorPtr
    {
        if (a->output_signature() != Signature::Equivalence || b->output_signature() != Signature::Equivalence)
            throw SignatureError("union needs equivalence outputs");
        if (a->input_signature() != b->input_signature())
            throw SignatureError("union of operators with different input signatures");
        return std::make_shared<DisjointUnion>(std::move(a), std::move(b));
    }

    auto interval_fill(OperatorPtr op, FillStyle style) -> OperatorPtr
    {
        require_order_output(op, "fill");
        return std::make_shared<IntervalFill>(std::move(op), style);
    }

    auto compose(OperatorPtr first, OperatorPtr second) -> OperatorPtr
    {
        if (first->output_signature() != second->input_signature())
            throw SignatureError("cannot feed " + signature_name(first->output_signature()) + " output of "
                    + first->name() + " into " + second->name());
        return std::make_shared<Compose>(std::move(first), std::move(second));
    }
}
