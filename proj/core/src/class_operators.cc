/* vim: set sw=4 sts=4 et : */

#include <embedlab/class_operators.hh>
#include <embedlab/combinators.hh>
#include <embedlab/errors.hh>

#include <algorithm>
#include <functional>

using std::size_t;
using std::vector;

namespace embedlab
{
    namespace
    {
        class ClassMultiplier final : public EnumerationOperator
        {
            public:
                auto name() const -> std::string override { return "class_multiplier"; }
                auto input_signature() const -> Signature override { return Signature::Equivalence; }
                auto output_signature() const -> Signature override { return Signature::Equivalence; }

                auto apply(const FiniteDiagram & alpha, Budget n) const -> FiniteDiagram override
                {
                    auto classes = Partition(alpha).classes();
                    vector<vector<Element>> copies;
                    for (Budget c = 0 ; c < n ; ++c)
                        for (auto & members : classes) {
                            vector<Element> copy;
                            for (auto y : members)
                                copy.push_back(cantor_pair(c, y));
                            copies.push_back(std::move(copy));
                        }
                    std::sort(copies.begin(), copies.end());
                    return FiniteDiagram(Signature::Equivalence, star_facts(copies));
                }
        };

        class FormulaSeeds final : public EnumerationOperator
        {
            public:
                FormulaSeeds(std::shared_ptr<const Sigma2Sentence> phi, Element seed_size, Signature input) :
                    _phi(std::move(phi)), _seed_size(seed_size), _input(input)
                {
                }

                auto name() const -> std::string override
                {
                    return _seed_size == 1 ? "formula2eq_seeds" : "formula2eq_dual_seeds";
                }

                auto input_signature() const -> Signature override { return _input; }
                auto output_signature() const -> Signature override { return Signature::Equivalence; }

                auto apply(const FiniteDiagram & alpha, Budget n) const -> FiniteDiagram override
                {
                    ClosureModel model(alpha);
                    auto arity = _phi->existential_arity();
                    auto & dom = alpha.domain();
                    vector<vector<Element>> classes;
                    vector<Element> tuple(arity);

                    std::function<void (size_t)> each = [&] (size_t at) {
                        if (at < arity) {
                            for (auto x : dom) {
                                tuple[at] = x;
                                each(at + 1);
                            }
                            return;
                        }
                        auto code = arity == 1 ? tuple[0] : encode_tuple(tuple);
                        for (size_t i = 0 ; i < _phi->disjuncts().size() ; ++i) {
                            auto size = is_refuted(*_phi, model, i, tuple) ? n + 2 : _seed_size;
                            vector<Element> members;
                            for (Element k = 0 ; k < size ; ++k)
                                members.push_back(cantor_pair(code, cantor_pair(i, k)));
                            classes.push_back(std::move(members));
                        }
                    };
                    if (arity == 0 || ! dom.empty())
                        each(0);
                    return FiniteDiagram(Signature::Equivalence, star_facts(classes));
                }

            private:
                std::shared_ptr<const Sigma2Sentence> _phi;
                Element _seed_size;
                Signature _input;
        };

        class Named final : public EnumerationOperator
        {
            public:
                Named(std::string name, OperatorPtr inner) : _name(std::move(name)), _inner(std::move(inner)) { }

                auto name() const -> std::string override { return _name; }
                auto input_signature() const -> Signature override { return _inner->input_signature(); }
                auto output_signature() const -> Signature override { return _inner->output_signature(); }
                auto apply(const FiniteDiagram & alpha, Budget n) const -> FiniteDiagram override { return _inner->apply(alpha, n); }
                auto annotate(const FiniteDiagram & alpha, Budget n) const -> nlohmann::json override { return _inner->annotate(alpha, n); }

            private:
                std::string _name;
                OperatorPtr _inner;
        };

        auto build(std::shared_ptr<const Sigma2Sentence> phi, Element seed_size, const std::string & name) -> OperatorPtr
        {
            if (! phi)
                throw InvalidSpec(name + " needs a sentence");
            auto sig = phi->signature().value_or(Signature::LinearOrder);
            auto seeds = std::make_shared<FormulaSeeds>(std::move(phi), seed_size, sig);
            return std::make_shared<Named>(name, compose(seeds, class_multiplier()));
        }
    }

    auto class_multiplier() -> OperatorPtr
    {
        return std::make_shared<ClassMultiplier>();
    }

    auto formula2eq(std::shared_ptr<const Sigma2Sentence> phi) -> OperatorPtr
    {
        return build(std::move(phi), 1, "formula2eq");
    }

    auto formula2eq_dual(std::shared_ptr<const Sigma2Sentence> phi) -> OperatorPtr
    {
        return build(std::move(phi), 2, "formula2eq_dual");
    }

    auto pair_formula2eq(std::shared_ptr<const Sigma2Sentence> phi, std::shared_ptr<const Sigma2Sentence> psi) -> OperatorPtr
    {
        auto a = formula2eq(std::move(phi)), b = formula2eq_dual(std::move(psi));
        if (a->input_signature() != b->input_signature())
            throw SignatureError("pair_formula2eq sentences use different signatures");
        return std::make_shared<Named>("pair_formula2eq", disjoint_union(a, b));
    }
}
