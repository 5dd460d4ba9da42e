/* vim: set sw=4 sts=4 et : */

#ifndef EMBEDLAB_GUARD_AXIOM_TABLE_HH
#define EMBEDLAB_GUARD_AXIOM_TABLE_HH 1

#include <embedlab/operator.hh>

#include <string>
#include <string_view>
#include <vector>

namespace embedlab
{
    struct Axiom
    {
        FiniteDiagram antecedent;
        Fact consequent;
    };

    /**
     * An operator given by explicit (antecedent, fact) pairs over linear
     * orders. At budget n the output holds the consequents of the first n
     * axioms whose antecedent is included in the input.
     *
     * File format: `axiom: <fact>; <fact> ... => <fact>` per line, `#`
     * comments, and an optional `complete: true` line marking the table as
     * extension-complete.
     */
    class AxiomTable final : public EnumerationOperator
    {
        public:
            AxiomTable(std::string name, std::vector<Axiom>, bool complete);

            auto name() const -> std::string override { return _name; }
            auto input_signature() const -> Signature override { return Signature::LinearOrder; }
            auto output_signature() const -> Signature override { return Signature::LinearOrder; }
            auto extension_complete() const -> bool override { return _complete; }
            auto apply(const FiniteDiagram &, Budget) const -> FiniteDiagram override;

            auto axioms() const -> const std::vector<Axiom> & { return _axioms; }

        private:
            std::string _name;
            std::vector<Axiom> _axioms;
            bool _complete;
    };

    auto parse_axiom_table(std::string_view text, std::string name = "axioms") -> std::shared_ptr<const AxiomTable>;
}

#endif
