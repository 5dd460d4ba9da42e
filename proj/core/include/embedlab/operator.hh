/* vim: set sw=4 sts=4 et : */

#ifndef EMBEDLAB_GUARD_OPERATOR_HH
#define EMBEDLAB_GUARD_OPERATOR_HH 1

#include <embedlab/diagram.hh>

#include <nlohmann/json.hpp>

#include <cstdint>
#include <memory>
#include <string>
#include <variant>
#include <vector>

namespace embedlab
{
    using Budget = std::uint64_t;

    /**
     * A budgeted enumeration operator. apply() must be monotone in both the
     * input (under closure inclusion) and the budget, and must only emit
     * facts the output signature admits.
     */
    class EnumerationOperator
    {
        public:
            virtual ~EnumerationOperator() = default;

            virtual auto name() const -> std::string = 0;
            virtual auto input_signature() const -> Signature = 0;
            virtual auto output_signature() const -> Signature = 0;

            /// Unchecked evaluation; use evaluate() from outside.
            virtual auto apply(const FiniteDiagram & alpha, Budget) const -> FiniteDiagram = 0;

            /// Per-evaluation state worth logging (frozen classes and the like).
            virtual auto annotate(const FiniteDiagram &, Budget) const -> nlohmann::json;

            /// True when the output on any extension is determined by the
            /// bounded extension search used for forcing.
            virtual auto extension_complete() const -> bool;
    };

    using OperatorPtr = std::shared_ptr<const EnumerationOperator>;

    /// Checks the input signature and consistency, then applies.
    auto evaluate(const EnumerationOperator &, const FiniteDiagram & alpha, Budget) -> FiniteDiagram;

    struct StepResult
    {
        std::vector<Fact> new_facts;
        nlohmann::json annotation;
    };

    /// Per-run mutable state of a stage-wise construction.
    class ConstructionState
    {
        public:
            virtual ~ConstructionState() = default;

            /// Consumes the next cumulative input stage.
            virtual auto step(const FiniteDiagram & stage) -> StepResult = 0;
    };

    class TuringConstruction
    {
        public:
            virtual ~TuringConstruction() = default;

            virtual auto name() const -> std::string = 0;
            virtual auto input_signature() const -> Signature = 0;
            virtual auto output_signature() const -> Signature = 0;
            virtual auto init() const -> std::unique_ptr<ConstructionState> = 0;
    };

    using ConstructionPtr = std::shared_ptr<const TuringConstruction>;

    using AnyOperator = std::variant<OperatorPtr, ConstructionPtr>;

    auto operator_name(const AnyOperator &) -> std::string;
    auto input_signature(const AnyOperator &) -> Signature;
    auto output_signature(const AnyOperator &) -> Signature;

    /// Chain generators for a list already in increasing order.
    auto chain_facts(const std::vector<Element> & order) -> std::vector<Fact>;

    /// Star generators (on the least member) for each class.
    auto star_facts(const std::vector<std::vector<Element>> & classes) -> std::vector<Fact>;
}

#endif
