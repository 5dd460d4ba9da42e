/* vim: set sw=4 sts=4 et : */

#ifndef EMBEDLAB_GUARD_DIAGRAM_HH
#define EMBEDLAB_GUARD_DIAGRAM_HH 1

#include <embedlab/pairing.hh>

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace embedlab
{
    enum class Signature
    {
        LinearOrder,
        Equivalence
    };

    auto signature_name(Signature) -> std::string;
    auto parse_signature(std::string_view) -> Signature;

    enum class Relation : std::uint8_t
    {
        El,
        Lt,
        Sim
    };

    /// One atomic fact. `el` keeps rhs = 0; `sim` is stored with lhs <= rhs.
    struct Fact
    {
        Relation relation;
        Element lhs;
        Element rhs;

        static auto el(Element x) -> Fact;
        static auto lt(Element a, Element b) -> Fact;
        static auto sim(Element a, Element b) -> Fact;

        auto operator<=> (const Fact &) const = default;
    };

    auto to_string(const Fact &) -> std::string;

    /// Parses "el a", "lt a b" or "sim a b"; throws ParseError.
    auto parse_fact(std::string_view) -> Fact;

    auto admits(Signature, Relation) -> bool;

    /**
     * A finite set of atomic facts over naturals. The stored facts are
     * generators: order questions are answered on the transitive closure of
     * lt, class questions on the equivalence closure of sim. The domain is
     * every element occurring in some fact.
     *
     * Construction rejects relations the signature does not admit
     * (SignatureError) and reflexive lt facts (InconsistentDiagram). Longer
     * lt cycles are allowed in the value and reported by is_consistent(), so
     * callers decide whether an inconsistent set is an error.
     */
    class FiniteDiagram
    {
        public:
            explicit FiniteDiagram(Signature = Signature::LinearOrder);
            FiniteDiagram(Signature, std::vector<Fact>);

            auto signature() const -> Signature { return _signature; }
            auto facts() const -> const std::vector<Fact> & { return _facts; }
            auto domain() const -> const std::vector<Element> & { return _domain; }
            auto size() const -> std::size_t { return _domain.size(); }
            auto empty() const -> bool { return _domain.empty(); }

            auto contains(const Fact &) const -> bool;
            auto has_element(Element) const -> bool;

            auto is_consistent() const -> bool;

            /// Every pair of distinct domain elements is comparable in the
            /// lt closure (always false for equivalence diagrams with more
            /// than one element, trivially true for at most one element).
            auto is_total() const -> bool;

            /// Closure membership of a single fact; use OrderView or
            /// Partition for repeated queries.
            auto entails(const Fact &) const -> bool;

            auto united_with(const std::vector<Fact> &) const -> FiniteDiagram;

            /// The induced substructure on `keep`, re-expressed with chain
            /// (linear orders) or star (equivalences) generators.
            auto restricted_to(const std::vector<Element> & keep) const -> FiniteDiagram;

            auto operator== (const FiniteDiagram &) const -> bool = default;

        private:
            Signature _signature;
            std::vector<Fact> _facts;
            std::vector<Element> _domain;
    };

    /// Closure inclusion: every element and every fact of `smaller` is in the
    /// closure of `larger`.
    auto included_in(const FiniteDiagram & smaller, const FiniteDiagram & larger) -> bool;

    /// First fact of `smaller` missing from the closure of `larger`, if any.
    auto first_missing(const FiniteDiagram & smaller, const FiniteDiagram & larger) -> std::optional<Fact>;

    /// Ranks of a total linear-order diagram. Throws InvalidInput when the
    /// diagram is not a consistent total order.
    class OrderView
    {
        public:
            explicit OrderView(const FiniteDiagram &);

            auto order() const & -> const std::vector<Element> & { return _order; }
            auto order() && -> std::vector<Element> { return std::move(_order); }
            auto rank(Element) const -> std::optional<std::size_t>;
            auto less(Element a, Element b) const -> bool;
            auto least() const -> std::optional<Element>;
            auto greatest() const -> std::optional<Element>;

            /// The other order is a suborder of this one.
            auto extends(const OrderView &) const -> bool;

        private:
            std::vector<Element> _order;
            std::unordered_map<Element, std::size_t> _rank;
    };

    /// Topological order of the lt generators, nullopt on a cycle. When the
    /// diagram is total this is its unique order.
    auto topological_order(const FiniteDiagram &) -> std::optional<std::vector<Element>>;

    /// Equivalence closure of the sim generators.
    class Partition
    {
        public:
            explicit Partition(const FiniteDiagram &);

            /// Least element of x's class; x itself if x is unknown.
            auto representative(Element x) const -> Element;
            auto class_size(Element x) const -> std::size_t;
            auto same(Element a, Element b) const -> bool;

            /// Classes sorted internally and by least element.
            auto classes() const -> std::vector<std::vector<Element>>;

            /// Every element of the other partition is here, and each of
            /// its classes lies inside one class here.
            auto refined_by(const Partition &) const -> bool;

        private:
            auto index(Element x) const -> std::optional<std::size_t>;

            std::vector<Element> _elements;
            std::vector<std::size_t> _root;
            std::vector<std::size_t> _size;
    };

    /// Diagram text format: one fact per line, `#` comments, blank lines
    /// ignored. The signature is taken from the facts (lt or sim); a diagram
    /// of bare `el` facts defaults to `hint`. Inconsistent fact sets throw
    /// InconsistentDiagram.
    auto parse_diagram(std::string_view text, Signature hint = Signature::LinearOrder) -> FiniteDiagram;
    auto format_diagram(const FiniteDiagram &) -> std::string;

    /// `;`-separated inline fact list, as used by axiom tables and the CLI.
    auto parse_diagram_literal(std::string_view text, Signature hint = Signature::LinearOrder) -> FiniteDiagram;
    auto format_diagram_literal(const FiniteDiagram &) -> std::string;

    /// Convenience for tests and generators: the chain x0 < x1 < ... .
    auto chain_diagram(const std::vector<Element> & order) -> FiniteDiagram;

    /// Star generators for a partition given as classes.
    auto partition_diagram(const std::vector<std::vector<Element>> & classes) -> FiniteDiagram;
}

#endif
