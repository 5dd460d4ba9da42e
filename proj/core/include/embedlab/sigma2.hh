/* vim: set sw=4 sts=4 et : */

#ifndef EMBEDLAB_GUARD_SIGMA2_HH
#define EMBEDLAB_GUARD_SIGMA2_HH 1

#include <embedlab/diagram.hh>

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace embedlab
{
    /// x<index> (existential) or y<index> (universal).
    struct Variable
    {
        bool universal = false;
        std::size_t index = 0;

        auto operator<=> (const Variable &) const = default;
    };

    enum class Atom
    {
        Lt,
        Sim,
        Eq
    };

    struct Literal
    {
        bool negated = false;
        Atom atom = Atom::Lt;
        Variable lhs, rhs;
    };

    /// forall y0 .. y(arity - 1): literal
    struct Conjunct
    {
        std::size_t universal_arity = 0;
        Literal literal;
    };

    struct Disjunct
    {
        std::vector<Conjunct> conjuncts;
    };

    /**
     * A disjunction of  exists x0 .. x(m - 1)  of a conjunction of universally
     * quantified literals.
     *
     * File format: `exists <m>`, then `disjunct <i>` headers (numbered from
     * 0 in order), each followed by `forall <n>: [not] <lt|sim|eq> <v> <v>`
     * lines. `#` starts a comment.
     */
    class Sigma2Sentence
    {
        public:
            Sigma2Sentence(std::size_t existential_arity, std::vector<Disjunct>);

            auto existential_arity() const -> std::size_t { return _arity; }
            auto disjuncts() const -> const std::vector<Disjunct> & { return _disjuncts; }

            /// The signature its atoms need; nullopt when only eq is used.
            auto signature() const -> std::optional<Signature>;

        private:
            std::size_t _arity;
            std::vector<Disjunct> _disjuncts;
    };

    auto parse_sigma2(std::string_view text) -> Sigma2Sentence;
    auto format_sigma2(const Sigma2Sentence &) -> std::string;
    auto to_string(const Literal &) -> std::string;

    /// Closure lookups on one finite diagram.
    class ClosureModel
    {
        public:
            explicit ClosureModel(const FiniteDiagram &);

            auto domain() const -> const std::vector<Element> & { return _diagram.domain(); }
            auto entails(Atom, Element a, Element b) const -> bool;

        private:
            FiniteDiagram _diagram;
            std::vector<std::vector<bool>> _less;
            std::optional<Partition> _partition;
    };

    struct Witness
    {
        std::size_t disjunct = 0;
        std::vector<Element> tuple;

        auto operator<=> (const Witness &) const = default;
    };

    /**
     * Closed-world witness test: every conjunct j <= conjunct_limit of the
     * disjunct holds for every assignment of universals from the domain, an
     * atom counting as true exactly when the diagram entails it.
     */
    auto is_witness(const Sigma2Sentence &, const ClosureModel &, std::size_t disjunct,
            const std::vector<Element> & tuple, std::size_t conjunct_limit) -> bool;

    /// All witnesses over the domain, by disjunct, then tuple lexicographically.
    auto witnesses(const Sigma2Sentence &, const ClosureModel &, std::size_t conjunct_limit) -> std::vector<Witness>;

    /**
     * Open-world refutation: some conjunct has an assignment under which the
     * diagram entails the complementary literal, so no extension can make
     * the tuple a witness for that disjunct.
     */
    auto is_refuted(const Sigma2Sentence &, const ClosureModel &, std::size_t disjunct,
            const std::vector<Element> & tuple) -> bool;

    /// Tuple comparison by length, then lexicographically on ids.
    auto godel_less(const std::vector<Element> &, const std::vector<Element> &) -> bool;
}

#endif
