/* vim: set sw=4 sts=4 et : */

#ifndef EMBEDLAB_GUARD_FORCING_HH
#define EMBEDLAB_GUARD_FORCING_HH 1

#include <embedlab/operator.hh>

#include <optional>
#include <string>
#include <vector>

namespace embedlab
{
    enum class Outcome
    {
        Forced,
        Refuted,
        Unknown
    };

    auto outcome_name(Outcome) -> std::string;

    struct ForcingQuery
    {
        OperatorPtr op;
        FiniteDiagram alpha;
        Fact atom;
        std::size_t ext_bound = 0;
        Budget budget = 0;
    };

    struct ForcingVerdict
    {
        Outcome outcome = Outcome::Unknown;
        std::optional<FiniteDiagram> certificate;
    };

    /**
     * The extensions of one total alpha by at most ext_bound fresh elements
     * (ids max + 1, ...), each inserted at every position, with the
     * operator's output on each. Extensions are listed by number of fresh
     * elements, alpha itself first.
     */
    class ForcingContext
    {
        public:
            ForcingContext(OperatorPtr, const FiniteDiagram & alpha, std::size_t ext_bound, Budget);
            ~ForcingContext();
            ForcingContext(const ForcingContext &) = delete;
            auto operator= (const ForcingContext &) -> ForcingContext & = delete;

            auto output() const -> const FiniteDiagram &;
            auto extension_count() const -> std::size_t;

            /// Throws NotInOutput if an atom element is missing from the
            /// output on alpha, InvalidSpec for anything but an lt atom.
            auto query(const Fact & atom) const -> ForcingVerdict;

        private:
            struct Imp;
            std::unique_ptr<Imp> _imp;
    };

    auto bounded_force(const ForcingQuery &) -> ForcingVerdict;

    struct ForcedPermutation
    {
        FiniteDiagram alpha;
        std::vector<Element> order;
    };

    struct TrichotomyReport
    {
        std::size_t alphas = 0;
        std::size_t pairs = 0;
        std::size_t extensions = 0;
        std::vector<ForcedPermutation> permutations;
        std::vector<std::string> violations;
    };

    /**
     * Every total alpha on {0, ..., m - 1}, m <= max_alpha: each pair of
     * distinct output elements has exactly one forced order, the forced
     * facts form one total order, and that order is unchanged on the old
     * elements under every one-element extension of alpha.
     */
    auto trichotomy_scan(OperatorPtr, std::size_t max_alpha, std::size_t ext_bound, Budget) -> TrichotomyReport;

    struct AgreementReport
    {
        std::size_t alpha_beta_pairs = 0;
        std::size_t shared_pairs = 0;
        bool vacuous = true;
        std::vector<std::string> violations;
    };

    /// alpha and beta over disjoint subsets of {0, ..., 2 max_alpha - 1},
    /// each of size 1 to max_alpha.
    auto disjoint_agreement_scan(OperatorPtr, std::size_t max_alpha, std::size_t ext_bound, Budget) -> AgreementReport;

    struct FinitenessReport
    {
        bool stabilized = false;
        std::optional<Budget> stabilization_point;
        std::vector<std::size_t> sizes;
    };

    /**
     * Output sizes at budgets 0..ceiling. Stabilized when the size stops
     * changing at some budget no later than ceiling / 2. Constructions and
     * operators without linear-order output throw InvalidTarget.
     */
    auto finiteness_probe(const AnyOperator &, const FiniteDiagram & alpha, Budget ceiling) -> FinitenessReport;
}

#endif
