/* vim: set sw=4 sts=4 et : */

#ifndef EMBEDLAB_GUARD_REGISTRY_HH
#define EMBEDLAB_GUARD_REGISTRY_HH 1

#include <embedlab/axiom_table.hh>
#include <embedlab/operator.hh>
#include <embedlab/sigma2.hh>
#include <embedlab/stream.hh>

#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace embedlab
{
    /// Whatever named operators need beyond their own parameters.
    struct RegistryContext
    {
        std::shared_ptr<const Sigma2Sentence> phi;
        std::shared_ptr<const Sigma2Sentence> psi;
        std::shared_ptr<const AxiomTable> axioms;
        CanonicalSpec target_a{ Family::OmegaK, 2, { } };
        CanonicalSpec target_b{ Family::OmegaStarK, 2, { } };
        std::size_t target_stages = 256;
    };

    /**
     * Operator expressions:
     *
     *   expr  := term ('|' stage)*
     *   stage := 'fill:left' | 'fill:right' | 'rev' | term
     *   term  := name[':' param] | 'concat(' expr ',' expr ')'
     *          | 'union(' expr ',' expr ')' | 'rev(' expr ')' | '(' expr ')'
     *
     * Names: replicate:<q>, ord2eq, eq2ord_v1, eq2ord_v2, class_multiplier,
     * formula2eq, formula2eq_dual, pair_formula2eq, axioms, and the
     * constructions phi_pair and phi_sigma2 (whole expressions only).
     * Unknown names throw UnknownOperator; bad parameters InvalidSpec.
     */
    auto parse_operator(std::string_view expression, const RegistryContext & = { }) -> AnyOperator;

    /// Same, but rejects constructions.
    auto parse_enumeration_operator(std::string_view expression, const RegistryContext & = { }) -> OperatorPtr;

    auto operator_names() -> std::vector<std::string>;
}

#endif
