/* vim: set sw=4 sts=4 et : */

#ifndef EMBEDLAB_GUARD_CLASS_OPERATORS_HH
#define EMBEDLAB_GUARD_CLASS_OPERATORS_HH 1

#include <embedlab/operator.hh>
#include <embedlab/sigma2.hh>

namespace embedlab
{
    /// n copies of every input class at budget n; copy c of element y is
    /// cantor_pair(c, y).
    auto class_multiplier() -> OperatorPtr;

    /**
     * For each existential tuple c and disjunct i, a class seeded by
     * cantor_pair(code(c), cantor_pair(i, k)) for k < seed size. Once the
     * input refutes the disjunct for c the class is inflated to n + 2
     * members. The result is passed through class_multiplier.
     *
     * The plain variant seeds one element per class, the dual variant two.
     * code(c) is the element itself for one variable, encode_tuple otherwise.
     */
    auto formula2eq(std::shared_ptr<const Sigma2Sentence>) -> OperatorPtr;
    auto formula2eq_dual(std::shared_ptr<const Sigma2Sentence>) -> OperatorPtr;

    /// union(formula2eq(phi), formula2eq_dual(psi)).
    auto pair_formula2eq(std::shared_ptr<const Sigma2Sentence> phi, std::shared_ptr<const Sigma2Sentence> psi)
        -> OperatorPtr;
}

#endif
