/* vim: set sw=4 sts=4 et : */

#ifndef EMBEDLAB_GUARD_EQUIVALENCE_TO_ORDER_HH
#define EMBEDLAB_GUARD_EQUIVALENCE_TO_ORDER_HH 1

#include <embedlab/operator.hh>

#include <vector>

namespace embedlab
{
    /// Proper extensions come first; otherwise the first difference decides.
    auto kleene_brouwer_less(const std::vector<Element> & a, const std::vector<Element> & b) -> bool;

    /**
     * Strictly increasing tuples of input elements whose entries before the
     * last have class size >= interior, and whose last entry has class size
     * >= last. Budget n admits tuples with sum of (x + 1) at most n.
     */
    auto admissible_tuples(const FiniteDiagram &, std::size_t interior, std::size_t last, Budget)
        -> std::vector<std::vector<Element>>;

    /// Tuples with interior classes of size >= 2, in Kleene-Brouwer order.
    /// Elements are encode_increasing_tuple codes.
    auto eq2ord_v1() -> OperatorPtr;

    /// Interior classes >= 3 and a last class >= 2, in reversed
    /// Kleene-Brouwer order.
    auto eq2ord_v2() -> OperatorPtr;
}

#endif
