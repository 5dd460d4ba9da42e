/* vim: set sw=4 sts=4 et : */

#ifndef EMBEDLAB_GUARD_COMBINATORS_HH
#define EMBEDLAB_GUARD_COMBINATORS_HH 1

#include <embedlab/operator.hh>

#include <cstdint>

namespace embedlab
{
    /// q copies of a total input order in series; copy i lies below copy
    /// i + 1. Elements are TaggedElement{ copy, source }.
    auto replicate(std::uint64_t q) -> OperatorPtr;

    /// Swaps every output lt fact.
    auto reverse(OperatorPtr) -> OperatorPtr;

    /// The first output below the second, on join-tagged elements 2x and 2x + 1.
    auto concatenate(OperatorPtr, OperatorPtr) -> OperatorPtr;

    /// Join-tagged union of two equivalence outputs.
    auto disjoint_union(OperatorPtr, OperatorPtr) -> OperatorPtr;

    enum class FillStyle
    {
        LeftClosed,
        RightClosed
    };

    /**
     * Replaces each output element x by a block of 1 + n elements
     * cantor_pair(x, j) at budget n: j = 0 is the closed endpoint and j >= 1
     * takes the (j - 1)-th value of the dense enumeration. Blocks are ordered
     * as their sources.
     */
    auto interval_fill(OperatorPtr, FillStyle) -> OperatorPtr;

    /// Applies `second` to the output of `first`, both at the same budget.
    auto compose(OperatorPtr first, OperatorPtr second) -> OperatorPtr;
}

#endif
