/* vim: set sw=4 sts=4 et : */

#ifndef EMBEDLAB_GUARD_ORDER_TO_EQUIVALENCE_HH
#define EMBEDLAB_GUARD_ORDER_TO_EQUIVALENCE_HH 1

#include <embedlab/operator.hh>

namespace embedlab
{
    /**
     * Linear orders to equivalence structures. Output element y(x, j) is
     * cantor_pair(x, j). On a total input the least element's class is
     * {y(x, 0)}, the greatest element's class is {y(x, 0), y(x, 1)}, and each
     * interior class has n + 2 members at budget n. A one-element input gives
     * the single element y(x, 0).
     *
     * annotate() lists the representatives of the two pinned classes under
     * "frozen".
     */
    auto ord2eq() -> OperatorPtr;
}

#endif
