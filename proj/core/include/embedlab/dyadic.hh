/* vim: set sw=4 sts=4 et : */

#ifndef EMBEDLAB_GUARD_DYADIC_HH
#define EMBEDLAB_GUARD_DYADIC_HH 1

#include <cstddef>
#include <vector>

namespace embedlab
{
    /**
     * The fixed enumeration of a dense order without endpoints used for every
     * eta-type structure: v0 = 0, then step i adds a new maximum (i % 3 == 1),
     * a new minimum (i % 3 == 2) or the midpoint of the oldest gap not yet
     * bisected (i % 3 == 0). Gaps are processed first in, first out, so every
     * gap is eventually split and the limit is dense.
     *
     * All values are dyadic rationals of small depth, exact as doubles.
     */
    auto dense_sequence(std::size_t count) -> std::vector<double>;
}

#endif
