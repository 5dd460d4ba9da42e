/* vim: set sw=4 sts=4 et : */

#ifndef EMBEDLAB_GUARD_PAIRING_HH
#define EMBEDLAB_GUARD_PAIRING_HH 1

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace embedlab
{
    using Element = std::uint64_t;

    // Arithmetic here throws std::overflow_error rather than wrapping: a
    // wrapped id would silently merge two distinct output elements.

    /// Cantor diagonal pairing, (a + b)(a + b + 1) / 2 + b.
    auto cantor_pair(Element a, Element b) -> Element;
    auto cantor_unpair(Element z) -> std::pair<Element, Element>;

    /// Join tagging for the two-sided combinators: 2x + side, side in {0, 1}.
    auto join_tag(unsigned side, Element x) -> Element;
    auto join_untag(Element z) -> std::pair<unsigned, Element>;

    /// Strictly increasing tuples, ranked by weight (sum of x + 1) and then
/// lexicographically. A bijection with the naturals up to weight 400.
    auto encode_increasing_tuple(std::span<const Element> tuple) -> Element;
    auto decode_increasing_tuple(Element code) -> std::vector<Element>;

    /// Arbitrary tuples, folded right with cantor_pair; the empty tuple is 0
    /// and a singleton is its element (arity is always known to the caller).
    auto encode_tuple(std::span<const Element> tuple) -> Element;

    /// The "(i, a)" bookkeeping for copied elements.
    struct TaggedElement
    {
        Element copy_index;
        Element source;

        auto encoded() const -> Element
        {
            return cantor_pair(copy_index, source);
        }

        static auto decode(Element z) -> TaggedElement
        {
            auto [c, s] = cantor_unpair(z);
            return TaggedElement{ c, s };
        }

        auto operator<=> (const TaggedElement &) const = default;
    };
}

#endif
