/* vim: set sw=4 sts=4 et : */

#include <embedlab/pairing.hh>

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace embedlab
{
    namespace
    {
        auto checked_add(Element a, Element b) -> Element
        {
            Element r;
            if (__builtin_add_overflow(a, b, &r))
                throw std::overflow_error("element id overflow in pairing");
            return r;
        }

        auto checked_mul(Element a, Element b) -> Element
        {
            Element r;
            if (__builtin_mul_overflow(a, b, &r))
                throw std::overflow_error("element id overflow in pairing");
            return r;
        }

        auto triangle(Element w) -> Element
        {
            // w(w+1)/2 without overflowing the intermediate product
            return (w % 2 == 0) ? checked_mul(w / 2, checked_add(w, 1)) : checked_mul(w, checked_add(w, 1) / 2);
        }
    }

    auto cantor_pair(Element a, Element b) -> Element
    {
        return checked_add(triangle(checked_add(a, b)), b);
    }

    auto cantor_unpair(Element z) -> std::pair<Element, Element>
    {
        auto w = static_cast<Element>((std::sqrt(8.0L * static_cast<long double>(z) + 1.0L) - 1.0L) / 2.0L);
        // floating point can be off by one either way near perfect squares
        while (w > 0 && triangle(w) > z)
            --w;
        while (triangle(w + 1) <= z)
            ++w;
        Element b = z - triangle(w);
        return { w - b, b };
    }

    auto join_tag(unsigned side, Element x) -> Element
    {
        if (side > 1)
            throw std::invalid_argument("join side must be 0 or 1");
        return checked_add(checked_mul(x, 2), side);
    }

    auto join_untag(Element z) -> std::pair<unsigned, Element>
    {
        return { static_cast<unsigned>(z % 2), z / 2 };
    }

    namespace
    {
        // Tuples are strictly increasing, so parts x + 1 are distinct positive
        // integers: a strict partition of the weight. strict[r][m] counts
        // strict partitions of r with all parts >= m.
        constexpr Element max_weight = 400;

        auto strict_counts() -> const std::vector<std::vector<Element>> &
        {
            static const auto table = [] {
                std::vector<std::vector<Element>> q(max_weight + 1, std::vector<Element>(max_weight + 2, 0));
                for (Element m = max_weight + 2 ; m-- > 0 ; ) {
                    q[0][m] = 1;
                    for (Element r = 1 ; r <= max_weight ; ++r)
                        if (m >= 1 && m <= r)
                            q[r][m] = checked_add(q[r - m][m + 1], q[r][m + 1]);
                }
                return q;
            }();
            return table;
        }

        // number of tuples of weight < w
        auto lighter(Element w) -> Element
        {
            auto & q = strict_counts();
            Element total = 0;
            for (Element v = 0 ; v < w ; ++v)
                total = checked_add(total, q[v][1]);
            return total;
        }
    }

    auto encode_increasing_tuple(std::span<const Element> tuple) -> Element
    {
        Element weight = 0;
        for (std::size_t i = 0 ; i < tuple.size() ; ++i) {
            if (i > 0 && tuple[i] <= tuple[i - 1])
                throw std::invalid_argument("tuple is not strictly increasing");
            weight = checked_add(weight, checked_add(tuple[i], 1));
        }
        if (weight > max_weight)
            throw std::overflow_error("tuple weight " + std::to_string(weight) + " exceeds the encodable range");

        auto & q = strict_counts();
        Element code = lighter(weight), remaining = weight, least = 1;
        for (auto x : tuple) {
            for (Element p = least ; p < x + 1 ; ++p)
                code += q[remaining - p][p + 1];
            remaining -= x + 1;
            least = x + 2;
        }
        return code;
    }

    auto decode_increasing_tuple(Element code) -> std::vector<Element>
    {
        auto & q = strict_counts();
        Element weight = 0, base = 0;
        while (true) {
            if (weight > max_weight)
                throw std::overflow_error("tuple code out of range");
            if (code < base + q[weight][1])
                break;
            base += q[weight][1];
            ++weight;
        }

        std::vector<Element> result;
        Element rank = code - base, remaining = weight, least = 1;
        while (remaining > 0) {
            Element p = least;
            while (rank >= q[remaining - p][p + 1]) {
                rank -= q[remaining - p][p + 1];
                ++p;
            }
            result.push_back(p - 1);
            remaining -= p;
            least = p + 1;
        }
        return result;
    }

    auto encode_tuple(std::span<const Element> tuple) -> Element
    {
        if (tuple.empty())
            return 0;
        Element code = tuple.back();
        for (std::size_t i = tuple.size() - 1 ; i > 0 ; --i)
            code = cantor_pair(tuple[i - 1], code);
        return code;
    }
}
