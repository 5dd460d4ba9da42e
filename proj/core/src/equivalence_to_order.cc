/* vim: set sw=4 sts=4 et : */

#include <embedlab/equivalence_to_order.hh>

#include <algorithm>
#include <functional>

using std::size_t;
using std::vector;

namespace embedlab
{
    namespace
    {
        class EquivalenceToOrder final : public EnumerationOperator
        {
            public:
                EquivalenceToOrder(size_t interior, size_t last, bool reversed) :
                    _interior(interior), _last(last), _reversed(reversed)
                {
                }

                auto name() const -> std::string override { return _reversed ? "eq2ord_v2" : "eq2ord_v1"; }
                auto input_signature() const -> Signature override { return Signature::Equivalence; }
                auto output_signature() const -> Signature override { return Signature::LinearOrder; }

                auto apply(const FiniteDiagram & alpha, Budget n) const -> FiniteDiagram override
                {
                    auto tuples = admissible_tuples(alpha, _interior, _last, n);
                    std::sort(tuples.begin(), tuples.end(), kleene_brouwer_less);
                    if (_reversed)
                        std::reverse(tuples.begin(), tuples.end());
                    vector<Element> order;
                    for (auto & t : tuples)
                        order.push_back(encode_increasing_tuple(t));
                    return FiniteDiagram(Signature::LinearOrder, chain_facts(order));
                }

            private:
                size_t _interior, _last;
                bool _reversed;
        };
    }

    auto kleene_brouwer_less(const vector<Element> & a, const vector<Element> & b) -> bool
    {
        for (size_t i = 0 ; i < a.size() || i < b.size() ; ++i) {
            if (i == a.size())
                return false;
            if (i == b.size())
                return true;
            if (a[i] != b[i])
                return a[i] < b[i];
        }
        return false;
    }

    auto admissible_tuples(const FiniteDiagram & alpha, size_t interior, size_t last, Budget n) -> vector<vector<Element>>
    {
        Partition p(alpha);
        vector<Element> dom;
        for (auto x : alpha.domain())
            if (x < n)
                dom.push_back(x);

        vector<vector<Element>> result;
        vector<Element> prefix;
        std::function<void (size_t, Budget)> extend = [&] (size_t from, Budget remaining) {
            for (size_t i = from ; i < dom.size() && dom[i] + 1 <= remaining ; ++i) {
                auto size = p.class_size(dom[i]);
                prefix.push_back(dom[i]);
                if (size >= last)
                    result.push_back(prefix);
                if (size >= interior)
                    extend(i + 1, remaining - dom[i] - 1);
                prefix.pop_back();
            }
        };
        extend(0, n);
        return result;
    }

    auto eq2ord_v1() -> OperatorPtr
    {
        return std::make_shared<EquivalenceToOrder>(2, 1, false);
    }

    auto eq2ord_v2() -> OperatorPtr
    {
        return std::make_shared<EquivalenceToOrder>(3, 2, true);
    }
}
