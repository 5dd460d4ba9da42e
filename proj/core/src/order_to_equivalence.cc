/* vim: set sw=4 sts=4 et : */

#include <embedlab/order_to_equivalence.hh>
#include <embedlab/errors.hh>

using nlohmann::json;
using std::vector;

namespace embedlab
{
    namespace
    {
        class OrderToEquivalence final : public EnumerationOperator
        {
            public:
                auto name() const -> std::string override { return "ord2eq"; }
                auto input_signature() const -> Signature override { return Signature::LinearOrder; }
                auto output_signature() const -> Signature override { return Signature::Equivalence; }

                auto apply(const FiniteDiagram & alpha, Budget n) const -> FiniteDiagram override
                {
                    if (! alpha.is_total())
                        throw InvalidInput("ord2eq needs a total order");
                    auto order = OrderView(alpha).order();

                    vector<vector<Element>> classes;
                    for (std::size_t i = 0 ; i < order.size() ; ++i) {
                        Element members = 1;
                        if (order.size() > 1 && i + 1 == order.size())
                            members = 2;
                        else if (i > 0 && i + 1 < order.size())
                            members = n + 2;
                        vector<Element> c;
                        for (Element j = 0 ; j < members ; ++j)
                            c.push_back(cantor_pair(order[i], j));
                        classes.push_back(std::move(c));
                    }
                    return FiniteDiagram(Signature::Equivalence, star_facts(classes));
                }

                auto annotate(const FiniteDiagram & alpha, Budget) const -> json override
                {
                    auto frozen = json::array();
                    if (alpha.is_total() && ! alpha.empty()) {
                        OrderView view(alpha);
                        frozen.push_back(cantor_pair(*view.least(), 0));
                        if (alpha.size() > 1)
                            frozen.push_back(cantor_pair(*view.greatest(), 0));
                    }
                    return json{ { "frozen", frozen } };
                }
        };
    }

    auto ord2eq() -> OperatorPtr
    {
        return std::make_shared<OrderToEquivalence>();
    }
}
