/* vim: set sw=4 sts=4 et : */

#include <embedlab/dyadic.hh>

#include <deque>
#include <utility>

namespace embedlab
{
    auto dense_sequence(std::size_t count) -> std::vector<double>
    {
        std::vector<double> values;
        values.reserve(count);
        if (count == 0)
            return values;

        values.push_back(0.0);
        double low = 0.0, high = 0.0;
        std::deque<std::pair<double, double>> gaps;

        for (std::size_t i = 1 ; i < count ; ++i) {
            switch (i % 3) {
                case 1:
                    gaps.emplace_back(high, high + 1.0);
                    high += 1.0;
                    values.push_back(high);
                    break;
                case 2:
                    gaps.emplace_back(low - 1.0, low);
                    low -= 1.0;
                    values.push_back(low);
                    break;
                default: {
                    auto [a, b] = gaps.front();
                    gaps.pop_front();
                    double mid = (a + b) / 2.0;
                    gaps.emplace_back(a, mid);
                    gaps.emplace_back(mid, b);
                    values.push_back(mid);
                    break;
                }
            }
        }
        return values;
    }
}
