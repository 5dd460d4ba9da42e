/* vim: set sw=4 sts=4 et : */

#include <embedlab/diagram.hh>
#include <embedlab/errors.hh>

#include <algorithm>
#include <charconv>
#include <deque>
#include <numeric>
#include <sstream>
#include <unordered_set>

using std::optional;
using std::size_t;
using std::string;
using std::string_view;
using std::vector;

namespace embedlab
{
    auto signature_name(Signature s) -> string
    {
        switch (s) {
            case Signature::LinearOrder: return "linear_order";
            case Signature::Equivalence: return "equivalence";
        }
        return "?";
    }

    auto parse_signature(string_view s) -> Signature
    {
        if (s == "linear_order" || s == "lo")
            return Signature::LinearOrder;
        if (s == "equivalence" || s == "eq")
            return Signature::Equivalence;
        throw ParseError("unknown signature '" + string(s) + "'");
    }

    auto Fact::el(Element x) -> Fact
    {
        return Fact{ Relation::El, x, 0 };
    }

    auto Fact::lt(Element a, Element b) -> Fact
    {
        return Fact{ Relation::Lt, a, b };
    }

    auto Fact::sim(Element a, Element b) -> Fact
    {
        return Fact{ Relation::Sim, std::min(a, b), std::max(a, b) };
    }

    auto to_string(const Fact & f) -> string
    {
        switch (f.relation) {
            case Relation::El:  return "el " + std::to_string(f.lhs);
            case Relation::Lt:  return "lt " + std::to_string(f.lhs) + " " + std::to_string(f.rhs);
            case Relation::Sim: return "sim " + std::to_string(f.lhs) + " " + std::to_string(f.rhs);
        }
        return "?";
    }

    namespace
    {
        auto split_words(string_view text) -> vector<string_view>
        {
            vector<string_view> words;
            size_t i = 0;
            while (i < text.size()) {
                while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i])))
                    ++i;
                size_t j = i;
                while (j < text.size() && ! std::isspace(static_cast<unsigned char>(text[j])))
                    ++j;
                if (j > i)
                    words.push_back(text.substr(i, j - i));
                i = j;
            }
            return words;
        }

        auto parse_natural(string_view word) -> Element
        {
            Element value = 0;
            auto [ptr, ec] = std::from_chars(word.data(), word.data() + word.size(), value);
            if (ec != std::errc{ } || ptr != word.data() + word.size())
                throw ParseError("expected a natural number, got '" + string(word) + "'");
            return value;
        }

        auto strip_comment(string_view line) -> string_view
        {
            auto hash = std::find(line.begin(), line.end(), '#');
            return line.substr(0, hash - line.begin());
        }

        auto index_of(const vector<Element> & domain, Element x) -> size_t
        {
            return static_cast<size_t>(std::lower_bound(domain.begin(), domain.end(), x) - domain.begin());
        }

        // lt generators as adjacency lists over positions in the sorted domain
        auto successors(const FiniteDiagram & d) -> vector<vector<size_t>>
        {
            vector<vector<size_t>> succ(d.domain().size());
            for (auto & f : d.facts())
                if (f.relation == Relation::Lt)
                    succ[index_of(d.domain(), f.lhs)].push_back(index_of(d.domain(), f.rhs));
            return succ;
        }

        // Kahn's algorithm; also reports whether the order was forced at every step
        auto kahn(const FiniteDiagram & d, bool & unique) -> optional<vector<Element>>
        {
            auto succ = successors(d);
            vector<size_t> indegree(succ.size(), 0);
            for (auto & s : succ)
                for (auto t : s)
                    ++indegree[t];

            std::deque<size_t> ready;
            for (size_t i = 0 ; i < succ.size() ; ++i)
                if (indegree[i] == 0)
                    ready.push_back(i);

            unique = true;
            vector<Element> order;
            order.reserve(succ.size());
            while (! ready.empty()) {
                if (ready.size() > 1)
                    unique = false;
                auto i = ready.front();
                ready.pop_front();
                order.push_back(d.domain()[i]);
                for (auto t : succ[i])
                    if (--indegree[t] == 0)
                        ready.push_back(t);
            }

            if (order.size() != succ.size())
                return std::nullopt;
            return order;
        }

        auto reachable_from(const vector<vector<size_t>> & succ, size_t start) -> vector<bool>
        {
            vector<bool> seen(succ.size(), false);
            vector<size_t> todo{ start };
            while (! todo.empty()) {
                auto i = todo.back();
                todo.pop_back();
                for (auto t : succ[i])
                    if (! seen[t]) {
                        seen[t] = true;
                        todo.push_back(t);
                    }
            }
            return seen;
        }
    }

    auto parse_fact(string_view text) -> Fact
    {
        auto words = split_words(text);
        if (words.empty())
            throw ParseError("empty fact");

        auto arity_check = [&] (size_t want) {
            if (words.size() != want + 1)
                throw ParseError("relation '" + string(words[0]) + "' takes " + std::to_string(want)
                        + " argument(s), got " + std::to_string(words.size() - 1));
        };

        if (words[0] == "el") {
            arity_check(1);
            return Fact::el(parse_natural(words[1]));
        }
        else if (words[0] == "lt") {
            arity_check(2);
            return Fact::lt(parse_natural(words[1]), parse_natural(words[2]));
        }
        else if (words[0] == "sim") {
            arity_check(2);
            return Fact::sim(parse_natural(words[1]), parse_natural(words[2]));
        }
        throw ParseError("unknown relation '" + string(words[0]) + "'");
    }

    auto admits(Signature s, Relation r) -> bool
    {
        switch (r) {
            case Relation::El:  return true;
            case Relation::Lt:  return s == Signature::LinearOrder;
            case Relation::Sim: return s == Signature::Equivalence;
        }
        return false;
    }

    FiniteDiagram::FiniteDiagram(Signature s) :
        _signature(s)
    {
    }

    FiniteDiagram::FiniteDiagram(Signature s, vector<Fact> facts) :
        _signature(s),
        _facts(std::move(facts))
    {
        for (auto & f : _facts) {
            if (! admits(_signature, f.relation))
                throw SignatureError("fact '" + to_string(f) + "' not admitted by " + signature_name(_signature));
            if (f.relation == Relation::Lt && f.lhs == f.rhs)
                throw InconsistentDiagram("reflexive fact '" + to_string(f) + "'");
            if (f.relation == Relation::Sim && f.lhs > f.rhs)
                std::swap(f.lhs, f.rhs);
        }
        if (! std::is_sorted(_facts.begin(), _facts.end()))
            std::sort(_facts.begin(), _facts.end());
        _facts.erase(std::unique(_facts.begin(), _facts.end()), _facts.end());

        _domain.reserve(_facts.size() + 1);
        for (auto & f : _facts) {
            _domain.push_back(f.lhs);
            if (f.relation != Relation::El)
                _domain.push_back(f.rhs);
        }
        std::sort(_domain.begin(), _domain.end());
        _domain.erase(std::unique(_domain.begin(), _domain.end()), _domain.end());
    }

    auto FiniteDiagram::contains(const Fact & f) const -> bool
    {
        auto g = f;
        if (g.relation == Relation::Sim && g.lhs > g.rhs)
            std::swap(g.lhs, g.rhs);
        return std::binary_search(_facts.begin(), _facts.end(), g);
    }

    auto FiniteDiagram::has_element(Element x) const -> bool
    {
        return std::binary_search(_domain.begin(), _domain.end(), x);
    }

    auto FiniteDiagram::is_consistent() const -> bool
    {
        if (_signature == Signature::Equivalence)
            return true;
        bool unique;
        return kahn(*this, unique).has_value();
    }

    auto FiniteDiagram::is_total() const -> bool
    {
        if (_domain.size() <= 1)
            return true;
        if (_signature != Signature::LinearOrder)
            return false;
        bool unique;
        auto order = kahn(*this, unique);
        return order && unique;
    }

    auto FiniteDiagram::entails(const Fact & f) const -> bool
    {
        switch (f.relation) {
            case Relation::El:
                return has_element(f.lhs);
            case Relation::Lt: {
                if (_signature != Signature::LinearOrder || ! has_element(f.lhs) || ! has_element(f.rhs) || f.lhs == f.rhs)
                    return false;
                auto succ = successors(*this);
                return reachable_from(succ, index_of(_domain, f.lhs))[index_of(_domain, f.rhs)];
            }
            case Relation::Sim:
                if (_signature != Signature::Equivalence || ! has_element(f.lhs) || ! has_element(f.rhs))
                    return false;
                return Partition(*this).same(f.lhs, f.rhs);
        }
        return false;
    }

    auto FiniteDiagram::united_with(const vector<Fact> & more) const -> FiniteDiagram
    {
        auto all = _facts;
        all.insert(all.end(), more.begin(), more.end());
        return FiniteDiagram(_signature, std::move(all));
    }

    auto FiniteDiagram::restricted_to(const vector<Element> & keep_unsorted) const -> FiniteDiagram
    {
        auto keep = keep_unsorted;
        std::sort(keep.begin(), keep.end());
        keep.erase(std::unique(keep.begin(), keep.end()), keep.end());
        auto kept = [&] (Element x) { return std::binary_search(keep.begin(), keep.end(), x); };

        vector<Element> present;
        for (auto x : _domain)
            if (kept(x))
                present.push_back(x);

        if (_signature == Signature::Equivalence) {
            Partition p(*this);
            std::unordered_map<Element, vector<Element>> by_class;
            for (auto x : present)
                by_class[p.representative(x)].push_back(x);
            vector<vector<Element>> classes;
            for (auto & [_, members] : by_class)
                classes.push_back(members);
            return partition_diagram(classes);
        }

        if (is_total()) {
            vector<Element> order;
            for (auto x : OrderView(*this).order())
                if (kept(x))
                    order.push_back(x);
            return chain_diagram(order);
        }

        // partial order: emit every closure pair between kept elements
        auto succ = successors(*this);
        vector<Fact> facts;
        vector<bool> related(_domain.size(), false);
        for (auto a : present) {
            auto reach = reachable_from(succ, index_of(_domain, a));
            for (auto b : present)
                if (reach[index_of(_domain, b)]) {
                    facts.push_back(Fact::lt(a, b));
                    related[index_of(_domain, a)] = related[index_of(_domain, b)] = true;
                }
        }
        for (auto x : present)
            if (! related[index_of(_domain, x)])
                facts.push_back(Fact::el(x));
        return FiniteDiagram(Signature::LinearOrder, std::move(facts));
    }

    auto first_missing(const FiniteDiagram & smaller, const FiniteDiagram & larger) -> optional<Fact>
    {
        if (smaller.signature() != larger.signature() && ! smaller.empty())
            throw SignatureError("inclusion between " + signature_name(smaller.signature()) + " and "
                    + signature_name(larger.signature()) + " diagrams");

        for (auto x : smaller.domain())
            if (! larger.has_element(x))
                return Fact::el(x);

        if (smaller.signature() == Signature::Equivalence) {
            Partition p(larger);
            for (auto & f : smaller.facts())
                if (f.relation == Relation::Sim && ! p.same(f.lhs, f.rhs))
                    return f;
            return std::nullopt;
        }

        if (larger.is_total()) {
            OrderView v(larger);
            for (auto & f : smaller.facts())
                if (f.relation == Relation::Lt && ! v.less(f.lhs, f.rhs))
                    return f;
            return std::nullopt;
        }

        auto succ = successors(larger);
        std::unordered_map<Element, vector<bool>> reach;
        for (auto & f : smaller.facts()) {
            if (f.relation != Relation::Lt)
                continue;
            auto it = reach.find(f.lhs);
            if (it == reach.end())
                it = reach.emplace(f.lhs, reachable_from(succ, index_of(larger.domain(), f.lhs))).first;
            if (! it->second[index_of(larger.domain(), f.rhs)])
                return f;
        }
        return std::nullopt;
    }

    auto included_in(const FiniteDiagram & smaller, const FiniteDiagram & larger) -> bool
    {
        return ! first_missing(smaller, larger).has_value();
    }

    auto topological_order(const FiniteDiagram & d) -> optional<vector<Element>>
    {
        bool unique;
        return kahn(d, unique);
    }

    OrderView::OrderView(const FiniteDiagram & d)
    {
        if (d.signature() != Signature::LinearOrder && d.size() > 1)
            throw InvalidInput("order view of a non-order diagram");
        bool unique;
        auto order = kahn(d, unique);
        if (! order)
            throw InvalidInput("diagram has an lt cycle");
        if (! unique)
            throw InvalidInput("diagram is not a total order");
        _order = std::move(*order);
        _rank.reserve(_order.size());
        for (size_t i = 0 ; i < _order.size() ; ++i)
            _rank.emplace(_order[i], i);
    }

    auto OrderView::rank(Element x) const -> optional<size_t>
    {
        auto it = _rank.find(x);
        if (it == _rank.end())
            return std::nullopt;
        return it->second;
    }

    auto OrderView::less(Element a, Element b) const -> bool
    {
        auto ra = _rank.find(a), rb = _rank.find(b);
        return ra != _rank.end() && rb != _rank.end() && ra->second < rb->second;
    }

    auto OrderView::least() const -> optional<Element>
    {
        if (_order.empty())
            return std::nullopt;
        return _order.front();
    }

    auto OrderView::greatest() const -> optional<Element>
    {
        if (_order.empty())
            return std::nullopt;
        return _order.back();
    }

    auto OrderView::extends(const OrderView & smaller) const -> bool
    {
        size_t k = 0;
        for (auto x : _order)
            if (k < smaller._order.size() && smaller._order[k] == x)
                ++k;
        return k == smaller._order.size();
    }

    Partition::Partition(const FiniteDiagram & d) :
        _elements(d.domain()),
        _root(_elements.size()),
        _size(_elements.size(), 0)
    {
        for (size_t i = 0 ; i < _root.size() ; ++i)
            _root[i] = i;

        auto find = [&] (size_t i) -> size_t {
            while (_root[i] != i) {
                _root[i] = _root[_root[i]];
                i = _root[i];
            }
            return i;
        };

        // the domain is sorted and unions keep the smaller root, so roots are class minima
        // facts are sorted, so lhs only moves forward
        size_t left = 0;
        for (auto & f : d.facts())
            if (f.relation == Relation::Sim) {
                while (_elements[left] < f.lhs)
                    ++left;
                auto a = find(left), b = find(*index(f.rhs));
                if (a != b)
                    _root[std::max(a, b)] = std::min(a, b);
            }

        for (size_t i = 0 ; i < _root.size() ; ++i) {
            _root[i] = find(i);
            ++_size[_root[i]];
        }
    }

    auto Partition::index(Element x) const -> optional<size_t>
    {
        auto it = std::lower_bound(_elements.begin(), _elements.end(), x);
        if (it == _elements.end() || *it != x)
            return std::nullopt;
        return it - _elements.begin();
    }

    auto Partition::representative(Element x) const -> Element
    {
        auto i = index(x);
        return i ? _elements[_root[*i]] : x;
    }

    auto Partition::class_size(Element x) const -> size_t
    {
        auto i = index(x);
        return i ? _size[_root[*i]] : 0;
    }

    auto Partition::same(Element a, Element b) const -> bool
    {
        auto i = index(a), j = index(b);
        return i && j && _root[*i] == _root[*j];
    }

    auto Partition::refined_by(const Partition & finer) const -> bool
    {
        // roots are class minima, so each class of `finer` meets its root first
        vector<size_t> image(finer._elements.size());
        size_t j = 0;
        for (size_t i = 0 ; i < finer._elements.size() ; ++i) {
            while (j < _elements.size() && _elements[j] < finer._elements[i])
                ++j;
            if (j == _elements.size() || _elements[j] != finer._elements[i])
                return false;
            auto r = finer._root[i];
            if (r == i)
                image[i] = _root[j];
            else if (image[r] != _root[j])
                return false;
        }
        return true;
    }

    auto Partition::classes() const -> vector<vector<Element>>
    {
        vector<vector<Element>> by_root(_elements.size());
        for (size_t i = 0 ; i < _elements.size() ; ++i)
            by_root[_root[i]].push_back(_elements[i]);
        vector<vector<Element>> result;
        for (auto & members : by_root)
            if (! members.empty())
                result.push_back(std::move(members));
        // members arrive sorted and roots are minima, so classes are already ordered
        return result;
    }

    namespace
    {
        auto infer_signature(const vector<Fact> & facts, Signature hint) -> Signature
        {
            bool has_lt = false, has_sim = false;
            for (auto & f : facts) {
                has_lt = has_lt || f.relation == Relation::Lt;
                has_sim = has_sim || f.relation == Relation::Sim;
            }
            if (has_lt && has_sim)
                throw SignatureError("diagram mixes lt and sim facts");
            if (has_lt)
                return Signature::LinearOrder;
            if (has_sim)
                return Signature::Equivalence;
            return hint;
        }

        auto checked_diagram(vector<Fact> facts, Signature hint) -> FiniteDiagram
        {
            auto sig = infer_signature(facts, hint);
            FiniteDiagram d(sig, std::move(facts));
            if (! d.is_consistent())
                throw InconsistentDiagram("lt facts contain a cycle");
            return d;
        }
    }

    auto parse_diagram(string_view text, Signature hint) -> FiniteDiagram
    {
        vector<Fact> facts;
        size_t line_number = 0;
        while (! text.empty()) {
            ++line_number;
            auto nl = text.find('\n');
            auto line = strip_comment(text.substr(0, nl));
            text = (nl == string_view::npos) ? string_view{ } : text.substr(nl + 1);
            if (split_words(line).empty())
                continue;
            try {
                facts.push_back(parse_fact(line));
            }
            catch (const ParseError & e) {
                throw ParseError("line " + std::to_string(line_number) + ": " + e.what());
            }
        }
        return checked_diagram(std::move(facts), hint);
    }

    auto format_diagram(const FiniteDiagram & d) -> string
    {
        string out;
        for (auto & f : d.facts())
            out += to_string(f) + "\n";
        return out;
    }

    auto parse_diagram_literal(string_view text, Signature hint) -> FiniteDiagram
    {
        vector<Fact> facts;
        while (! text.empty()) {
            auto semi = text.find(';');
            auto part = text.substr(0, semi);
            text = (semi == string_view::npos) ? string_view{ } : text.substr(semi + 1);
            if (! split_words(part).empty())
                facts.push_back(parse_fact(part));
        }
        return checked_diagram(std::move(facts), hint);
    }

    auto format_diagram_literal(const FiniteDiagram & d) -> string
    {
        string out;
        for (auto & f : d.facts()) {
            if (! out.empty())
                out += "; ";
            out += to_string(f);
        }
        return out;
    }

    auto chain_diagram(const vector<Element> & order) -> FiniteDiagram
    {
        vector<Fact> facts;
        if (order.size() == 1)
            facts.push_back(Fact::el(order.front()));
        for (size_t i = 0 ; i + 1 < order.size() ; ++i)
            facts.push_back(Fact::lt(order[i], order[i + 1]));
        return FiniteDiagram(Signature::LinearOrder, std::move(facts));
    }

    auto partition_diagram(const vector<vector<Element>> & classes) -> FiniteDiagram
    {
        vector<Fact> facts;
        for (auto & members : classes) {
            if (members.empty())
                continue;
            auto rep = *std::min_element(members.begin(), members.end());
            if (members.size() == 1)
                facts.push_back(Fact::el(rep));
            for (auto x : members)
                if (x != rep)
                    facts.push_back(Fact::sim(rep, x));
        }
        return FiniteDiagram(Signature::Equivalence, std::move(facts));
    }
}
