/* vim: set sw=4 sts=4 et : */

#include <embedlab/sigma2.hh>
#include <embedlab/errors.hh>

#include <algorithm>
#include <charconv>
#include <cctype>
#include <functional>
#include <sstream>

using std::size_t;
using std::string;
using std::string_view;
using std::vector;

namespace embedlab
{
    namespace
    {
        auto words_of(string_view s) -> vector<string_view>
        {
            vector<string_view> words;
            size_t i = 0;
            while (i < s.size()) {
                while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i])))
                    ++i;
                auto start = i;
                while (i < s.size() && ! std::isspace(static_cast<unsigned char>(s[i])))
                    ++i;
                if (i > start)
                    words.push_back(s.substr(start, i - start));
            }
            return words;
        }

        auto number(string_view s) -> size_t
        {
            size_t v = 0;
            auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
            if (ec != std::errc{ } || ptr != s.data() + s.size())
                throw ParseError("expected a number, got '" + string(s) + "'");
            return v;
        }

        auto variable(string_view s) -> Variable
        {
            if (s.size() < 2 || (s[0] != 'x' && s[0] != 'y'))
                throw ParseError("expected a variable x<i> or y<j>, got '" + string(s) + "'");
            return Variable{ s[0] == 'y', number(s.substr(1)) };
        }

        auto name_of(const Variable & v) -> string
        {
            return (v.universal ? "y" : "x") + std::to_string(v.index);
        }

        auto value(const Variable & v, const vector<Element> & xs, const vector<Element> & ys) -> Element
        {
            return v.universal ? ys[v.index] : xs[v.index];
        }

        // calls f on every tuple of length n over dom, in lexicographic order; stops when f returns false
        auto each_tuple(const vector<Element> & dom, size_t n, const std::function<bool (const vector<Element> &)> & f) -> bool
        {
            vector<Element> tuple(n);
            vector<size_t> at(n, 0);
            if (n > 0 && dom.empty())
                return true;
            while (true) {
                for (size_t i = 0 ; i < n ; ++i)
                    tuple[i] = dom[at[i]];
                if (! f(tuple))
                    return false;
                size_t i = n;
                while (i > 0 && ++at[i - 1] == dom.size())
                    at[--i] = 0;
                if (i == 0)
                    return true;
            }
        }

        auto holds(const Literal & l, const ClosureModel & m, const vector<Element> & xs, const vector<Element> & ys) -> bool
        {
            return m.entails(l.atom, value(l.lhs, xs, ys), value(l.rhs, xs, ys)) != l.negated;
        }

        // the diagram already entails the complement of the literal
        auto complement_entailed(const Literal & l, const ClosureModel & m, const vector<Element> & xs, const vector<Element> & ys) -> bool
        {
            auto a = value(l.lhs, xs, ys), b = value(l.rhs, xs, ys);
            switch (l.atom) {
                case Atom::Eq:
                    return l.negated ? a == b : a != b;
                case Atom::Lt:
                    return l.negated ? m.entails(Atom::Lt, a, b) : (a == b || m.entails(Atom::Lt, b, a));
                case Atom::Sim:
                    return l.negated ? m.entails(Atom::Sim, a, b) : false;
            }
            return false;
        }
    }

    Sigma2Sentence::Sigma2Sentence(size_t arity, vector<Disjunct> disjuncts) :
        _arity(arity),
        _disjuncts(std::move(disjuncts))
    {
        for (auto & d : _disjuncts)
            for (auto & c : d.conjuncts)
                for (auto & v : { c.literal.lhs, c.literal.rhs })
                    if (v.index >= (v.universal ? c.universal_arity : _arity))
                        throw InvalidSpec("variable " + name_of(v) + " is not bound");
    }

    auto Sigma2Sentence::signature() const -> std::optional<Signature>
    {
        std::optional<Signature> result;
        for (auto & d : _disjuncts)
            for (auto & c : d.conjuncts) {
                std::optional<Signature> here;
                if (c.literal.atom == Atom::Lt)
                    here = Signature::LinearOrder;
                else if (c.literal.atom == Atom::Sim)
                    here = Signature::Equivalence;
                if (here && result && *here != *result)
                    throw SignatureError("sentence mixes lt and sim atoms");
                if (here)
                    result = here;
            }
        return result;
    }

    auto to_string(const Literal & l) -> string
    {
        string atom = l.atom == Atom::Lt ? "lt" : l.atom == Atom::Sim ? "sim" : "eq";
        return (l.negated ? "not " : "") + atom + " " + name_of(l.lhs) + " " + name_of(l.rhs);
    }

    auto parse_sigma2(string_view text) -> Sigma2Sentence
    {
        std::optional<size_t> arity;
        vector<Disjunct> disjuncts;
        size_t line_number = 0;
        while (! text.empty()) {
            ++line_number;
            auto nl = text.find('\n');
            auto line = text.substr(0, nl);
            text = (nl == string_view::npos) ? string_view{ } : text.substr(nl + 1);
            if (auto hash = line.find('#') ; hash != string_view::npos)
                line = line.substr(0, hash);

            auto where = "sentence line " + std::to_string(line_number) + ": ";
            try {
                auto colon = line.find(':');
                auto head = words_of(line.substr(0, colon));
                if (head.empty())
                    continue;
                if (head[0] == "exists") {
                    if (head.size() != 2 || colon != string_view::npos || arity)
                        throw ParseError("expected a single 'exists <m>' header");
                    arity = number(head[1]);
                }
                else if (head[0] == "disjunct") {
                    if (! arity)
                        throw ParseError("'disjunct' before 'exists'");
                    if (head.size() != 2 || number(head[1]) != disjuncts.size())
                        throw ParseError("expected 'disjunct " + std::to_string(disjuncts.size()) + "'");
                    disjuncts.emplace_back();
                }
                else if (head[0] == "forall") {
                    if (disjuncts.empty())
                        throw ParseError("'forall' outside a disjunct");
                    if (head.size() != 2 || colon == string_view::npos)
                        throw ParseError("expected 'forall <n>: <literal>'");
                    Conjunct c;
                    c.universal_arity = number(head[1]);
                    auto body = words_of(line.substr(colon + 1));
                    size_t at = 0;
                    if (! body.empty() && body[0] == "not") {
                        c.literal.negated = true;
                        at = 1;
                    }
                    if (body.size() != at + 3)
                        throw ParseError("literal needs a relation and two variables");
                    if (body[at] == "lt")
                        c.literal.atom = Atom::Lt;
                    else if (body[at] == "sim")
                        c.literal.atom = Atom::Sim;
                    else if (body[at] == "eq")
                        c.literal.atom = Atom::Eq;
                    else
                        throw ParseError("unknown relation '" + string(body[at]) + "'");
                    c.literal.lhs = variable(body[at + 1]);
                    c.literal.rhs = variable(body[at + 2]);
                    disjuncts.back().conjuncts.push_back(c);
                }
                else
                    throw ParseError("unexpected '" + string(head[0]) + "'");
            }
            catch (const ParseError & e) {
                throw ParseError(where + e.what());
            }
        }
        if (! arity)
            throw ParseError("sentence has no 'exists' header");
        try {
            return Sigma2Sentence(*arity, std::move(disjuncts));
        }
        catch (const InvalidSpec & e) {
            throw ParseError(e.what());
        }
    }

    auto format_sigma2(const Sigma2Sentence & s) -> string
    {
        std::ostringstream out;
        out << "exists " << s.existential_arity() << '\n';
        for (size_t i = 0 ; i < s.disjuncts().size() ; ++i) {
            out << "disjunct " << i << '\n';
            for (auto & c : s.disjuncts()[i].conjuncts)
                out << "forall " << c.universal_arity << ": " << to_string(c.literal) << '\n';
        }
        return out.str();
    }

    ClosureModel::ClosureModel(const FiniteDiagram & d) :
        _diagram(d)
    {
        if (d.signature() == Signature::Equivalence) {
            _partition.emplace(d);
            return;
        }
        auto n = d.domain().size();
        _less.assign(n, vector<bool>(n, false));
        auto index = [&] (Element x) {
            return static_cast<size_t>(std::lower_bound(d.domain().begin(), d.domain().end(), x) - d.domain().begin());
        };
        if (auto order = topological_order(d) ; order && d.is_total()) {
            for (size_t i = 0 ; i < order->size() ; ++i)
                for (size_t j = i + 1 ; j < order->size() ; ++j)
                    _less[index((*order)[i])][index((*order)[j])] = true;
            return;
        }
        for (auto & f : d.facts())
            if (f.relation == Relation::Lt)
                _less[index(f.lhs)][index(f.rhs)] = true;
        for (size_t k = 0 ; k < n ; ++k)
            for (size_t i = 0 ; i < n ; ++i)
                if (_less[i][k])
                    for (size_t j = 0 ; j < n ; ++j)
                        if (_less[k][j])
                            _less[i][j] = true;
    }

    auto ClosureModel::entails(Atom atom, Element a, Element b) const -> bool
    {
        switch (atom) {
            case Atom::Eq:
                return a == b;
            case Atom::Sim:
                if (! _diagram.has_element(a) || ! _diagram.has_element(b))
                    return false;
                return a == b || (_partition && _partition->same(a, b));
            case Atom::Lt: {
                if (_less.empty() || ! _diagram.has_element(a) || ! _diagram.has_element(b))
                    return false;
                auto & dom = _diagram.domain();
                auto i = std::lower_bound(dom.begin(), dom.end(), a) - dom.begin();
                auto j = std::lower_bound(dom.begin(), dom.end(), b) - dom.begin();
                return _less[i][j];
            }
        }
        return false;
    }

    auto is_witness(const Sigma2Sentence & s, const ClosureModel & m, size_t disjunct,
            const vector<Element> & tuple, size_t conjunct_limit) -> bool
    {
        auto & conjuncts = s.disjuncts().at(disjunct).conjuncts;
        for (size_t j = 0 ; j < conjuncts.size() && j <= conjunct_limit ; ++j) {
            auto & c = conjuncts[j];
            bool ok = each_tuple(m.domain(), c.universal_arity, [&] (const vector<Element> & ys) {
                return holds(c.literal, m, tuple, ys);
            });
            if (! ok)
                return false;
        }
        return true;
    }

    auto witnesses(const Sigma2Sentence & s, const ClosureModel & m, size_t conjunct_limit) -> vector<Witness>
    {
        vector<Witness> result;
        for (size_t i = 0 ; i < s.disjuncts().size() ; ++i)
            each_tuple(m.domain(), s.existential_arity(), [&] (const vector<Element> & xs) {
                if (is_witness(s, m, i, xs, conjunct_limit))
                    result.push_back(Witness{ i, xs });
                return true;
            });
        return result;
    }

    auto is_refuted(const Sigma2Sentence & s, const ClosureModel & m, size_t disjunct, const vector<Element> & tuple) -> bool
    {
        for (auto & c : s.disjuncts().at(disjunct).conjuncts) {
            bool clean = each_tuple(m.domain(), c.universal_arity, [&] (const vector<Element> & ys) {
                return ! complement_entailed(c.literal, m, tuple, ys);
            });
            if (! clean)
                return true;
        }
        return false;
    }

    auto godel_less(const vector<Element> & a, const vector<Element> & b) -> bool
    {
        if (a.size() != b.size())
            return a.size() < b.size();
        return a < b;
    }
}
