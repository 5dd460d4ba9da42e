/* vim: set sw=4 sts=4 et : */

#include <embedlab/registry.hh>
#include <embedlab/class_operators.hh>
#include <embedlab/combinators.hh>
#include <embedlab/constructions.hh>
#include <embedlab/equivalence_to_order.hh>
#include <embedlab/errors.hh>
#include <embedlab/order_to_equivalence.hh>

#include <cctype>
#include <charconv>

using std::string;
using std::string_view;

namespace embedlab
{
    namespace
    {
        class Parser
        {
            public:
                Parser(string_view text, const RegistryContext & ctx) : _text(text), _ctx(ctx) { }

                auto whole() -> AnyOperator
                {
                    skip();
                    auto save = _at;
                    auto word = name();
                    skip();
                    if ((word == "phi_pair" || word == "phi_sigma2") && _at == _text.size())
                        return construction(word);
                    _at = save;
                    auto op = expr();
                    skip();
                    if (_at != _text.size())
                        fail("unexpected '" + string(_text.substr(_at)) + "'");
                    return op;
                }

            private:
                string_view _text;
                const RegistryContext & _ctx;
                std::size_t _at = 0;

                [[noreturn]] auto fail(const string & why) const -> void
                {
                    throw InvalidSpec("operator expression '" + string(_text) + "': " + why);
                }

                auto skip() -> void
                {
                    while (_at < _text.size() && std::isspace(static_cast<unsigned char>(_text[_at])))
                        ++_at;
                }

                auto eat(char c) -> bool
                {
                    skip();
                    if (_at < _text.size() && _text[_at] == c) {
                        ++_at;
                        return true;
                    }
                    return false;
                }

                auto expect(char c) -> void
                {
                    if (! eat(c))
                        fail(string("expected '") + c + "'");
                }

                auto name() -> string
                {
                    skip();
                    auto start = _at;
                    while (_at < _text.size() && (std::isalnum(static_cast<unsigned char>(_text[_at])) || _text[_at] == '_'))
                        ++_at;
                    return string(_text.substr(start, _at - start));
                }

                auto param() -> string
                {
                    if (! eat(':'))
                        return "";
                    auto p = name();
                    if (p.empty())
                        fail("missing parameter after ':'");
                    return p;
                }

                auto expr() -> OperatorPtr
                {
                    auto op = term();
                    while (eat('|')) {
                        skip();
                        auto save = _at;
                        auto word = name();
                        if (word == "fill") {
                            auto style = param();
                            if (style == "left")
                                op = interval_fill(op, FillStyle::LeftClosed);
                            else if (style == "right")
                                op = interval_fill(op, FillStyle::RightClosed);
                            else
                                fail("fill takes left or right");
                        }
                        else if (word == "rev" && ! peek('('))
                            op = reverse(op);
                        else {
                            _at = save;
                            op = compose(op, term());
                        }
                    }
                    return op;
                }

                auto peek(char c) -> bool
                {
                    skip();
                    return _at < _text.size() && _text[_at] == c;
                }

                auto term() -> OperatorPtr
                {
                    if (eat('(')) {
                        auto op = expr();
                        expect(')');
                        return op;
                    }
                    auto word = name();
                    if (word.empty())
                        fail("expected an operator name");
                    if (word == "concat" || word == "union") {
                        expect('(');
                        auto a = expr();
                        expect(',');
                        auto b = expr();
                        expect(')');
                        return word == "concat" ? concatenate(a, b) : disjoint_union(a, b);
                    }
                    if (word == "rev") {
                        expect('(');
                        auto a = expr();
                        expect(')');
                        return reverse(a);
                    }
                    auto p = param();
                    return named(word, p);
                }

                auto sentence(const std::shared_ptr<const Sigma2Sentence> & s, const char * which, const string & op) const
                    -> std::shared_ptr<const Sigma2Sentence>
                {
                    if (! s)
                        fail(op + " needs a " + which + " sentence");
                    return s;
                }

                auto named(const string & word, const string & p) -> OperatorPtr
                {
                    auto no_param = [&] {
                        if (! p.empty())
                            fail(word + " takes no parameter");
                    };
                    if (word == "replicate") {
                        std::uint64_t q = 0;
                        auto [ptr, ec] = std::from_chars(p.data(), p.data() + p.size(), q);
                        if (p.empty() || ec != std::errc{ } || ptr != p.data() + p.size())
                            fail("replicate needs a count, as in replicate:2");
                        return replicate(q);
                    }
                    no_param();
                    if (word == "ord2eq")
                        return ord2eq();
                    if (word == "eq2ord_v1")
                        return eq2ord_v1();
                    if (word == "eq2ord_v2")
                        return eq2ord_v2();
                    if (word == "class_multiplier")
                        return class_multiplier();
                    if (word == "formula2eq")
                        return formula2eq(sentence(_ctx.phi, "phi", word));
                    if (word == "formula2eq_dual")
                        return formula2eq_dual(sentence(_ctx.psi ? _ctx.psi : _ctx.phi, "psi", word));
                    if (word == "pair_formula2eq")
                        return pair_formula2eq(sentence(_ctx.phi, "phi", word), sentence(_ctx.psi, "psi", word));
                    if (word == "axioms") {
                        if (! _ctx.axioms)
                            fail("axioms needs an axiom table");
                        return _ctx.axioms;
                    }
                    if (word == "phi_pair" || word == "phi_sigma2")
                        fail(word + " is a construction and cannot be combined");
                    throw UnknownOperator("unknown operator '" + word + "'");
                }

                auto construction(const string & word) -> AnyOperator
                {
                    if (word == "phi_sigma2")
                        return phi_sigma2(sentence(_ctx.phi, "phi", word), sentence(_ctx.psi, "psi", word));
                    StagePair pair{ generate(_ctx.target_a, _ctx.target_stages), generate(_ctx.target_b, _ctx.target_stages) };
                    return phi_pair(std::move(pair));
                }
        };
    }

    auto parse_operator(string_view expression, const RegistryContext & ctx) -> AnyOperator
    {
        return Parser(expression, ctx).whole();
    }

    auto parse_enumeration_operator(string_view expression, const RegistryContext & ctx) -> OperatorPtr
    {
        auto op = parse_operator(expression, ctx);
        if (auto e = std::get_if<OperatorPtr>(&op))
            return *e;
        throw InvalidTarget(operator_name(op) + " is a construction, not an enumeration operator");
    }

    auto operator_names() -> std::vector<string>
    {
        return { "replicate:<q>", "ord2eq", "eq2ord_v1", "eq2ord_v2", "class_multiplier", "formula2eq",
            "formula2eq_dual", "pair_formula2eq", "axioms", "phi_pair", "phi_sigma2" };
    }
}
