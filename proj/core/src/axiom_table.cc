/* vim: set sw=4 sts=4 et : */

#include <embedlab/axiom_table.hh>
#include <embedlab/errors.hh>

using std::string;
using std::string_view;
using std::vector;

namespace embedlab
{
    namespace
    {
        auto trim(string_view s) -> string_view
        {
            while (! s.empty() && (s.front() == ' ' || s.front() == '\t'))
                s.remove_prefix(1);
            while (! s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
                s.remove_suffix(1);
            return s;
        }
    }

    AxiomTable::AxiomTable(string name, vector<Axiom> axioms, bool complete) :
        _name(std::move(name)),
        _axioms(std::move(axioms)),
        _complete(complete)
    {
        for (auto & a : _axioms)
            if (! admits(Signature::LinearOrder, a.consequent.relation))
                throw SignatureError("axiom consequent '" + to_string(a.consequent) + "' is not a linear-order fact");
    }

    auto AxiomTable::apply(const FiniteDiagram & alpha, Budget n) const -> FiniteDiagram
    {
        vector<Fact> facts;
        for (std::size_t i = 0 ; i < _axioms.size() && i < n ; ++i)
            if (included_in(_axioms[i].antecedent, alpha))
                facts.push_back(_axioms[i].consequent);
        return FiniteDiagram(Signature::LinearOrder, std::move(facts));
    }

    auto parse_axiom_table(string_view text, string name) -> std::shared_ptr<const AxiomTable>
    {
        vector<Axiom> axioms;
        bool complete = false;
        std::size_t line_number = 0;
        while (! text.empty()) {
            ++line_number;
            auto nl = text.find('\n');
            auto line = text.substr(0, nl);
            text = (nl == string_view::npos) ? string_view{ } : text.substr(nl + 1);
            if (auto hash = line.find('#') ; hash != string_view::npos)
                line = line.substr(0, hash);
            line = trim(line);
            if (line.empty())
                continue;

            auto where = "axiom line " + std::to_string(line_number) + ": ";
            try {
                if (line.starts_with("complete:")) {
                    auto value = trim(line.substr(9));
                    if (value != "true" && value != "false")
                        throw ParseError("expected true or false");
                    complete = value == "true";
                }
                else if (line.starts_with("axiom:")) {
                    auto body = line.substr(6);
                    auto arrow = body.find("=>");
                    if (arrow == string_view::npos)
                        throw ParseError("missing '=>'");
                    axioms.push_back(Axiom{ parse_diagram_literal(body.substr(0, arrow)),
                            parse_fact(trim(body.substr(arrow + 2))) });
                }
                else
                    throw ParseError("expected 'axiom:' or 'complete:'");
            }
            catch (const Error & e) {
                throw ParseError(where + e.what());
            }
        }
        return std::make_shared<AxiomTable>(std::move(name), std::move(axioms), complete);
    }
}
