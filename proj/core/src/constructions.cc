/* vim: set sw=4 sts=4 et : */

#include <embedlab/constructions.hh>
#include <embedlab/errors.hh>

#include <optional>

using nlohmann::json;
using std::size_t;
using std::vector;

namespace embedlab
{
    namespace
    {
        // rank of the element each stage adds to its predecessor
        auto insertion_ranks(const StructureStream & target, const char * which) -> vector<size_t>
        {
            if (target.signature() != Signature::LinearOrder)
                throw SignatureError(std::string("target ") + which + " is not a linear order");
            vector<size_t> ranks;
            StageCursor cursor(target);
            std::optional<FiniteDiagram> previous;
            while (cursor.next()) {
                auto & now = cursor.current();
                vector<Element> fresh;
                for (auto x : now.domain())
                    if (! previous || ! previous->has_element(x))
                        fresh.push_back(x);
                if (fresh.size() != 1)
                    throw InvalidInput(std::string("target ") + which + " must add one element per stage");
                ranks.push_back(*OrderView(now).rank(fresh.front()));
                previous = now;
            }
            return ranks;
        }

        auto order_facts_for_insert(const vector<Element> & order, size_t rank, Element x) -> vector<Fact>
        {
            vector<Fact> facts;
            if (rank > 0)
                facts.push_back(Fact::lt(order[rank - 1], x));
            if (rank < order.size())
                facts.push_back(Fact::lt(x, order[rank]));
            if (order.empty())
                facts.push_back(Fact::el(x));
            return facts;
        }

        struct PairShape
        {
            vector<size_t> a_ranks, b_ranks;
            std::function<size_t (size_t)> u, v;
        };

        class PhiPairState final : public ConstructionState
        {
            public:
                explicit PhiPairState(std::shared_ptr<const PairShape> shape) : _shape(std::move(shape)) { }

                auto step(const FiniteDiagram & stage) -> StepResult override
                {
                    StepResult result;
                    if (! stage.is_total())
                        throw InvalidInput("phi_pair input stage is not a total order");
                    if (stage.empty()) {
                        result.annotation = annotation(false);
                        return result;
                    }

                    OrderView view(stage);
                    auto l = *view.least(), r = *view.greatest();
                    bool switched = false;

                    if (! _l) {
                        grow_to(0, _shape->a_ranks, result.new_facts);
                    }
                    else if (_building_a && l != *_l && view.less(l, *_l)) {
                        switch_to(false, _shape->u(_t), result.new_facts);
                        switched = true;
                    }
                    else if (! _building_a && r != *_r && view.less(*_r, r)) {
                        switch_to(true, _shape->v(_t), result.new_facts);
                        switched = true;
                    }
                    else
                        grow_to(_t + 1, _building_a ? _shape->a_ranks : _shape->b_ranks, result.new_facts);

                    _l = l;
                    _r = r;
                    result.annotation = annotation(switched);
                    return result;
                }

            private:
                std::shared_ptr<const PairShape> _shape;
                bool _building_a = true;
                size_t _t = 0;
                std::optional<Element> _l, _r;
                vector<Element> _order;
                size_t _switches = 0;

                // extends the copy of the target from its current stage to stage t
                auto grow_to(size_t t, const vector<size_t> & ranks, vector<Fact> & facts) -> void
                {
                    if (t >= ranks.size())
                        throw InvalidInput("target stream too short for stage " + std::to_string(t));
                    size_t from = _order.empty() ? 0 : _t + 1;
                    for (size_t i = from ; i <= t ; ++i)
                        insert(ranks[i], facts);
                    _t = t;
                }

                auto switch_to(bool building_a, size_t t, vector<Fact> & facts) -> void
                {
                    if (t < _t)
                        throw InvalidInput("embedding stage function must satisfy u(t) >= t");
                    // finite orders of equal size are isomorphic; pad on top up to the new size
                    while (_order.size() < t + 1)
                        insert(_order.size(), facts);
                    _building_a = building_a;
                    _t = t;
                    ++_switches;
                }

                auto insert(size_t rank, vector<Fact> & facts) -> void
                {
                    Element x = _order.size();
                    auto more = order_facts_for_insert(_order, rank, x);
                    facts.insert(facts.end(), more.begin(), more.end());
                    _order.insert(_order.begin() + rank, x);
                }

                auto annotation(bool switched) const -> json
                {
                    json j;
                    j["building"] = _building_a ? "A" : "B";
                    j["t"] = _t;
                    j["l"] = _l ? json(*_l) : json();
                    j["r"] = _r ? json(*_r) : json();
                    j["switched"] = switched;
                    j["switches"] = _switches;
                    return j;
                }
        };

        class PhiPair final : public TuringConstruction
        {
            public:
                explicit PhiPair(std::shared_ptr<const PairShape> shape) : _shape(std::move(shape)) { }

                auto name() const -> std::string override { return "phi_pair"; }
                auto input_signature() const -> Signature override { return Signature::LinearOrder; }
                auto output_signature() const -> Signature override { return Signature::LinearOrder; }
                auto init() const -> std::unique_ptr<ConstructionState> override
                {
                    return std::make_unique<PhiPairState>(_shape);
                }

            private:
                std::shared_ptr<const PairShape> _shape;
        };

        auto witness_json(const vector<Witness> & ws) -> json
        {
            auto j = json::array();
            for (auto & w : ws)
                j.push_back(json{ { "disjunct", w.disjunct }, { "tuple", w.tuple } });
            return j;
        }

        auto least_tuple(const vector<Witness> & ws) -> const vector<Element> &
        {
            auto * best = &ws.front().tuple;
            for (auto & w : ws)
                if (godel_less(w.tuple, *best))
                    best = &w.tuple;
            return *best;
        }

        class PhiSigma2State final : public ConstructionState
        {
            public:
                PhiSigma2State(std::shared_ptr<const Sigma2Sentence> phi, std::shared_ptr<const Sigma2Sentence> psi) :
                    _phi(std::move(phi)), _psi(std::move(psi))
                {
                }

                auto step(const FiniteDiagram & stage) -> StepResult override
                {
                    StepResult result;
                    auto s = _stage++;
                    ClosureModel model(stage);
                    auto phi_w = witnesses(*_phi, model, s), psi_w = witnesses(*_psi, model, s);

                    int which = phi_w.empty() ? (psi_w.empty() ? 1 : 3) : (psi_w.empty() ? 2 : 4);
                    bool top = which == 1 || which == 2
                        || (which == 4 && godel_less(least_tuple(phi_w), least_tuple(psi_w)));

                    Element x = _next++;
                    std::string placement;
                    if (! _top) {
                        result.new_facts.push_back(Fact::el(x));
                        _top = _bottom = x;
                        placement = "init";
                    }
                    else if (top) {
                        result.new_facts.push_back(Fact::lt(*_top, x));
                        _top = x;
                        placement = "top";
                    }
                    else {
                        result.new_facts.push_back(Fact::lt(x, *_bottom));
                        _bottom = x;
                        placement = "bottom";
                    }

                    result.annotation = json{
                        { "placement", placement },
                        { "case", which },
                        { "phi_witnesses", witness_json(phi_w) },
                        { "psi_witnesses", witness_json(psi_w) }
                    };
                    return result;
                }

            private:
                std::shared_ptr<const Sigma2Sentence> _phi, _psi;
                size_t _stage = 0;
                Element _next = 0;
                std::optional<Element> _top, _bottom;
        };

        class PhiSigma2 final : public TuringConstruction
        {
            public:
                PhiSigma2(std::shared_ptr<const Sigma2Sentence> phi, std::shared_ptr<const Sigma2Sentence> psi, Signature input) :
                    _phi(std::move(phi)), _psi(std::move(psi)), _input(input)
                {
                }

                auto name() const -> std::string override { return "phi_sigma2"; }
                auto input_signature() const -> Signature override { return _input; }
                auto output_signature() const -> Signature override { return Signature::LinearOrder; }
                auto init() const -> std::unique_ptr<ConstructionState> override
                {
                    return std::make_unique<PhiSigma2State>(_phi, _psi);
                }

            private:
                std::shared_ptr<const Sigma2Sentence> _phi, _psi;
                Signature _input;
        };
    }

    auto phi_pair(StagePair pair) -> ConstructionPtr
    {
        auto shape = std::make_shared<PairShape>();
        shape->a_ranks = insertion_ranks(pair.a, "A");
        shape->b_ranks = insertion_ranks(pair.b, "B");
        shape->u = std::move(pair.u);
        shape->v = std::move(pair.v);
        return std::make_shared<PhiPair>(std::move(shape));
    }

    auto phi_sigma2(std::shared_ptr<const Sigma2Sentence> phi, std::shared_ptr<const Sigma2Sentence> psi) -> ConstructionPtr
    {
        if (! phi || ! psi)
            throw InvalidSpec("phi_sigma2 needs two sentences");
        auto a = phi->signature(), b = psi->signature();
        if (a && b && *a != *b)
            throw SignatureError("phi and psi use different signatures");
        auto input = a ? *a : b.value_or(Signature::LinearOrder);
        return std::make_shared<PhiSigma2>(std::move(phi), std::move(psi), input);
    }
}
