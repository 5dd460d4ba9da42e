/* vim: set sw=4 sts=4 et : */

#include <embedlab/classifier.hh>
#include <embedlab/errors.hh>

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <unordered_map>

using nlohmann::json;
using std::size_t;
using std::string;
using std::vector;

namespace embedlab
{
    namespace
    {
        class UnionFind
        {
            public:
                auto add(Element x, size_t stage) -> void
                {
                    if (_parent.emplace(x, x).second) {
                        _size[x] = 1;
                        _last[x] = stage;
                    }
                }

                auto find(Element x) -> Element
                {
                    auto root = x;
                    while (_parent.at(root) != root)
                        root = _parent.at(root);
                    while (_parent.at(x) != root) {
                        auto next = _parent.at(x);
                        _parent[x] = root;
                        x = next;
                    }
                    return root;
                }

                auto unite(Element a, Element b, size_t stage) -> void
                {
                    a = find(a);
                    b = find(b);
                    if (a == b)
                        return;
                    if (b < a)
                        std::swap(a, b);
                    _parent[b] = a;
                    _size[a] += _size[b];
                    _last[a] = stage;
                }

                auto elements() const -> vector<Element>
                {
                    vector<Element> result;
                    for (auto & [x, _] : _parent)
                        result.push_back(x);
                    std::sort(result.begin(), result.end());
                    return result;
                }

                auto has(Element x) const -> bool { return _parent.contains(x); }
                auto size(Element root) const -> size_t { return _size.at(root); }
                auto last(Element root) const -> size_t { return _last.at(root); }

            private:
                std::unordered_map<Element, Element> _parent;
                std::unordered_map<Element, size_t> _size, _last;
        };

        auto require(const RunLog & log, Signature s, const char * who) -> void
        {
            if (log.signature() != s)
                throw SignatureError(string(who) + " needs a " + signature_name(s) + " log, got "
                        + signature_name(log.signature()));
        }

        auto has_frozen_annotations(const RunLog & log) -> bool
        {
            for (auto & r : log.records())
                if (r.annotations.is_object() && r.annotations.contains("frozen"))
                    return true;
            return false;
        }

        auto ceil_quarter(size_t n) -> size_t
        {
            return (n + 3) / 4;
        }
    }

    auto ClassCensus::frozen_of_size(size_t k) const -> size_t
    {
        return std::count_if(classes.begin(), classes.end(), [&] (auto & c) { return c.frozen && c.size == k; });
    }

    auto ClassCensus::frozen_count() const -> size_t
    {
        return std::count_if(classes.begin(), classes.end(), [] (auto & c) { return c.frozen; });
    }

    auto log_of(const StructureStream & stream) -> RunLog
    {
        RunLog log(stream.provenance(), "stream", stream.provenance(), stream.signature());
        for (size_t s = 0 ; s < stream.stage_count() ; ++s)
            log.append(StageRecord{ s, stream.delta(s), nullptr });
        return log;
    }

    auto census(const RunLog & log, size_t window) -> ClassCensus
    {
        require(log, Signature::Equivalence, "census");
        UnionFind uf;
        for (auto & r : log.records())
            for (auto & f : r.new_facts) {
                uf.add(f.lhs, r.stage);
                if (f.relation == Relation::Sim) {
                    uf.add(f.rhs, r.stage);
                    uf.unite(f.lhs, f.rhs, r.stage);
                }
            }

        ClassCensus result;
        result.from_annotations = has_frozen_annotations(log);
        size_t stages = log.stage_count();

        std::map<Element, size_t> flagged_stages;
        if (result.from_annotations) {
            size_t from = stages > window ? stages - window : 0;
            for (size_t s = from ; s < stages ; ++s) {
                std::set<Element> roots;
                auto & a = log.records()[s].annotations;
                if (a.is_object() && a.contains("frozen"))
                    for (auto & x : a["frozen"]) {
                        auto e = x.get<Element>();
                        if (uf.has(e))
                            roots.insert(uf.find(e));
                    }
                for (auto root : roots)
                    ++flagged_stages[root];
            }
        }

        std::map<Element, ClassRecord> by_root;
        for (auto x : uf.elements()) {
            auto root = uf.find(x);
            if (by_root.contains(root))
                continue;
            ClassRecord c;
            c.representative = root;
            c.size = uf.size(root);
            c.last_growth = uf.last(root);
            if (result.from_annotations)
                c.frozen = stages > 0 && flagged_stages[root] == std::min(window, stages);
            else
                c.frozen = stages > 0 && c.last_growth + window <= stages - 1;
            by_root.emplace(root, c);
        }
        for (auto & [_, c] : by_root)
            result.classes.push_back(c);
        return result;
    }

    auto census(const StructureStream & stream, size_t window) -> ClassCensus
    {
        return census(log_of(stream), window);
    }

    auto OrderFingerprint::pred_unstable_elements() const -> vector<Element>
    {
        vector<Element> result;
        for (auto & e : elements)
            if (e.pred_changes >= window)
                result.push_back(e.element);
        return result;
    }

    auto OrderFingerprint::succ_unstable_elements() const -> vector<Element>
    {
        vector<Element> result;
        for (auto & e : elements)
            if (e.succ_changes >= window)
                result.push_back(e.element);
        return result;
    }

    auto fingerprint(const RunLog & log, size_t W) -> OrderFingerprint
    {
        require(log, Signature::LinearOrder, "fingerprint");
        OrderFingerprint fp;
        fp.window = W;
        fp.horizon = std::max(W, ceil_quarter(log.stage_count()));

        constexpr Element none = ~Element{ 0 };
        std::map<Element, size_t> index;
        vector<ElementTrace> traces;
        vector<Element> pred, succ;

        vector<Fact> facts;
        std::optional<Element> least, greatest;
        for (auto & r : log.records()) {
            facts.insert(facts.end(), r.new_facts.begin(), r.new_facts.end());
            FiniteDiagram d(Signature::LinearOrder, facts);
            auto order = topological_order(d);
            if (! order)
                throw InconsistentDiagram("log stage " + std::to_string(r.stage) + " has an lt cycle");

            for (size_t i = 0 ; i < order->size() ; ++i) {
                auto x = (*order)[i];
                auto p = i > 0 ? (*order)[i - 1] : none;
                auto q = i + 1 < order->size() ? (*order)[i + 1] : none;
                auto [it, fresh] = index.emplace(x, traces.size());
                if (fresh) {
                    traces.push_back(ElementTrace{ x, r.stage, 0, 0 });
                    pred.push_back(p);
                    succ.push_back(q);
                    continue;
                }
                auto k = it->second;
                if (pred[k] != p) {
                    ++traces[k].pred_changes;
                    pred[k] = p;
                }
                if (succ[k] != q) {
                    ++traces[k].succ_changes;
                    succ[k] = q;
                }
            }

            if (order->empty()) {
                least = greatest = std::nullopt;
                fp.least_held = fp.greatest_held = 0;
                continue;
            }
            fp.least_held = (least == order->front()) ? fp.least_held + 1 : 1;
            fp.greatest_held = (greatest == order->back()) ? fp.greatest_held + 1 : 1;
            least = order->front();
            greatest = order->back();
        }

        fp.elements = std::move(traces);
        std::sort(fp.elements.begin(), fp.elements.end(), [] (auto & a, auto & b) { return a.element < b.element; });
        fp.pred_unstable = fp.pred_unstable_elements().size();
        fp.succ_unstable = fp.succ_unstable_elements().size();
        if (least && fp.least_held >= fp.horizon)
            fp.stable_least = least;
        if (greatest && fp.greatest_held >= fp.horizon)
            fp.stable_greatest = greatest;
        return fp;
    }

    auto fingerprint(const StructureStream & stream, size_t W) -> OrderFingerprint
    {
        return fingerprint(log_of(stream), W);
    }

    auto finite_iso(const FiniteDiagram & a, const FiniteDiagram & b) -> bool
    {
        if (a.size() > 8 || b.size() > 8)
            throw TooLarge("finite_iso handles at most 8 elements per domain");
        if (a.signature() != b.signature() && ! a.empty() && ! b.empty())
            throw SignatureError("finite_iso across signatures");
        if (a.size() != b.size())
            return false;

        auto n = a.size();
        auto relation = [n] (const FiniteDiagram & d) {
            vector<vector<bool>> rel(n, vector<bool>(n, false));
            auto & dom = d.domain();
            auto at = [&] (Element x) { return static_cast<size_t>(std::lower_bound(dom.begin(), dom.end(), x) - dom.begin()); };
            if (d.signature() == Signature::Equivalence) {
                Partition p(d);
                for (size_t i = 0 ; i < n ; ++i)
                    for (size_t j = 0 ; j < n ; ++j)
                        rel[i][j] = p.same(dom[i], dom[j]);
            }
            else {
                for (auto & f : d.facts())
                    if (f.relation == Relation::Lt)
                        rel[at(f.lhs)][at(f.rhs)] = true;
                for (size_t k = 0 ; k < n ; ++k)
                    for (size_t i = 0 ; i < n ; ++i)
                        if (rel[i][k])
                            for (size_t j = 0 ; j < n ; ++j)
                                if (rel[k][j])
                                    rel[i][j] = true;
            }
            return rel;
        };
        auto ra = relation(a), rb = relation(b);

        // prune: equal multisets of (out-degree, in-degree) profiles
        auto profile = [n] (const vector<vector<bool>> & rel) {
            vector<std::pair<size_t, size_t>> p(n);
            for (size_t i = 0 ; i < n ; ++i)
                for (size_t j = 0 ; j < n ; ++j)
                    if (rel[i][j]) {
                        ++p[i].first;
                        ++p[j].second;
                    }
            return p;
        };
        auto pa = profile(ra), pb = profile(rb);
        {
            auto sa = pa, sb = pb;
            std::sort(sa.begin(), sa.end());
            std::sort(sb.begin(), sb.end());
            if (sa != sb)
                return false;
        }

        vector<size_t> image(n);
        vector<bool> used(n, false);
        std::function<bool (size_t)> extend = [&] (size_t i) -> bool {
            if (i == n)
                return true;
            for (size_t j = 0 ; j < n ; ++j) {
                if (used[j] || pa[i] != pb[j])
                    continue;
                bool ok = ra[i][i] == rb[j][j];
                for (size_t k = 0 ; ok && k < i ; ++k)
                    ok = ra[i][k] == rb[j][image[k]] && ra[k][i] == rb[image[k]][j];
                if (! ok)
                    continue;
                used[j] = true;
                image[i] = j;
                if (extend(i + 1))
                    return true;
                used[j] = false;
            }
            return false;
        };
        return extend(0);
    }

    namespace
    {
        auto order_verdict(const RunLog & log, const CanonicalSpec & claimed, size_t W, Verdict & v) -> void
        {
            auto fp = fingerprint(log, W);
            v.evidence = fingerprint_json(fp);
            v.evidence.erase("elements");

            size_t m = (claimed.family == Family::OmegaK || claimed.family == Family::OmegaStarK) ? claimed.k : 1;
            bool want_least = false, want_greatest = false;
            std::optional<size_t> want_pred, want_succ;
            switch (claimed.family) {
                case Family::Omega:
                case Family::OmegaK:
                    want_least = true;
                    want_pred = m - 1;
                    want_succ = 0;
                    break;
                case Family::OmegaStar:
                case Family::OmegaStarK:
                    want_greatest = true;
                    want_pred = 0;
                    want_succ = m - 1;
                    break;
                case Family::OnePlusEta:
                    want_least = true;
                    break;
                case Family::EtaPlusOne:
                    want_greatest = true;
                    break;
                default:
                    break;
            }

            vector<string> problems;
            json witnesses = json::object();
            if (want_pred && fp.pred_unstable != *want_pred) {
                problems.push_back("pred_unstable " + std::to_string(fp.pred_unstable) + " != " + std::to_string(*want_pred));
                witnesses["pred_unstable"] = fp.pred_unstable_elements();
            }
            if (want_succ && fp.succ_unstable != *want_succ) {
                problems.push_back("succ_unstable " + std::to_string(fp.succ_unstable) + " != " + std::to_string(*want_succ));
                witnesses["succ_unstable"] = fp.succ_unstable_elements();
            }
            auto final_order = topological_order(log.final_diagram()).value_or(vector<Element>{ });
            if (want_least && ! fp.stable_least) {
                problems.push_back("no stable least element");
                if (! final_order.empty())
                    witnesses["unstable_least"] = { { "element", final_order.front() }, { "held", fp.least_held } };
            }
            if (! want_least && fp.stable_least) {
                problems.push_back("unexpected stable least element");
                witnesses["stable_least"] = *fp.stable_least;
            }
            if (want_greatest && ! fp.stable_greatest) {
                problems.push_back("no stable greatest element");
                if (! final_order.empty())
                    witnesses["unstable_greatest"] = { { "element", final_order.back() }, { "held", fp.greatest_held } };
            }
            if (! want_greatest && fp.stable_greatest) {
                problems.push_back("unexpected stable greatest element");
                witnesses["stable_greatest"] = *fp.stable_greatest;
            }

            v.consistent = problems.empty();
            for (auto & p : problems)
                v.reason += (v.reason.empty() ? "" : "; ") + p;
            if (! v.consistent)
                v.evidence["witnesses"] = witnesses;
        }

        auto equivalence_verdict(const RunLog & log, const CanonicalSpec & claimed, size_t window, Verdict & v) -> void
        {
            auto c = census(log, window);
            json frozen = json::array();
            for (auto & r : c.classes)
                if (r.frozen)
                    frozen.push_back({ { "representative", r.representative }, { "size", r.size } });
            std::map<size_t, size_t> by_size;
            for (auto & r : c.classes)
                if (r.frozen)
                    ++by_size[r.size];

            v.evidence = json{ { "window", window }, { "classes", c.classes.size() },
                { "frozen_count", c.frozen_count() }, { "from_annotations", c.from_annotations } };
            json sizes = json::object();
            for (auto & [size, count] : by_size)
                sizes[std::to_string(size)] = count;
            v.evidence["frozen_by_size"] = sizes;

            auto k = claimed.k;
            switch (claimed.family) {
                case Family::E:
                    v.consistent = c.frozen_count() == 0;
                    if (! v.consistent)
                        v.reason = "frozen classes present";
                    break;
                case Family::EK:
                    v.consistent = c.frozen_count() == 1 && c.frozen_of_size(k) == 1;
                    if (! v.consistent)
                        v.reason = "expected exactly one frozen class, of size " + std::to_string(k);
                    break;
                case Family::EHatK:
                    v.consistent = c.frozen_of_size(k) >= 2 && c.frozen_count() == c.frozen_of_size(k);
                    if (! v.consistent)
                        v.reason = "expected at least two frozen classes, all of size " + std::to_string(k);
                    break;
                default:
                    break;
            }
            if (! v.consistent) {
                // witnesses: offending frozen classes, or the largest frozen sizes seen
                json w = json::array();
                for (auto & r : c.classes)
                    if (r.frozen && (claimed.family == Family::E || r.size != k || claimed.family == Family::EK))
                        w.push_back({ { "representative", r.representative }, { "size", r.size } });
                if (w.empty())
                    for (auto & r : c.classes)
                        if (! r.frozen && r.size == k)
                            w.push_back({ { "representative", r.representative }, { "size", r.size },
                                    { "last_growth", r.last_growth } });
                if (w.size() > 16)
                    w.erase(w.begin() + 16, w.end());
                v.evidence["witnesses"] = w;
            }
        }
    }

    auto consistency_verdict(const RunLog & log, const CanonicalSpec & claimed, size_t W, size_t window) -> Verdict
    {
        Verdict v;
        v.claim = claimed.name();
        if (log.signature() != claimed.signature()) {
            v.reason = "log is " + signature_name(log.signature()) + ", claim is " + signature_name(claimed.signature());
            v.evidence = json{ { "witnesses", { { "signature", signature_name(log.signature()) } } } };
            return v;
        }
        if (window == 0)
            window = std::max(W, ceil_quarter(log.stage_count()));
        if (log.signature() == Signature::LinearOrder)
            order_verdict(log, claimed, W, v);
        else
            equivalence_verdict(log, claimed, window, v);
        return v;
    }

    auto census_json(const ClassCensus & c) -> json
    {
        json classes = json::array();
        for (auto & r : c.classes)
            classes.push_back({ { "representative", r.representative }, { "size", r.size },
                    { "frozen", r.frozen }, { "last_growth", r.last_growth } });
        return json{ { "from_annotations", c.from_annotations }, { "classes", classes } };
    }

    auto fingerprint_json(const OrderFingerprint & fp) -> json
    {
        json elements = json::array();
        for (auto & e : fp.elements)
            elements.push_back({ { "element", e.element }, { "entered_at", e.entered_at },
                    { "pred_changes", e.pred_changes }, { "succ_changes", e.succ_changes } });
        return json{
            { "W", fp.window },
            { "horizon", fp.horizon },
            { "pred_unstable", fp.pred_unstable },
            { "succ_unstable", fp.succ_unstable },
            { "stable_least", fp.stable_least ? json(*fp.stable_least) : json() },
            { "stable_greatest", fp.stable_greatest ? json(*fp.stable_greatest) : json() },
            { "least_held", fp.least_held },
            { "greatest_held", fp.greatest_held },
            { "elements", elements }
        };
    }

    auto verdict_json(const Verdict & v) -> json
    {
        return json{
            { "claim", v.claim },
            { "verdict", v.consistent ? "CONSISTENT" : "INCONSISTENT" },
            { "reason", v.reason },
            { "evidence", v.evidence }
        };
    }
}
