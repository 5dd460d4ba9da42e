/* vim: set sw=4 sts=4 et : */

#include <embedlab/stream.hh>
#include <embedlab/dyadic.hh>
#include <embedlab/errors.hh>

#include <algorithm>
#include <cctype>
#include <charconv>
#include <map>
#include <optional>
#include <set>
#include <unordered_map>

using std::size_t;
using std::string;
using std::string_view;
using std::vector;

namespace embedlab
{
    namespace
    {
        struct FamilyInfo
        {
            Family family;
            const char * name;
            bool takes_k;
            Signature signature;
        };

        constexpr FamilyInfo families[] = {
            { Family::Omega,      "omega",        false, Signature::LinearOrder },
            { Family::OmegaStar,  "omega_star",   false, Signature::LinearOrder },
            { Family::OmegaK,     "omega_k",      true,  Signature::LinearOrder },
            { Family::OmegaStarK, "omega_star_k", true,  Signature::LinearOrder },
            { Family::OnePlusEta, "one_plus_eta", false, Signature::LinearOrder },
            { Family::EtaPlusOne, "eta_plus_one", false, Signature::LinearOrder },
            { Family::Eta,        "eta",          false, Signature::LinearOrder },
            { Family::E,          "e",            false, Signature::Equivalence },
            { Family::EK,         "e_k",          true,  Signature::Equivalence },
            { Family::EHatK,      "e_hat_k",      true,  Signature::Equivalence },
        };

        auto info(Family f) -> const FamilyInfo &
        {
            for (auto & i : families)
                if (i.family == f)
                    return i;
            throw InvalidSpec("unknown family");
        }

        // Knuth's MMIX multiplier and increment; the high half is the output
        class Lcg
        {
            public:
                explicit Lcg(std::uint64_t seed) : _state(seed) { }

                auto next() -> std::uint32_t
                {
                    _state = _state * 6364136223846793005ULL + 1442695040888963407ULL;
                    return static_cast<std::uint32_t>(_state >> 32);
                }

            private:
                std::uint64_t _state;
        };

        template <typename T_>
        auto permute_prefix(vector<T_> & roles, std::uint64_t seed) -> void
        {
            auto n = std::min(roles.size(), permuted_prefix);
            Lcg rng(seed);
            for (size_t i = n ; i > 1 ; --i) {
                auto j = rng.next() % i;
                std::swap(roles[i - 1], roles[j]);
            }
        }

        struct OrderKey
        {
            std::int64_t major;
            double minor;

            auto operator< (const OrderKey & other) const -> bool
            {
                return major != other.major ? major < other.major : minor < other.minor;
            }
        };

        auto order_roles(const CanonicalSpec & spec, size_t count) -> vector<OrderKey>
        {
            vector<OrderKey> roles;
            roles.reserve(count);
            auto k = static_cast<std::int64_t>(spec.k);
            switch (spec.family) {
                case Family::Omega:
                case Family::OmegaK:
                case Family::OmegaStar:
                case Family::OmegaStarK: {
                    bool star = spec.family == Family::OmegaStar || spec.family == Family::OmegaStarK;
                    if (spec.family == Family::Omega || spec.family == Family::OmegaStar)
                        k = 1;
                    for (size_t i = 0 ; i < count ; ++i) {
                        auto block = static_cast<std::int64_t>(i) % k;
                        auto index = static_cast<double>(static_cast<std::int64_t>(i) / k);
                        roles.push_back(OrderKey{ block, star ? -index : index });
                    }
                    break;
                }
                case Family::Eta:
                    for (auto v : dense_sequence(count))
                        roles.push_back(OrderKey{ 0, v });
                    break;
                case Family::OnePlusEta:
                case Family::EtaPlusOne: {
                    if (count == 0)
                        break;
                    roles.push_back(OrderKey{ spec.family == Family::OnePlusEta ? -1 : 1, 0.0 });
                    for (auto v : dense_sequence(count - 1))
                        roles.push_back(OrderKey{ 0, v });
                    break;
                }
                default:
                    throw InvalidSpec("not an order family");
            }
            return roles;
        }

        auto generate_order(const CanonicalSpec & spec, size_t stages) -> vector<vector<Fact>>
        {
            auto roles = order_roles(spec, stages);
            if (spec.policy.kind == PolicyKind::Permuted)
                permute_prefix(roles, spec.policy.seed);

            vector<vector<Fact>> deltas;
            deltas.reserve(stages);
            std::map<OrderKey, Element> placed;
            for (size_t s = 0 ; s < stages ; ++s) {
                Element x = s;
                auto [it, _] = placed.emplace(roles[s], x);
                vector<Fact> delta{ Fact::el(x) };
                if (it != placed.begin())
                    delta.push_back(Fact::lt(std::prev(it)->second, x));
                if (std::next(it) != placed.end())
                    delta.push_back(Fact::lt(x, std::next(it)->second));
                deltas.push_back(std::move(delta));
            }
            return deltas;
        }

        // class labels: 2i for the i-th infinite class, 2j + 1 for the j-th finite one
        auto generate_equivalence(const CanonicalSpec & spec, size_t stages) -> vector<vector<Fact>>
        {
            vector<std::uint64_t> labels;
            vector<size_t> stage_sizes;
            for (size_t s = 0 ; s < stages ; ++s) {
                size_t before = labels.size();
                labels.push_back(2 * cantor_unpair(s).first);
                if ((spec.family == Family::EK && s == 0) || spec.family == Family::EHatK)
                    for (std::uint64_t m = 0 ; m < spec.k ; ++m)
                        labels.push_back(2 * s + 1);
                stage_sizes.push_back(labels.size() - before);
            }
            if (spec.policy.kind == PolicyKind::Permuted)
                permute_prefix(labels, spec.policy.seed);

            vector<vector<Fact>> deltas;
            deltas.reserve(stages);
            std::unordered_map<std::uint64_t, Element> representative;
            Element next_id = 0;
            for (auto size : stage_sizes) {
                vector<Fact> delta;
                for (size_t i = 0 ; i < size ; ++i, ++next_id) {
                    auto label = labels[next_id];
                    auto [it, inserted] = representative.emplace(label, next_id);
                    delta.push_back(inserted ? Fact::el(next_id) : Fact::sim(it->second, next_id));
                }
                deltas.push_back(std::move(delta));
            }
            return deltas;
        }

        auto parse_number(string_view text, const string & what) -> std::uint64_t
        {
            std::uint64_t value = 0;
            auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
            if (ec != std::errc{ } || ptr != text.data() + text.size())
                throw InvalidSpec("bad " + what + " '" + string(text) + "'");
            return value;
        }
    }

    auto family_name(Family f) -> string
    {
        return info(f).name;
    }

    auto family_takes_k(Family f) -> bool
    {
        return info(f).takes_k;
    }

    auto parse_family(string_view name) -> Family
    {
        for (auto & i : families)
            if (name == i.name)
                return i.family;
        throw InvalidSpec("unknown family '" + string(name) + "'");
    }

    auto parse_policy(string_view name, std::uint64_t seed) -> Policy
    {
        if (name == "fair")
            return Policy{ PolicyKind::Fair, 0 };
        if (name == "permuted")
            return Policy{ PolicyKind::Permuted, seed };
        if (name == "descending")
            return Policy{ PolicyKind::Descending, 0 };
        if (name == "ascending")
            return Policy{ PolicyKind::Ascending, 0 };
        throw InvalidSpec("unknown policy '" + string(name) + "'");
    }

    auto policy_name(const Policy & p) -> string
    {
        switch (p.kind) {
            case PolicyKind::Fair:       return "fair";
            case PolicyKind::Permuted:   return "permuted:" + std::to_string(p.seed);
            case PolicyKind::Descending: return "descending";
            case PolicyKind::Ascending:  return "ascending";
        }
        return "?";
    }

    auto CanonicalSpec::signature() const -> Signature
    {
        return info(family).signature;
    }

    auto CanonicalSpec::name() const -> string
    {
        auto base = family_name(family);
        return family_takes_k(family) ? base + ":" + std::to_string(k) : base;
    }

    auto CanonicalSpec::describe() const -> string
    {
        return name() + "/" + policy_name(policy);
    }

    auto parse_claim(string_view text) -> CanonicalSpec
    {
        CanonicalSpec spec;
        auto colon = text.find(':');
        spec.family = parse_family(text.substr(0, colon));
        if (colon != string_view::npos) {
            if (! family_takes_k(spec.family))
                throw InvalidSpec("family '" + family_name(spec.family) + "' takes no parameter");
            spec.k = parse_number(text.substr(colon + 1), "k");
        }
        validate(spec);
        return spec;
    }

    auto validate(const CanonicalSpec & spec) -> void
    {
        if (family_takes_k(spec.family) && spec.k == 0)
            throw InvalidSpec("k must be at least 1");

        bool single_omega = spec.family == Family::Omega || (spec.family == Family::OmegaK && spec.k == 1);
        bool single_omega_star = spec.family == Family::OmegaStar || (spec.family == Family::OmegaStarK && spec.k == 1);
        if (spec.policy.kind == PolicyKind::Ascending && ! single_omega)
            throw InvalidSpec("ascending enumeration only exists for omega");
        if (spec.policy.kind == PolicyKind::Descending && ! single_omega_star)
            throw InvalidSpec("descending enumeration only exists for omega_star");
    }

    StructureStream::StructureStream(Signature sig, string provenance, vector<vector<Fact>> deltas) :
        _signature(sig),
        _provenance(std::move(provenance))
    {
        std::set<Fact> seen;
        _deltas.reserve(deltas.size());
        for (auto & delta : deltas) {
            vector<Fact> fresh;
            for (auto & f : delta) {
                if (! admits(sig, f.relation))
                    throw SignatureError("stream fact '" + to_string(f) + "' not admitted by " + signature_name(sig));
                auto g = (f.relation == Relation::Sim) ? Fact::sim(f.lhs, f.rhs) : f;
                if (seen.insert(g).second)
                    fresh.push_back(g);
            }
            _deltas.push_back(std::move(fresh));
        }
    }

    auto StructureStream::stage(size_t s) const -> FiniteDiagram
    {
        if (s >= _deltas.size())
            throw std::out_of_range("stream has " + std::to_string(_deltas.size()) + " stages");
        vector<Fact> facts;
        for (size_t t = 0 ; t <= s ; ++t)
            facts.insert(facts.end(), _deltas[t].begin(), _deltas[t].end());
        return FiniteDiagram(_signature, std::move(facts));
    }

    auto StructureStream::final_stage() const -> FiniteDiagram
    {
        if (_deltas.empty())
            return FiniteDiagram(_signature);
        return stage(_deltas.size() - 1);
    }

    StageCursor::StageCursor(const StructureStream & stream) :
        _stream(stream),
        _current(stream.signature())
    {
    }

    auto StageCursor::next() -> bool
    {
        if (_index >= _stream.stage_count())
            return false;
        _current = _current.united_with(_stream.delta(_index));
        ++_index;
        return true;
    }

    auto generate(const CanonicalSpec & spec, size_t stages) -> StructureStream
    {
        validate(spec);
        if (stages == 0)
            throw InvalidSpec("stages must be at least 1");
        auto deltas = spec.signature() == Signature::LinearOrder
            ? generate_order(spec, stages) : generate_equivalence(spec, stages);
        return StructureStream(spec.signature(), spec.describe(), std::move(deltas));
    }

    auto restrict(const StructureStream & stream, const vector<Element> & keep) -> StructureStream
    {
        vector<vector<Fact>> deltas;
        StageCursor cursor(stream);
        std::set<Fact> emitted;
        while (cursor.next()) {
            vector<Fact> delta;
            auto restricted = cursor.current().restricted_to(keep);
            for (auto & f : restricted.facts())
                if (emitted.insert(f).second)
                    delta.push_back(f);
            deltas.push_back(std::move(delta));
        }
        return StructureStream(stream.signature(), stream.provenance() + "|restricted", std::move(deltas));
    }

    auto format_stream(const StructureStream & stream) -> string
    {
        string out = "# embedlab stream signature=" + signature_name(stream.signature())
            + " provenance=" + stream.provenance() + "\n";
        for (size_t s = 0 ; s < stream.stage_count() ; ++s) {
            out += "-- stage " + std::to_string(s) + "\n";
            for (auto & f : stream.delta(s))
                out += to_string(f) + "\n";
        }
        return out;
    }

    auto parse_stream(string_view text) -> StructureStream
    {
        std::optional<Signature> hinted;
        string provenance = "file";
        vector<vector<Fact>> deltas;
        size_t line_number = 0;

        while (! text.empty()) {
            ++line_number;
            auto nl = text.find('\n');
            auto line = text.substr(0, nl);
            text = (nl == string_view::npos) ? string_view{ } : text.substr(nl + 1);

            constexpr string_view header = "# embedlab stream ";
            if (line.starts_with(header)) {
                auto rest = line.substr(header.size());
                if (auto pos = rest.find("signature=") ; pos != string_view::npos) {
                    auto value = rest.substr(pos + 10);
                    hinted = parse_signature(value.substr(0, value.find(' ')));
                }
                if (auto pos = rest.find("provenance=") ; pos != string_view::npos)
                    provenance = string(rest.substr(pos + 11));
                continue;
            }

            if (auto hash = line.find('#') ; hash != string_view::npos)
                line = line.substr(0, hash);
            while (! line.empty() && std::isspace(static_cast<unsigned char>(line.back())))
                line.remove_suffix(1);
            while (! line.empty() && std::isspace(static_cast<unsigned char>(line.front())))
                line.remove_prefix(1);
            if (line.empty())
                continue;

            constexpr string_view marker = "-- stage ";
            if (line.starts_with(marker)) {
                std::uint64_t s = 0;
                auto digits = line.substr(marker.size());
                auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), s);
                if (ec != std::errc{ } || ptr != digits.data() + digits.size() || s != deltas.size())
                    throw ParseError("line " + std::to_string(line_number) + ": expected '-- stage "
                            + std::to_string(deltas.size()) + "'");
                deltas.emplace_back();
                continue;
            }

            if (deltas.empty())
                throw ParseError("line " + std::to_string(line_number) + ": fact before the first stage marker");
            try {
                deltas.back().push_back(parse_fact(line));
            }
            catch (const ParseError & e) {
                throw ParseError("line " + std::to_string(line_number) + ": " + e.what());
            }
        }

        Signature sig = hinted.value_or(Signature::LinearOrder);
        if (! hinted)
            for (auto & d : deltas)
                for (auto & f : d)
                    if (f.relation == Relation::Sim)
                        sig = Signature::Equivalence;

        StructureStream stream(sig, provenance, std::move(deltas));
        if (sig == Signature::LinearOrder && ! stream.final_stage().is_consistent())
            throw InconsistentDiagram("stream facts contain an lt cycle");
        return stream;
    }
}
