/* vim: set sw=4 sts=4 et : */

#ifndef EMBEDLAB_GUARD_STREAM_HH
#define EMBEDLAB_GUARD_STREAM_HH 1

#include <embedlab/diagram.hh>

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace embedlab
{
    enum class Family
    {
        Omega,
        OmegaStar,
        OmegaK,
        OmegaStarK,
        OnePlusEta,
        EtaPlusOne,
        Eta,
        E,
        EK,
        EHatK
    };

    enum class PolicyKind
    {
        Fair,
        Permuted,
        Descending,
        Ascending
    };

    struct Policy
    {
        PolicyKind kind = PolicyKind::Fair;
        std::uint64_t seed = 0;

        auto operator== (const Policy &) const -> bool = default;
    };

    /// How many leading arrivals PERMUTED(seed) shuffles.
    inline constexpr std::size_t permuted_prefix = 32;

    /// One of the named structures, plus how its copy is enumerated.
    struct CanonicalSpec
    {
        Family family = Family::Omega;
        std::uint64_t k = 1;
        Policy policy{ };

        auto signature() const -> Signature;

        /// Family name with parameter, e.g. "omega_k:2" or "one_plus_eta".
        auto name() const -> std::string;

        /// name() plus the policy, e.g. "omega_k:2/permuted:7".
        auto describe() const -> std::string;

        auto operator== (const CanonicalSpec &) const -> bool = default;
    };

    auto family_name(Family) -> std::string;
    auto parse_family(std::string_view) -> Family;
    auto family_takes_k(Family) -> bool;
    auto parse_policy(std::string_view name, std::uint64_t seed) -> Policy;
    auto policy_name(const Policy &) -> std::string;

    /// Parses "omega_k:3", "e_hat_k:1", "one_plus_eta", ... with FAIR policy.
    auto parse_claim(std::string_view) -> CanonicalSpec;

    /// Checks k >= 1 and policy/family compatibility; throws InvalidSpec.
    auto validate(const CanonicalSpec &) -> void;

    /**
     * A presentation of a countable structure as cumulative finite stages.
     * Stored as per-stage deltas; stage(s) is the union of deltas 0..s.
     * Facts repeated from an earlier stage are dropped on construction.
     */
    class StructureStream
    {
        public:
            StructureStream(Signature, std::string provenance, std::vector<std::vector<Fact>> deltas);

            auto signature() const -> Signature { return _signature; }
            auto provenance() const -> const std::string & { return _provenance; }
            auto stage_count() const -> std::size_t { return _deltas.size(); }
            auto delta(std::size_t s) const -> const std::vector<Fact> & { return _deltas.at(s); }
            auto stage(std::size_t s) const -> FiniteDiagram;
            auto final_stage() const -> FiniteDiagram;

            auto operator== (const StructureStream &) const -> bool = default;

        private:
            Signature _signature;
            std::string _provenance;
            std::vector<std::vector<Fact>> _deltas;
    };

    /// Walks the cumulative stages of a stream without rebuilding from zero.
    class StageCursor
    {
        public:
            explicit StageCursor(const StructureStream &);

            /// Advances to the next stage; false after the last.
            auto next() -> bool;
            auto index() const -> std::size_t { return _index - 1; }
            auto current() const -> const FiniteDiagram & { return _current; }

        private:
            const StructureStream & _stream;
            std::size_t _index = 0;
            FiniteDiagram _current;
    };

    auto generate(const CanonicalSpec &, std::size_t stages) -> StructureStream;

    /// Stage s of the result is the union, over t <= s, of stage t restricted
    /// to `keep`.
    auto restrict(const StructureStream &, const std::vector<Element> & keep) -> StructureStream;

    /// Stream file: an optional header comment, then `-- stage <s>` blocks
    /// listing facts new at that stage.
    auto format_stream(const StructureStream &) -> std::string;
    auto parse_stream(std::string_view text) -> StructureStream;
}

#endif
