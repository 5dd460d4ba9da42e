/* vim: set sw=4 sts=4 et : */

#ifndef EMBEDLAB_GUARD_CONSTRUCTIONS_HH
#define EMBEDLAB_GUARD_CONSTRUCTIONS_HH 1

#include <embedlab/operator.hh>
#include <embedlab/sigma2.hh>
#include <embedlab/stream.hh>

#include <functional>
#include <memory>

namespace embedlab
{
    /**
     * Stage-wise approximations of two linear-order targets A and B. Stage t
     * of each stream must add exactly one element. A^t embeds into B^{u(t)}
     * and B^t into A^{v(t)}; for finite linear orders the embedding maps by
     * rank, padding on top, so u(t) >= t and v(t) >= t are required.
     */
    struct StagePair
    {
        StructureStream a;
        StructureStream b;
        std::function<std::size_t (std::size_t)> u = [] (std::size_t t) { return t; };
        std::function<std::size_t (std::size_t)> v = [] (std::size_t t) { return t; };
    };

    /**
     * The guess machine turning a presentation of omega (resp. omega*) into
     * a copy of A (resp. B). The guess is (building, t, l, r), with l and r
     * the least and greatest input elements seen so far. Output elements are
     * numbered 0, 1, ... in creation order. Annotations: building, t, l, r,
     * switches.
     */
    auto phi_pair(StagePair) -> ConstructionPtr;

    /**
     * Places one new output element per stage at the top (copying omega) or
     * the bottom (copying omega*) according to the phi and psi witnesses of
     * the current input stage. Annotations: placement, case, phi_witnesses,
     * psi_witnesses.
     */
    auto phi_sigma2(std::shared_ptr<const Sigma2Sentence> phi, std::shared_ptr<const Sigma2Sentence> psi)
        -> ConstructionPtr;
}

#endif
