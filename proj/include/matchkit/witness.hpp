#ifndef MATCHKIT_WITNESS_HPP
#define MATCHKIT_WITNESS_HPP

#include "matchkit/domination.hpp"

#include <string>

namespace matchkit {

/// Output of a proof construction. Every construction re-checks its result
/// with the domination predicates and throws InternalConsistency instead of
/// returning something unverified, so `verified` is always true here.
struct ConstructionReport
{
    std::string description;
    Matching dominating;
    CoalitionMask coalition = 0;
    DominationKind kind = DominationKind::Domination;
    bool verified = false;
};

/// Rebuilds mu with some agents' assignments overridden and every link that
/// contradicts an override removed. Many-to-one: a worker given a new firm
/// loses its old one. Other links are kept.
///
/// `firm_overrides[f]` and `worker_overrides[w]` hold the prescribed sets;
/// nullopt leaves the agent to the completion rule.
Matching complete_matching(const Market& market, const Matching& mu,
                           const std::vector<std::optional<SubsetMask>>& firm_overrides,
                           const std::vector<std::optional<SubsetMask>>& worker_overrides);

/// Many-to-one. From a blocking pair (f, w'): f takes C_f(mu(f) + {w'}),
/// S = {f} plus those workers. Throws PreconditionFailed (mode) or
/// NotABlockingPair.
ConstructionReport domination_from_blocking_pair_m21(const Market& market, const Matching& mu, BlockingPair pair);

/// Many-to-one. f takes C_f(mu(f) + T) for a non-empty T within W_f. Throws
/// EmptyT, TNotInDesireSet, or PreconditionFailed when f would take nobody
/// from T.
ConstructionReport domination_from_firm_block_m21(const Market& market, const Matching& mu, int f, SubsetMask offered);

/// Many-to-one. Turns a domination that moves a matched worker into a
/// blocking pair whose worker is matched. Throws PreconditionFailed.
BlockingPair blocking_pair_from_quasi_core_violation_m21(const Market& market, const Matching& mu,
                                                         const Matching& dominating, const Coalition& coalition,
                                                         int w);

/// Many-to-many. From a worker w and K within its desire set with
/// mu(w) not within C_w(mu(w) + K): w takes that choice, every new firm f
/// takes C_f(mu(f) + {w}), S = {w} plus the new firms. The result setwise
/// dominates mu and w gives up part of mu(w). Throws PreconditionFailed.
ConstructionReport setwise_domination_from_qw_violation_m2m(const Market& market, const Matching& mu, int w,
                                                            SubsetMask offered);

/// Many-to-many. For mu worker- and firm-quasi-stable with blocking pair
/// (f, w): add the link, S = every agent. Throws PreconditionFailed.
ConstructionReport domination_from_double_quasi_m2m(const Market& market, const Matching& mu, BlockingPair pair);

} // namespace matchkit

#endif
