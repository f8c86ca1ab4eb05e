#ifndef MATCHKIT_STABILITY_HPP
#define MATCHKIT_STABILITY_HPP

#include "matchkit/model.hpp"

#include <optional>
#include <vector>

namespace matchkit {

struct BlockingPair
{
    int firm = 0;
    int worker = 0;

    friend auto operator<=>(const BlockingPair&, const BlockingPair&) = default;
};

/// Who wants whom at a matching. Current partners are never listed.
///
/// - `firm_wanted_by[f]`: workers who want firm f. Many-to-one: workers w
///   with {f} ranked strictly above their current assignment. Many-to-many:
///   workers w with f chosen from mu(w) + {f}.
/// - `worker_wanted_by[w]`: firms f with w chosen from mu(f) + {w}. Filled in
///   both modes.
struct DesireSets
{
    std::vector<SubsetMask> firm_wanted_by;
    std::vector<SubsetMask> worker_wanted_by;
};

/// True iff agent `a` would drop part of its assignment. Many-to-one
/// workers: the empty set ranks above their firm. Throws UnknownAgent.
bool blocked_by_agent(const Market& market, const Matching& mu, AgentId a);

/// First blocking agent (firms before workers, by index), if any.
std::optional<AgentId> first_blocking_agent(const Market& market, const Matching& mu);

bool individually_rational(const Market& market, const Matching& mu);

/// True iff the worker would accept firm f given its current assignment.
bool worker_accepts(const Market& market, const Matching& mu, int f, int w);
/// True iff firm f would choose worker w from mu(f) + {w}.
bool firm_accepts(const Market& market, const Matching& mu, int f, int w);

bool blocks(const Market& market, const Matching& mu, int f, int w);

/// Ascending by (firm, worker).
std::vector<BlockingPair> blocking_pairs(const Market& market, const Matching& mu);

bool is_pairwise_stable(const Market& market, const Matching& mu);

DesireSets desire_sets(const Market& market, const Matching& mu);

/// A quasi-stability failure: `agent` drops part of its assignment when
/// offered `offered` (a subset of its desire set) and picks `chosen`.
struct QuasiViolation
{
    AgentId agent;
    SubsetMask offered = 0;
    SubsetMask chosen = 0;
};

/// Many-to-one: IR and every blocking pair has an unmatched worker.
/// Many-to-many: IR and mu(w) <= C_w(mu(w) + F_w) for every worker, where
/// F_w is the full desire set.
bool is_worker_quasi_stable(const Market& market, const Matching& mu);

/// Many-to-many: IR and mu(w) <= C_w(mu(w) + K) for every K within the
/// worker's desire set. Many-to-one: IR and every (f, w) pair of the market
/// is checked against the blocking condition directly. Throws
/// SizeLimitExceeded when a desire set exceeds `limits.max_desire_set`.
bool is_worker_quasi_stable_definitional(const Market& market, const Matching& mu,
                                         const EnumerationLimits& limits = {});

/// IR and mu(f) <= C_f(mu(f) + D_f) for every firm, D_f being the workers
/// who want f.
bool is_firm_quasi_stable(const Market& market, const Matching& mu);

/// Same as above, quantified over every T within D_f.
bool is_firm_quasi_stable_definitional(const Market& market, const Matching& mu,
                                       const EnumerationLimits& limits = {});

/// The maximal-desire-set violation behind a worker-quasi-stability failure
/// of an IR matching; nullopt when every worker is fine. Many-to-one
/// reports the matched worker of the first blocking pair, offered that firm.
std::optional<QuasiViolation> worker_quasi_violation(const Market& market, const Matching& mu);
std::optional<QuasiViolation> firm_quasi_violation(const Market& market, const Matching& mu);

} // namespace matchkit

#endif
