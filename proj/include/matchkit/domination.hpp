#ifndef MATCHKIT_DOMINATION_HPP
#define MATCHKIT_DOMINATION_HPP

#include "matchkit/model.hpp"
#include "matchkit/stability.hpp"

#include <array>
#include <functional>
#include <optional>
#include <string_view>
#include <vector>

namespace matchkit {

/// Non-empty set of agents drawn from both sides (see CoalitionMask).
class Coalition
{
public:
    /// Throws EmptyCoalition or UnknownAgent.
    Coalition(const Market& market, const std::vector<AgentId>& members);
    static Coalition from_mask(const Market& market, CoalitionMask mask);

    CoalitionMask mask() const { return mask_; }
    bool contains(const Market& market, AgentId a) const { return (mask_ >> market.coalition_bit(a)) & 1U; }

    friend bool operator==(const Coalition&, const Coalition&) = default;

private:
    explicit Coalition(CoalitionMask mask) : mask_(mask) {}
    CoalitionMask mask_ = 0;
};

/// Weak order an agent uses when comparing its assignment `first` against
/// `second` inside a domination: Blair for firms and for many-to-many
/// workers, the raw list order for many-to-one workers.
bool prefers(const Market& market, AgentId a, SubsetMask first, SubsetMask second);

enum class DominationKind { Domination, SetwiseDomination };

std::string_view to_string(DominationKind kind);

/// How "new partners of S lie in S" is read for setwise domination.
/// Union: (U mu'(a)) \ (U mu(a)) <= S over a in S. PerAgent:
/// mu'(a) \ mu(a) <= S for each a in S.
enum class SetwiseReading { Union, PerAgent };

std::string_view to_string(SetwiseReading reading);

struct DominationOptions
{
    SetwiseReading reading = SetwiseReading::Union;

    /// Setwise only: also require every agent outside the coalition to keep
    /// exactly its old partners. Off by default; the formal condition has no
    /// such clause.
    bool preserve_outside_links = false;
};

/// mu' dominates mu via S: every member's new partners lie in S, every
/// member weakly prefers its new assignment and one strictly.
/// Throws EmptyCoalition (never for a constructed Coalition) or
/// IdenticalMatchings.
bool dominates(const Market& market, const Matching& dominating, const Matching& mu, const Coalition& coalition);

/// Like `dominates`, but only partners the coalition did not already have
/// must lie in S, read per `options.reading`.
bool setwise_dominates(const Market& market, const Matching& dominating, const Matching& mu,
                       const Coalition& coalition, const DominationOptions& options = {});

struct DominationWitness
{
    Matching dominating;
    CoalitionMask coalition = 0;
    AgentId strict_agent;
    DominationKind kind = DominationKind::Domination;

    friend bool operator==(const DominationWitness&, const DominationWitness&) = default;
};

/// Re-checks a witness under the predicate of its kind.
bool verify_witness(const Market& market, const Matching& mu, const DominationWitness& witness,
                    const DominationOptions& options = {});

/// Worker clause of the worker-quasi notions: the witness makes worker w
/// (in S) give up part of its assignment. Many-to-one: mu(w) is non-empty
/// and changes. Many-to-many: mu(w) is not within mu'(w).
bool breaks_worker_clause(const Market& market, int w, SubsetMask before, SubsetMask after);
/// Firm clause: mu(f) is not within mu'(f).
bool breaks_firm_clause(SubsetMask before, SubsetMask after);

/// Exhaustive search over every matching and every coalition. Holds the
/// enumeration so repeated queries on one market share it.
class DominationSearch
{
public:
    explicit DominationSearch(const Market& market, const EnumerationLimits& limits = {},
                              DominationOptions options = {});

    const Market& market() const { return market_; }
    const DominationOptions& options() const { return options_; }
    const std::vector<Matching>& matchings() const { return matchings_; }

    /// Calls `visit` for every witness of `kind` against mu, ordered by the
    /// dominating matching's enumeration position, then by coalition mask.
    /// Stops early when `visit` returns false.
    void for_each(const Matching& mu, DominationKind kind,
                  const std::function<bool(const DominationWitness&)>& visit) const;

    std::vector<DominationWitness> find(const Matching& mu, DominationKind kind) const;

    /// First witness per category, scanning once.
    struct Firsts
    {
        std::optional<DominationWitness> domination;
        std::optional<DominationWitness> worker_clause_domination;
        std::optional<DominationWitness> firm_clause_domination;
        std::optional<DominationWitness> setwise;
        std::optional<DominationWitness> worker_clause_setwise;
        std::optional<DominationWitness> firm_clause_setwise;
    };
    Firsts firsts(const Matching& mu) const;

private:
    const Market& market_;
    DominationOptions options_;
    std::vector<Matching> matchings_;
};

std::vector<DominationWitness> find_dominations(const Market& market, const Matching& mu, DominationKind kind,
                                                const EnumerationLimits& limits = {});

bool in_core(const Market& market, const Matching& mu, const EnumerationLimits& limits = {});
bool in_worker_quasi_core(const Market& market, const Matching& mu, const EnumerationLimits& limits = {});
bool in_firm_quasi_core(const Market& market, const Matching& mu, const EnumerationLimits& limits = {});
bool in_setwise_stable(const Market& market, const Matching& mu, const EnumerationLimits& limits = {},
                       const DominationOptions& options = {});
bool in_worker_quasi_setwise(const Market& market, const Matching& mu, const EnumerationLimits& limits = {},
                             const DominationOptions& options = {});
bool in_firm_quasi_setwise(const Market& market, const Matching& mu, const EnumerationLimits& limits = {},
                           const DominationOptions& options = {});

enum class StabilitySet {
    IndividuallyRational,
    PairwiseStable,
    Core,
    WorkerQuasiCore,
    FirmQuasiCore,
    WorkerQuasiStable,
    FirmQuasiStable,
    SetwiseStable,
    WorkerQuasiSetwise,
    FirmQuasiSetwise,
};

inline constexpr std::array<StabilitySet, 10> all_stability_sets = {
    StabilitySet::IndividuallyRational, StabilitySet::PairwiseStable,  StabilitySet::Core,
    StabilitySet::WorkerQuasiCore,      StabilitySet::FirmQuasiCore,   StabilitySet::WorkerQuasiStable,
    StabilitySet::FirmQuasiStable,      StabilitySet::SetwiseStable,   StabilitySet::WorkerQuasiSetwise,
    StabilitySet::FirmQuasiSetwise,
};

/// Short name: I, S, C, C^QW, C^QF, QW, QF, SW, SW^QW, SW^QF.
std::string_view short_name(StabilitySet set);
std::string_view long_name(StabilitySet set);

/// One matching's membership across every notion, with a witness for each
/// failed notion where one exists.
struct ClassificationRecord
{
    Matching matching;

    bool individually_rational = false;
    bool pairwise_stable = false;
    bool core = false;
    bool worker_quasi_core = false;
    bool firm_quasi_core = false;
    bool worker_quasi_stable = false;
    bool firm_quasi_stable = false;
    bool setwise_stable = false;
    bool worker_quasi_setwise = false;
    bool firm_quasi_setwise = false;

    std::optional<AgentId> blocking_agent;
    std::optional<BlockingPair> blocking_pair;
    std::optional<QuasiViolation> worker_quasi_violation;
    std::optional<QuasiViolation> firm_quasi_violation;
    std::optional<DominationWitness> core_witness;
    std::optional<DominationWitness> worker_quasi_core_witness;
    std::optional<DominationWitness> firm_quasi_core_witness;
    std::optional<DominationWitness> setwise_witness;
    std::optional<DominationWitness> worker_quasi_setwise_witness;
    std::optional<DominationWitness> firm_quasi_setwise_witness;

    bool member(StabilitySet set) const;
};

ClassificationRecord classify(const Market& market, const Matching& mu, const EnumerationLimits& limits = {});
ClassificationRecord classify(const DominationSearch& search, const Matching& mu);

/// Every enumerated matching classified, in enumeration order.
struct StabilitySets
{
    std::vector<ClassificationRecord> records;

    std::vector<Matching> of(StabilitySet set) const;
};

StabilitySets stability_sets(const Market& market, const EnumerationLimits& limits = {});
StabilitySets stability_sets(const DominationSearch& search);

} // namespace matchkit

#endif
