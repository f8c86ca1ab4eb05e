#include "matchkit/domination.hpp"

#include "matchkit/error.hpp"

namespace matchkit {

Coalition::Coalition(const Market& market, const std::vector<AgentId>& members)
{
    for (AgentId a : members) {
        if (!market.contains(a))
            throw Error(ErrorCode::UnknownAgent, "coalition member not in market");
        mask_ |= CoalitionMask{1} << market.coalition_bit(a);
    }
    if (mask_ == 0)
        throw Error(ErrorCode::EmptyCoalition, "coalition must be non-empty");
}

Coalition Coalition::from_mask(const Market& market, CoalitionMask mask)
{
    if (mask == 0)
        throw Error(ErrorCode::EmptyCoalition, "coalition must be non-empty");
    if (!bits::is_subset(mask, bits::full(market.n_agents())))
        throw Error(ErrorCode::UnknownAgent, "coalition member not in market");
    return Coalition(mask);
}

bool prefers(const Market& market, AgentId a, SubsetMask first, SubsetMask second)
{
    if (market.mode() == Mode::ManyToOne && a.side == Side::Worker)
        return worker_prefers_m21(market.worker_preference(a.index), first, second);
    return blair_weakly_prefers(market.choice(a), first, second);
}

std::string_view to_string(DominationKind kind)
{
    return kind == DominationKind::Domination ? "domination" : "setwise-domination";
}

std::string_view to_string(SetwiseReading reading)
{
    return reading == SetwiseReading::Union ? "union" : "per-agent";
}

bool breaks_worker_clause(const Market& market, int, SubsetMask before, SubsetMask after)
{
    if (market.mode() == Mode::ManyToOne)
        return before != 0 && before != after;
    return !bits::is_subset(before, after);
}

bool breaks_firm_clause(SubsetMask before, SubsetMask after)
{
    return !bits::is_subset(before, after);
}

namespace {

// Partners of the agent at coalition bit `bit`, expressed as coalition bits.
CoalitionMask partner_bits(const Market& market, const Matching& mu, int bit)
{
    if (bit < market.n_firms())
        return static_cast<CoalitionMask>(mu.firm_partners(bit)) << market.n_firms();
    return mu.worker_partners(bit - market.n_firms());
}

// Everything about one (mu, mu') pair that does not depend on the coalition.
struct PairProfile
{
    CoalitionMask weak = 0;          // agents weakly preferring mu'
    CoalitionMask changed = 0;       // agents whose assignment differs
    CoalitionMask worker_clause = 0; // workers giving up part of mu(w)
    CoalitionMask firm_clause = 0;   // firms giving up part of mu(f)
    std::vector<CoalitionMask> old_partners;
    std::vector<CoalitionMask> new_partners;

    CoalitionMask strict() const { return weak & changed; }
};

PairProfile profile(const Market& market, const Matching& mu, const Matching& other)
{
    PairProfile p;
    const int n = market.n_agents();
    p.old_partners.resize(n);
    p.new_partners.resize(n);
    for (int bit = 0; bit < n; ++bit) {
        const AgentId a = market.agent_at_bit(bit);
        const SubsetMask before = mu.partners(a);
        const SubsetMask after = other.partners(a);
        const CoalitionMask self = CoalitionMask{1} << bit;
        if (prefers(market, a, after, before))
            p.weak |= self;
        if (before != after)
            p.changed |= self;
        if (a.side == Side::Worker ? breaks_worker_clause(market, a.index, before, after)
                                   : breaks_firm_clause(before, after))
            (a.side == Side::Worker ? p.worker_clause : p.firm_clause) |= self;
        p.old_partners[bit] = partner_bits(market, mu, bit);
        p.new_partners[bit] = partner_bits(market, other, bit);
    }
    return p;
}

struct CoalitionTest
{
    bool domination = false;
    bool setwise = false;
};

CoalitionTest test_coalition(const PairProfile& p, CoalitionMask s, const DominationOptions& options)
{
    CoalitionMask joined_new = 0;
    CoalitionMask joined_old = 0;
    for (CoalitionMask rest = s; rest != 0; rest &= rest - 1) {
        const int bit = bits::lowest(rest);
        joined_new |= p.new_partners[bit];
        joined_old |= p.old_partners[bit];
    }
    CoalitionTest t;
    t.domination = (joined_new & ~s) == 0;
    if (options.reading == SetwiseReading::Union) {
        t.setwise = (joined_new & ~joined_old & ~s) == 0;
    } else {
        t.setwise = true;
        for (CoalitionMask rest = s; rest != 0 && t.setwise; rest &= rest - 1) {
            const int bit = bits::lowest(rest);
            t.setwise = (p.new_partners[bit] & ~p.old_partners[bit] & ~s) == 0;
        }
    }
    if (options.preserve_outside_links && (p.changed & ~s) != 0)
        t.setwise = false;
    return t;
}

bool check_pair(const Market& market, const Matching& dominating, const Matching& mu, const Coalition& coalition,
                DominationKind kind, const DominationOptions& options)
{
    if (dominating == mu)
        throw Error(ErrorCode::IdenticalMatchings, "domination compares two different matchings");
    const CoalitionMask s = coalition.mask();
    if (s == 0)
        throw Error(ErrorCode::EmptyCoalition, "coalition must be non-empty");
    const PairProfile p = profile(market, mu, dominating);
    if (!bits::is_subset(s, p.weak) || (s & p.strict()) == 0)
        return false;
    const CoalitionTest t = test_coalition(p, s, options);
    return kind == DominationKind::Domination ? t.domination : t.setwise;
}

} // namespace

bool dominates(const Market& market, const Matching& dominating, const Matching& mu, const Coalition& coalition)
{
    return check_pair(market, dominating, mu, coalition, DominationKind::Domination, {});
}

bool setwise_dominates(const Market& market, const Matching& dominating, const Matching& mu,
                       const Coalition& coalition, const DominationOptions& options)
{
    return check_pair(market, dominating, mu, coalition, DominationKind::SetwiseDomination, options);
}

bool verify_witness(const Market& market, const Matching& mu, const DominationWitness& witness,
                    const DominationOptions& options)
{
    if (witness.coalition == 0 || witness.dominating == mu)
        return false;
    const Coalition s = Coalition::from_mask(market, witness.coalition);
    if (!s.contains(market, witness.strict_agent))
        return false;
    const AgentId a = witness.strict_agent;
    if (witness.dominating.partners(a) == mu.partners(a)
        || !prefers(market, a, witness.dominating.partners(a), mu.partners(a)))
        return false;
    return check_pair(market, witness.dominating, mu, s, witness.kind, options);
}

DominationSearch::DominationSearch(const Market& market, const EnumerationLimits& limits,
                                   DominationOptions options)
    : market_(market), options_(options), matchings_(enumerate_matchings(market, limits))
{
}

namespace {

// Scans every (mu', S) once; `visit(candidate, profile, S, test)` returns
// false to stop.
template <typename Visit>
void scan(const Market& market, const std::vector<Matching>& candidates, const Matching& mu,
          const DominationOptions& options, Visit&& visit)
{
    for (const Matching& other : candidates) {
        if (other == mu)
            continue;
        const PairProfile p = profile(market, mu, other);
        const CoalitionMask strict = p.strict();
        if (strict == 0)
            continue;
        // Ascending non-empty submasks of the weakly-preferring agents.
        for (CoalitionMask s = (0 - p.weak) & p.weak; s != 0; s = (s - p.weak) & p.weak) {
            if ((s & strict) == 0)
                continue;
            const CoalitionTest t = test_coalition(p, s, options);
            if (!t.domination && !t.setwise)
                continue;
            if (!visit(other, p, s, t))
                return;
        }
    }
}

DominationWitness make_witness(const Market& market, const Matching& other, const PairProfile& p, CoalitionMask s,
                               DominationKind kind)
{
    return DominationWitness{other, s, market.agent_at_bit(bits::lowest(s & p.strict())), kind};
}

} // namespace

void DominationSearch::for_each(const Matching& mu, DominationKind kind,
                                const std::function<bool(const DominationWitness&)>& visit) const
{
    scan(market_, matchings_, mu, options_,
         [&](const Matching& other, const PairProfile& p, CoalitionMask s, const CoalitionTest& t) {
             const bool hit = kind == DominationKind::Domination ? t.domination : t.setwise;
             if (!hit)
                 return true;
             return visit(make_witness(market_, other, p, s, kind));
         });
}

std::vector<DominationWitness> DominationSearch::find(const Matching& mu, DominationKind kind) const
{
    std::vector<DominationWitness> out;
    for_each(mu, kind, [&](const DominationWitness& w) {
        out.push_back(w);
        return true;
    });
    return out;
}

DominationSearch::Firsts DominationSearch::firsts(const Matching& mu) const
{
    Firsts f;
    scan(market_, matchings_, mu, options_,
         [&](const Matching& other, const PairProfile& p, CoalitionMask s, const CoalitionTest& t) {
             auto record = [&](std::optional<DominationWitness>& slot, DominationKind kind) {
                 if (!slot)
                     slot = make_witness(market_, other, p, s, kind);
             };
             if (t.domination) {
                 record(f.domination, DominationKind::Domination);
                 if (s & p.worker_clause)
                     record(f.worker_clause_domination, DominationKind::Domination);
                 if (s & p.firm_clause)
                     record(f.firm_clause_domination, DominationKind::Domination);
             }
             if (t.setwise) {
                 record(f.setwise, DominationKind::SetwiseDomination);
                 if (s & p.worker_clause)
                     record(f.worker_clause_setwise, DominationKind::SetwiseDomination);
                 if (s & p.firm_clause)
                     record(f.firm_clause_setwise, DominationKind::SetwiseDomination);
             }
             return !(f.domination && f.worker_clause_domination && f.firm_clause_domination && f.setwise
                      && f.worker_clause_setwise && f.firm_clause_setwise);
         });
    return f;
}

std::vector<DominationWitness> find_dominations(const Market& market, const Matching& mu, DominationKind kind,
                                                const EnumerationLimits& limits)
{
    return DominationSearch(market, limits).find(mu, kind);
}

namespace {

bool no_clause_breaking(const Market& market, const Matching& mu, DominationKind kind, Side side,
                        const EnumerationLimits& limits, const DominationOptions& options = {})
{
    bool clean = true;
    DominationSearch(market, limits, options).for_each(mu, kind, [&](const DominationWitness& w) {
        for (int bit : bits::members(w.coalition)) {
            const AgentId a = market.agent_at_bit(bit);
            if (a.side != side)
                continue;
            const SubsetMask before = mu.partners(a);
            const SubsetMask after = w.dominating.partners(a);
            if (side == Side::Worker ? breaks_worker_clause(market, a.index, before, after)
                                     : breaks_firm_clause(before, after)) {
                clean = false;
                return false;
            }
        }
        return true;
    });
    return clean;
}

} // namespace

bool in_core(const Market& market, const Matching& mu, const EnumerationLimits& limits)
{
    bool undominated = true;
    DominationSearch(market, limits).for_each(mu, DominationKind::Domination, [&](const DominationWitness&) {
        undominated = false;
        return false;
    });
    return undominated;
}

bool in_worker_quasi_core(const Market& market, const Matching& mu, const EnumerationLimits& limits)
{
    return no_clause_breaking(market, mu, DominationKind::Domination, Side::Worker, limits);
}

bool in_firm_quasi_core(const Market& market, const Matching& mu, const EnumerationLimits& limits)
{
    return no_clause_breaking(market, mu, DominationKind::Domination, Side::Firm, limits);
}

bool in_setwise_stable(const Market& market, const Matching& mu, const EnumerationLimits& limits,
                       const DominationOptions& options)
{
    if (!individually_rational(market, mu))
        return false;
    bool undominated = true;
    DominationSearch(market, limits, options).for_each(mu, DominationKind::SetwiseDomination,
                                              [&](const DominationWitness&) {
                                                  undominated = false;
                                                  return false;
                                              });
    return undominated;
}

bool in_worker_quasi_setwise(const Market& market, const Matching& mu, const EnumerationLimits& limits,
                             const DominationOptions& options)
{
    return individually_rational(market, mu)
        && no_clause_breaking(market, mu, DominationKind::SetwiseDomination, Side::Worker, limits, options);
}

bool in_firm_quasi_setwise(const Market& market, const Matching& mu, const EnumerationLimits& limits,
                             const DominationOptions& options)
{
    return individually_rational(market, mu)
        && no_clause_breaking(market, mu, DominationKind::SetwiseDomination, Side::Firm, limits, options);
}

std::string_view short_name(StabilitySet set)
{
    switch (set) {
    case StabilitySet::IndividuallyRational: return "I";
    case StabilitySet::PairwiseStable: return "S";
    case StabilitySet::Core: return "C";
    case StabilitySet::WorkerQuasiCore: return "C^QW";
    case StabilitySet::FirmQuasiCore: return "C^QF";
    case StabilitySet::WorkerQuasiStable: return "QW";
    case StabilitySet::FirmQuasiStable: return "QF";
    case StabilitySet::SetwiseStable: return "SW";
    case StabilitySet::WorkerQuasiSetwise: return "SW^QW";
    case StabilitySet::FirmQuasiSetwise: return "SW^QF";
    }
    return "?";
}

std::string_view long_name(StabilitySet set)
{
    switch (set) {
    case StabilitySet::IndividuallyRational: return "individually rational";
    case StabilitySet::PairwiseStable: return "pairwise stable";
    case StabilitySet::Core: return "core";
    case StabilitySet::WorkerQuasiCore: return "worker-quasi-core";
    case StabilitySet::FirmQuasiCore: return "firm-quasi-core";
    case StabilitySet::WorkerQuasiStable: return "worker-quasi-stable";
    case StabilitySet::FirmQuasiStable: return "firm-quasi-stable";
    case StabilitySet::SetwiseStable: return "setwise stable";
    case StabilitySet::WorkerQuasiSetwise: return "worker-quasi-setwise stable";
    case StabilitySet::FirmQuasiSetwise: return "firm-quasi-setwise stable";
    }
    return "?";
}

bool ClassificationRecord::member(StabilitySet set) const
{
    switch (set) {
    case StabilitySet::IndividuallyRational: return individually_rational;
    case StabilitySet::PairwiseStable: return pairwise_stable;
    case StabilitySet::Core: return core;
    case StabilitySet::WorkerQuasiCore: return worker_quasi_core;
    case StabilitySet::FirmQuasiCore: return firm_quasi_core;
    case StabilitySet::WorkerQuasiStable: return worker_quasi_stable;
    case StabilitySet::FirmQuasiStable: return firm_quasi_stable;
    case StabilitySet::SetwiseStable: return setwise_stable;
    case StabilitySet::WorkerQuasiSetwise: return worker_quasi_setwise;
    case StabilitySet::FirmQuasiSetwise: return firm_quasi_setwise;
    }
    return false;
}

ClassificationRecord classify(const DominationSearch& search, const Matching& mu)
{
    const Market& market = search.market();
    ClassificationRecord r;
    r.matching = mu;

    r.blocking_agent = first_blocking_agent(market, mu);
    r.individually_rational = !r.blocking_agent;
    const auto pairs = blocking_pairs(market, mu);
    if (!pairs.empty())
        r.blocking_pair = pairs.front();
    r.pairwise_stable = r.individually_rational && pairs.empty();

    if (r.individually_rational) {
        r.worker_quasi_violation = worker_quasi_violation(market, mu);
        r.firm_quasi_violation = firm_quasi_violation(market, mu);
    }
    r.worker_quasi_stable = r.individually_rational && !r.worker_quasi_violation;
    r.firm_quasi_stable = r.individually_rational && !r.firm_quasi_violation;

    auto f = search.firsts(mu);
    r.core = !f.domination;
    r.worker_quasi_core = !f.worker_clause_domination;
    r.firm_quasi_core = !f.firm_clause_domination;
    r.setwise_stable = r.individually_rational && !f.setwise;
    r.worker_quasi_setwise = r.individually_rational && !f.worker_clause_setwise;
    r.firm_quasi_setwise = r.individually_rational && !f.firm_clause_setwise;
    r.core_witness = std::move(f.domination);
    r.worker_quasi_core_witness = std::move(f.worker_clause_domination);
    r.firm_quasi_core_witness = std::move(f.firm_clause_domination);
    r.setwise_witness = std::move(f.setwise);
    r.worker_quasi_setwise_witness = std::move(f.worker_clause_setwise);
    r.firm_quasi_setwise_witness = std::move(f.firm_clause_setwise);
    return r;
}

ClassificationRecord classify(const Market& market, const Matching& mu, const EnumerationLimits& limits)
{
    return classify(DominationSearch(market, limits), mu);
}

std::vector<Matching> StabilitySets::of(StabilitySet set) const
{
    std::vector<Matching> out;
    for (const auto& r : records)
        if (r.member(set))
            out.push_back(r.matching);
    return out;
}

StabilitySets stability_sets(const DominationSearch& search)
{
    StabilitySets sets;
    sets.records.reserve(search.matchings().size());
    for (const Matching& mu : search.matchings())
        sets.records.push_back(classify(search, mu));
    return sets;
}

StabilitySets stability_sets(const Market& market, const EnumerationLimits& limits)
{
    return stability_sets(DominationSearch(market, limits));
}

} // namespace matchkit
