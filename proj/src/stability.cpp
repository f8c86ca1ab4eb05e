#include "matchkit/stability.hpp"

#include "matchkit/error.hpp"

namespace matchkit {

bool blocked_by_agent(const Market& market, const Matching& mu, AgentId a)
{
    if (!market.contains(a))
        throw Error(ErrorCode::UnknownAgent, "agent index out of range");
    const SubsetMask assigned = mu.partners(a);
    if (market.mode() == Mode::ManyToOne && a.side == Side::Worker)
        return assigned != 0 && worker_prefers_m21(market.worker_preference(a.index), 0, assigned);
    return market.choice(a)(assigned) != assigned;
}

std::optional<AgentId> first_blocking_agent(const Market& market, const Matching& mu)
{
    for (int bit = 0; bit < market.n_agents(); ++bit) {
        AgentId a = market.agent_at_bit(bit);
        if (blocked_by_agent(market, mu, a))
            return a;
    }
    return std::nullopt;
}

bool individually_rational(const Market& market, const Matching& mu)
{
    return !first_blocking_agent(market, mu);
}

bool worker_accepts(const Market& market, const Matching& mu, int f, int w)
{
    const SubsetMask current = mu.worker_partners(w);
    if (market.mode() == Mode::ManyToOne) {
        const SubsetMask offer = bits::single(f);
        return offer != current && worker_prefers_m21(market.worker_preference(w), offer, current);
    }
    return bits::contains(market.worker_choice(w)(current | bits::single(f)), f);
}

bool firm_accepts(const Market& market, const Matching& mu, int f, int w)
{
    return bits::contains(market.firm_choice(f)(mu.firm_partners(f) | bits::single(w)), w);
}

bool blocks(const Market& market, const Matching& mu, int f, int w)
{
    return !mu.linked(f, w) && firm_accepts(market, mu, f, w) && worker_accepts(market, mu, f, w);
}

std::vector<BlockingPair> blocking_pairs(const Market& market, const Matching& mu)
{
    std::vector<BlockingPair> out;
    for (int f = 0; f < market.n_firms(); ++f)
        for (int w = 0; w < market.n_workers(); ++w)
            if (blocks(market, mu, f, w))
                out.push_back({f, w});
    return out;
}

bool is_pairwise_stable(const Market& market, const Matching& mu)
{
    return individually_rational(market, mu) && blocking_pairs(market, mu).empty();
}

DesireSets desire_sets(const Market& market, const Matching& mu)
{
    DesireSets sets;
    sets.firm_wanted_by.assign(market.n_firms(), 0);
    sets.worker_wanted_by.assign(market.n_workers(), 0);
    for (int f = 0; f < market.n_firms(); ++f) {
        for (int w = 0; w < market.n_workers(); ++w) {
            if (mu.linked(f, w))
                continue;
            if (worker_accepts(market, mu, f, w))
                sets.firm_wanted_by[f] |= bits::single(w);
            if (firm_accepts(market, mu, f, w))
                sets.worker_wanted_by[w] |= bits::single(f);
        }
    }
    return sets;
}

std::optional<QuasiViolation> worker_quasi_violation(const Market& market, const Matching& mu)
{
    if (market.mode() == Mode::ManyToOne) {
        for (const auto& pair : blocking_pairs(market, mu)) {
            if (mu.worker_partners(pair.worker) != 0) {
                const SubsetMask offer = bits::single(pair.firm);
                return QuasiViolation{worker(pair.worker), offer, offer};
            }
        }
        return std::nullopt;
    }
    const DesireSets desire = desire_sets(market, mu);
    for (int w = 0; w < market.n_workers(); ++w) {
        const SubsetMask current = mu.worker_partners(w);
        const SubsetMask chosen = market.worker_choice(w)(current | desire.worker_wanted_by[w]);
        if (!bits::is_subset(current, chosen))
            return QuasiViolation{worker(w), desire.worker_wanted_by[w], chosen};
    }
    return std::nullopt;
}

std::optional<QuasiViolation> firm_quasi_violation(const Market& market, const Matching& mu)
{
    const DesireSets desire = desire_sets(market, mu);
    for (int f = 0; f < market.n_firms(); ++f) {
        const SubsetMask current = mu.firm_partners(f);
        const SubsetMask chosen = market.firm_choice(f)(current | desire.firm_wanted_by[f]);
        if (!bits::is_subset(current, chosen))
            return QuasiViolation{firm(f), desire.firm_wanted_by[f], chosen};
    }
    return std::nullopt;
}

bool is_worker_quasi_stable(const Market& market, const Matching& mu)
{
    return individually_rational(market, mu) && !worker_quasi_violation(market, mu);
}

bool is_firm_quasi_stable(const Market& market, const Matching& mu)
{
    return individually_rational(market, mu) && !firm_quasi_violation(market, mu);
}

namespace {

// mu(a) <= C_a(mu(a) + K) for every K within `desire`.
bool keeps_assignment_for_all_offers(const ChoiceFunction& choice, SubsetMask current, SubsetMask desire,
                                     const EnumerationLimits& limits)
{
    if (bits::size(desire) > limits.max_desire_set)
        throw Error(ErrorCode::SizeLimitExceeded, "desire set too large for definitional check");
    for (SubsetMask offer = desire;; offer = (offer - 1) & desire) {
        if (!bits::is_subset(current, choice(current | offer)))
            return false;
        if (offer == 0)
            break;
    }
    return true;
}

} // namespace

bool is_worker_quasi_stable_definitional(const Market& market, const Matching& mu,
                                         const EnumerationLimits& limits)
{
    if (!individually_rational(market, mu))
        return false;
    if (market.mode() == Mode::ManyToOne) {
        for (int f = 0; f < market.n_firms(); ++f) {
            for (int w = 0; w < market.n_workers(); ++w) {
                const SubsetMask current = mu.worker_partners(w);
                if (mu.linked(f, w))
                    continue;
                const bool firm_wants =
                    bits::contains(market.firm_choice(f)(mu.firm_partners(f) | bits::single(w)), w);
                const auto& pref = market.worker_preference(w);
                const bool worker_wants = pref.rank_of(bits::single(f)).has_value()
                    && (!pref.rank_of(current) || *pref.rank_of(bits::single(f)) < *pref.rank_of(current));
                if (firm_wants && worker_wants && current != 0)
                    return false;
            }
        }
        return true;
    }
    for (int w = 0; w < market.n_workers(); ++w) {
        SubsetMask desire = 0;
        for (int f = 0; f < market.n_firms(); ++f)
            if (!mu.linked(f, w) && bits::contains(market.firm_choice(f)(mu.firm_partners(f) | bits::single(w)), w))
                desire |= bits::single(f);
        if (!keeps_assignment_for_all_offers(market.worker_choice(w), mu.worker_partners(w), desire, limits))
            return false;
    }
    return true;
}

bool is_firm_quasi_stable_definitional(const Market& market, const Matching& mu,
                                       const EnumerationLimits& limits)
{
    if (!individually_rational(market, mu))
        return false;
    for (int f = 0; f < market.n_firms(); ++f) {
        SubsetMask desire = 0;
        for (int w = 0; w < market.n_workers(); ++w) {
            if (mu.linked(f, w))
                continue;
            const SubsetMask current = mu.worker_partners(w);
            bool wants = false;
            if (market.mode() == Mode::ManyToOne) {
                const auto& pref = market.worker_preference(w);
                auto offer_rank = pref.rank_of(bits::single(f));
                auto current_rank = pref.rank_of(current);
                wants = offer_rank && (!current_rank || *offer_rank < *current_rank);
            } else {
                wants = bits::contains(market.worker_choice(w)(current | bits::single(f)), f);
            }
            if (wants)
                desire |= bits::single(w);
        }
        if (!keeps_assignment_for_all_offers(market.firm_choice(f), mu.firm_partners(f), desire, limits))
            return false;
    }
    return true;
}

} // namespace matchkit
