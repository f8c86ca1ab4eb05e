#include "matchkit/witness.hpp"

#include "matchkit/error.hpp"

namespace matchkit {

Matching complete_matching(const Market& market, const Matching& mu,
                           const std::vector<std::optional<SubsetMask>>& firm_overrides,
                           const std::vector<std::optional<SubsetMask>>& worker_overrides)
{
    const int nf = market.n_firms();
    const int nw = market.n_workers();
    std::vector<SubsetMask> rows = mu.all_firm_partners();

    for (int f = 0; f < nf; ++f)
        if (firm_overrides[f])
            rows[f] = *firm_overrides[f];

    for (int w = 0; w < nw; ++w) {
        if (!worker_overrides[w])
            continue;
        for (int f = 0; f < nf; ++f) {
            const bool wanted = bits::contains(*worker_overrides[w], f);
            if (firm_overrides[f] && bits::contains(*firm_overrides[f], w) != wanted)
                throw Error(ErrorCode::InternalConsistency, "overrides disagree on a link");
            rows[f] = wanted ? rows[f] | bits::single(w) : rows[f] & ~bits::single(w);
        }
    }

    if (market.mode() == Mode::ManyToOne) {
        for (int w = 0; w < nw; ++w) {
            SubsetMask firms = 0;
            SubsetMask prescribed = 0;
            for (int f = 0; f < nf; ++f) {
                if (!bits::contains(rows[f], w))
                    continue;
                firms |= bits::single(f);
                if (firm_overrides[f])
                    prescribed |= bits::single(f);
            }
            if (bits::size(firms) <= 1)
                continue;
            if (bits::size(prescribed) != 1 || worker_overrides[w])
                throw Error(ErrorCode::InternalConsistency, "completion leaves a worker with two firms");
            for (int f : bits::members(firms & ~prescribed))
                rows[f] &= ~bits::single(w);
        }
    }
    return Matching::from_firm_partners(nw, std::move(rows));
}

namespace {

std::string set_text(const Market& market, Side side, SubsetMask set)
{
    std::string out = "{";
    for (int i : bits::members(set)) {
        if (out.size() > 1)
            out += ' ';
        out += market.label(AgentId{side, i});
    }
    return out + "}";
}

std::string pair_text(const Market& market, BlockingPair pair)
{
    return "(" + market.label(firm(pair.firm)) + ", " + market.label(worker(pair.worker)) + ")";
}

void require(bool condition, const std::string& what)
{
    if (!condition)
        throw Error(ErrorCode::PreconditionFailed, what);
}

void require_pair_in_market(const Market& market, BlockingPair pair)
{
    if (!market.contains(firm(pair.firm)) || !market.contains(worker(pair.worker)))
        throw Error(ErrorCode::UnknownAgent, "pair names an agent outside the market");
}

CoalitionMask coalition_of(const Market& market, SubsetMask firms, SubsetMask workers)
{
    return static_cast<CoalitionMask>(firms) | (static_cast<CoalitionMask>(workers) << market.n_firms());
}

ConstructionReport finish(const Market& market, const Matching& mu, std::string description, Matching dominating,
                          CoalitionMask coalition, DominationKind kind)
{
    const Coalition s = Coalition::from_mask(market, coalition);
    const bool ok = dominating != mu
        && (kind == DominationKind::Domination ? dominates(market, dominating, mu, s)
                                               : setwise_dominates(market, dominating, mu, s, DominationOptions{SetwiseReading::PerAgent}));
    if (!ok)
        throw Error(ErrorCode::InternalConsistency, "constructed matching fails to dominate: " + description);
    return ConstructionReport{std::move(description), std::move(dominating), coalition, kind, true};
}

} // namespace

ConstructionReport domination_from_blocking_pair_m21(const Market& market, const Matching& mu, BlockingPair pair)
{
    require(market.mode() == Mode::ManyToOne, "construction applies to many-to-one markets");
    require_pair_in_market(market, pair);
    if (!blocks(market, mu, pair.firm, pair.worker))
        throw Error(ErrorCode::NotABlockingPair, pair_text(market, pair) + " does not block");

    const SubsetMask chosen = market.firm_choice(pair.firm)(mu.firm_partners(pair.firm) | bits::single(pair.worker));
    std::vector<std::optional<SubsetMask>> firms(market.n_firms());
    std::vector<std::optional<SubsetMask>> workers(market.n_workers());
    firms[pair.firm] = chosen;
    Matching dominating = complete_matching(market, mu, firms, workers);
    return finish(market, mu,
                  "blocking pair " + pair_text(market, pair) + ": " + market.label(firm(pair.firm)) + " takes "
                      + set_text(market, Side::Worker, chosen),
                  std::move(dominating), coalition_of(market, bits::single(pair.firm), chosen),
                  DominationKind::Domination);
}

ConstructionReport domination_from_firm_block_m21(const Market& market, const Matching& mu, int f, SubsetMask offered)
{
    require(market.mode() == Mode::ManyToOne, "construction applies to many-to-one markets");
    if (!market.contains(firm(f)))
        throw Error(ErrorCode::UnknownAgent, "firm index out of range");
    if (offered == 0)
        throw Error(ErrorCode::EmptyT, "offered set must be non-empty");
    const SubsetMask desire = desire_sets(market, mu).firm_wanted_by[f];
    if (!bits::is_subset(offered, desire))
        throw Error(ErrorCode::TNotInDesireSet,
                    set_text(market, Side::Worker, offered) + " is not within the workers wanting "
                        + market.label(firm(f)));

    const SubsetMask chosen = market.firm_choice(f)(mu.firm_partners(f) | offered);
    require((chosen & offered) != 0, market.label(firm(f)) + " takes nobody from the offered set");
    std::vector<std::optional<SubsetMask>> firms(market.n_firms());
    std::vector<std::optional<SubsetMask>> workers(market.n_workers());
    firms[f] = chosen;
    Matching dominating = complete_matching(market, mu, firms, workers);
    return finish(market, mu,
                  market.label(firm(f)) + " offered " + set_text(market, Side::Worker, offered) + " takes "
                      + set_text(market, Side::Worker, chosen),
                  std::move(dominating), coalition_of(market, bits::single(f), chosen), DominationKind::Domination);
}

BlockingPair blocking_pair_from_quasi_core_violation_m21(const Market& market, const Matching& mu,
                                                         const Matching& dominating, const Coalition& coalition,
                                                         int w)
{
    require(market.mode() == Mode::ManyToOne, "construction applies to many-to-one markets");
    require(market.contains(worker(w)), "worker index out of range");
    require(individually_rational(market, mu), "matching must be individually rational");
    require(dominating != mu && dominates(market, dominating, mu, coalition), "no domination via this coalition");
    require(coalition.contains(market, worker(w)), "worker not in the coalition");
    const SubsetMask before = mu.worker_partners(w);
    const SubsetMask after = dominating.worker_partners(w);
    require(after != before, "worker keeps its assignment");
    require(before != 0, "worker is unmatched");

    if (bits::size(after) != 1)
        throw Error(ErrorCode::InternalConsistency, "dominating matching leaves the worker without a firm");
    const BlockingPair pair{bits::lowest(after), w};
    if (!blocks(market, mu, pair.firm, pair.worker))
        throw Error(ErrorCode::InternalConsistency, pair_text(market, pair) + " was expected to block");
    return pair;
}

ConstructionReport setwise_domination_from_qw_violation_m2m(const Market& market, const Matching& mu, int w,
                                                            SubsetMask offered)
{
    require(market.mode() == Mode::ManyToMany, "construction applies to many-to-many markets");
    require(market.contains(worker(w)), "worker index out of range");
    require(individually_rational(market, mu), "matching must be individually rational");
    const SubsetMask desire = desire_sets(market, mu).worker_wanted_by[w] | mu.worker_partners(w);
    require(bits::is_subset(offered, desire), "offered firms are not within the desire set");
    const SubsetMask current = mu.worker_partners(w);
    const SubsetMask chosen = market.worker_choice(w)(current | offered);
    require(!bits::is_subset(current, chosen), "worker keeps every current firm");

    const SubsetMask new_firms = chosen & ~current;
    std::vector<std::optional<SubsetMask>> firms(market.n_firms());
    std::vector<std::optional<SubsetMask>> workers(market.n_workers());
    workers[w] = chosen;
    for (int f : bits::members(new_firms))
        firms[f] = market.firm_choice(f)(mu.firm_partners(f) | bits::single(w));
    Matching dominating = complete_matching(market, mu, firms, workers);
    ConstructionReport report =
        finish(market, mu,
               market.label(worker(w)) + " offered " + set_text(market, Side::Firm, offered) + " takes "
                   + set_text(market, Side::Firm, chosen),
               std::move(dominating), coalition_of(market, new_firms, bits::single(w)),
               DominationKind::SetwiseDomination);
    if (bits::is_subset(current, report.dominating.worker_partners(w)))
        throw Error(ErrorCode::InternalConsistency, "constructed matching keeps the worker's assignment");
    return report;
}

ConstructionReport domination_from_double_quasi_m2m(const Market& market, const Matching& mu, BlockingPair pair)
{
    require(market.mode() == Mode::ManyToMany, "construction applies to many-to-many markets");
    require_pair_in_market(market, pair);
    require(is_worker_quasi_stable(market, mu) && is_firm_quasi_stable(market, mu),
            "matching must be worker- and firm-quasi-stable");
    require(blocks(market, mu, pair.firm, pair.worker), pair_text(market, pair) + " does not block");

    std::vector<SubsetMask> rows = mu.all_firm_partners();
    rows[pair.firm] |= bits::single(pair.worker);
    Matching dominating = Matching::from_firm_partners(market.n_workers(), std::move(rows));
    return finish(market, mu, "add link " + pair_text(market, pair), std::move(dominating),
                  bits::full(market.n_agents()), DominationKind::Domination);
}

} // namespace matchkit
