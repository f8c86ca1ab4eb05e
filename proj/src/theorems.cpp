#include "matchkit/theorems.hpp"

#include "matchkit/error.hpp"
#include "matchkit/market_file.hpp"
#include "matchkit/witness.hpp"

#include <functional>

namespace matchkit {

const std::vector<Theorem>& theorem_catalog()
{
    static const std::vector<Theorem> catalog = {
        {"qw-core-char", "I&C^QW == QW", Mode::ManyToOne},
        {"qf-core-char", "I&C^QF == QF", Mode::ManyToOne},
        {"core-eq-stable", "C == S", Mode::ManyToOne},
        {"core-in-ir", "C <= I", Mode::ManyToOne},
        {"qw-in-ir-qw-core", "QW <= I&C^QW", Mode::ManyToMany},
        {"sw-qw-char", "SW^QW == QW", Mode::ManyToMany},
        {"sw-qf-char", "SW^QF == QF", Mode::ManyToMany},
        {"sw-in-core", "SW <= C", Mode::ManyToMany},
        {"double-quasi-core", "QW&QF <= S|~C", Mode::ManyToMany},
        {"stable-in-quasi", "S <= QW&QF", std::nullopt},
        {"core-in-quasi-cores", "C <= C^QW&C^QF", std::nullopt},
        {"qs-shortcut", "quasi-stability shortcut == definition", std::nullopt},
    };
    return catalog;
}

std::vector<Theorem> select_theorems(std::string_view selector)
{
    const auto& catalog = theorem_catalog();
    std::vector<Theorem> out;
    if (selector == "all")
        return catalog;
    if (selector == "m21" || selector == "m2m") {
        const Mode mode = selector == "m21" ? Mode::ManyToOne : Mode::ManyToMany;
        for (const auto& t : catalog)
            if (!t.mode || *t.mode == mode)
                out.push_back(t);
        return out;
    }
    std::size_t start = 0;
    while (start <= selector.size()) {
        std::size_t end = selector.find(',', start);
        if (end == std::string_view::npos)
            end = selector.size();
        const std::string_view id = selector.substr(start, end - start);
        auto it = std::find_if(catalog.begin(), catalog.end(), [&](const Theorem& t) { return t.id == id; });
        if (it == catalog.end())
            throw Error(ErrorCode::ConfigInvalid, "unknown theorem '" + std::string(id) + "'");
        if (std::none_of(out.begin(), out.end(), [&](const Theorem& t) { return t.id == id; }))
            out.push_back(*it);
        start = end + 1;
    }
    return out;
}

namespace {

using Predicate = std::function<bool(const ClassificationRecord&)>;

struct Check
{
    const Market& market;
    const std::string& name;
    const DominationSearch& search;
    const StabilitySets& sets;
    const EnumerationLimits& limits;
    TheoremOutcome& out;

    void fail(const Matching& mu, const std::string& reason)
    {
        if (out.holds)
            out.counterexample = name + ": " + format_matching(market, mu) + " " + reason;
        out.holds = false;
    }

    void equal(const Predicate& lhs, const Predicate& rhs)
    {
        for (const auto& r : sets.records)
            if (lhs(r) != rhs(r))
                fail(r.matching, lhs(r) ? "is only on the left" : "is only on the right");
    }

    void included(const Predicate& lhs, const Predicate& rhs)
    {
        for (const auto& r : sets.records) {
            if (lhs(r) && !rhs(r))
                fail(r.matching, "is on the left only");
            if (!lhs(r) && rhs(r) && !out.strict_witness)
                out.strict_witness = format_matching(market, r.matching) + " in " + name;
        }
    }

    // Runs a construction, turning a thrown error into a counterexample.
    void construct(const Matching& mu, const std::function<void()>& body)
    {
        try {
            body();
        } catch (const Error& e) {
            fail(mu, std::string("construction failed: ") + e.what());
        }
    }

    bool coalition_worker_breaks_clause(const Matching& mu, const Matching& dominating, CoalitionMask coalition)
    {
        for (int w = 0; w < market.n_workers(); ++w)
            if (((coalition >> market.coalition_bit(worker(w))) & 1U)
                && breaks_worker_clause(market, w, mu.worker_partners(w), dominating.worker_partners(w)))
                return true;
        return false;
    }

    // Blocking pairs with a matched worker give clause-breaking dominations,
    // and every clause-breaking domination gives such a pair back.
    void worker_round_trip(const ClassificationRecord& r)
    {
        const Matching& mu = r.matching;
        for (const BlockingPair& pair : blocking_pairs(market, mu)) {
            if (mu.worker_partners(pair.worker) == 0)
                continue;
            construct(mu, [&] {
                const ConstructionReport report = domination_from_blocking_pair_m21(market, mu, pair);
                ++out.constructions;
                if (!report.verified || !coalition_worker_breaks_clause(mu, report.dominating, report.coalition))
                    fail(mu, "construction from a blocking pair keeps every coalition worker");
            });
        }
        search.for_each(mu, DominationKind::Domination, [&](const DominationWitness& witness) {
            int w = -1;
            for (int i = 0; i < market.n_workers() && w < 0; ++i)
                if (((witness.coalition >> market.coalition_bit(worker(i))) & 1U)
                    && breaks_worker_clause(market, i, mu.worker_partners(i), witness.dominating.worker_partners(i)))
                    w = i;
            if (w < 0)
                return true;
            construct(mu, [&] {
                const Coalition s = Coalition::from_mask(market, witness.coalition);
                const BlockingPair pair =
                    blocking_pair_from_quasi_core_violation_m21(market, mu, witness.dominating, s, w);
                ++out.constructions;
                if (mu.worker_partners(pair.worker) == 0)
                    fail(mu, "recovered blocking pair has an unmatched worker");
                const ConstructionReport back = domination_from_blocking_pair_m21(market, mu, pair);
                ++out.constructions;
                if (!back.verified || !coalition_worker_breaks_clause(mu, back.dominating, back.coalition))
                    fail(mu, "round trip lost the worker clause violation");
            });
            return out.holds;
        });
    }

    void firm_block(const ClassificationRecord& r)
    {
        const Matching& mu = r.matching;
        const auto violation = r.firm_quasi_violation;
        if (!violation)
            return;
        construct(mu, [&] {
            const int f = violation->agent.index;
            const ConstructionReport report = domination_from_firm_block_m21(market, mu, f, violation->offered);
            ++out.constructions;
            if (!report.verified || !breaks_firm_clause(mu.firm_partners(f), report.dominating.firm_partners(f)))
                fail(mu, "construction from a firm block keeps the firm's workers");
        });
    }

    void setwise_from_violation(const ClassificationRecord& r)
    {
        const Matching& mu = r.matching;
        const auto violation = r.worker_quasi_violation;
        if (!violation)
            return;
        construct(mu, [&] {
            const ConstructionReport report =
                setwise_domination_from_qw_violation_m2m(market, mu, violation->agent.index, violation->offered);
            ++out.constructions;
            if (!report.verified)
                fail(mu, "setwise construction unverified");
        });
    }

    void double_quasi(const ClassificationRecord& r)
    {
        const Matching& mu = r.matching;
        if (!r.worker_quasi_stable || !r.firm_quasi_stable || r.pairwise_stable)
            return;
        const auto pairs = blocking_pairs(market, mu);
        if (pairs.empty()) {
            fail(mu, "is quasi-stable, not stable, and has no blocking pair");
            return;
        }
        construct(mu, [&] {
            const ConstructionReport report = domination_from_double_quasi_m2m(market, mu, pairs.front());
            ++out.constructions;
            if (!report.verified)
                fail(mu, "double quasi construction unverified");
        });
    }

    void run()
    {
        const std::string_view id = out.theorem.id;
        auto I = [](const ClassificationRecord& r) { return r.individually_rational; };
        auto S = [](const ClassificationRecord& r) { return r.pairwise_stable; };
        auto C = [](const ClassificationRecord& r) { return r.core; };
        auto QW = [](const ClassificationRecord& r) { return r.worker_quasi_stable; };
        auto QF = [](const ClassificationRecord& r) { return r.firm_quasi_stable; };
        auto SW = [](const ClassificationRecord& r) { return r.setwise_stable; };

        if (id == "qw-core-char") {
            equal([](auto& r) { return r.individually_rational && r.worker_quasi_core; }, QW);
            for (const auto& r : sets.records)
                if (r.individually_rational)
                    worker_round_trip(r);
        } else if (id == "qf-core-char") {
            equal([](auto& r) { return r.individually_rational && r.firm_quasi_core; }, QF);
            for (const auto& r : sets.records)
                if (r.individually_rational)
                    firm_block(r);
        } else if (id == "core-eq-stable") {
            equal(C, S);
        } else if (id == "core-in-ir") {
            included(C, I);
        } else if (id == "qw-in-ir-qw-core") {
            included(QW, [](auto& r) { return r.individually_rational && r.worker_quasi_core; });
        } else if (id == "sw-qw-char") {
            equal([](auto& r) { return r.worker_quasi_setwise; }, QW);
            for (const auto& r : sets.records)
                if (r.individually_rational)
                    setwise_from_violation(r);
        } else if (id == "sw-qf-char") {
            equal([](auto& r) { return r.firm_quasi_setwise; }, QF);
        } else if (id == "sw-in-core") {
            included(SW, C);
        } else if (id == "double-quasi-core") {
            included([](auto& r) { return r.worker_quasi_stable && r.firm_quasi_stable; },
                     [](auto& r) { return r.pairwise_stable || !r.core; });
            for (const auto& r : sets.records)
                double_quasi(r);
        } else if (id == "stable-in-quasi") {
            included(S, [](auto& r) { return r.worker_quasi_stable && r.firm_quasi_stable; });
        } else if (id == "core-in-quasi-cores") {
            included(C, [](auto& r) { return r.worker_quasi_core && r.firm_quasi_core; });
        } else if (id == "qs-shortcut") {
            for (const auto& r : sets.records) {
                if (is_worker_quasi_stable_definitional(market, r.matching, limits) != r.worker_quasi_stable)
                    fail(r.matching, "worker shortcut disagrees with the definition");
                if (is_firm_quasi_stable_definitional(market, r.matching, limits) != r.firm_quasi_stable)
                    fail(r.matching, "firm shortcut disagrees with the definition");
            }
        } else {
            throw Error(ErrorCode::InternalConsistency, "no check for theorem '" + std::string(id) + "'");
        }
    }
};

} // namespace

TheoremVerifier::TheoremVerifier(std::vector<Theorem> theorems, EnumerationLimits limits,
                                 DominationOptions options)
    : limits_(limits), options_(options)
{
    for (auto& t : theorems) {
        TheoremOutcome outcome;
        outcome.theorem = t;
        outcomes_.push_back(std::move(outcome));
    }
}

void TheoremVerifier::add(const Market& market, const std::string& name)
{
    bool any = false;
    for (const auto& o : outcomes_)
        any = any || !o.theorem.mode || *o.theorem.mode == market.mode();
    if (!any)
        return;

    const DominationSearch search(market, limits_, options_);
    const StabilitySets sets = stability_sets(search);
    for (auto& out : outcomes_) {
        if (out.theorem.mode && *out.theorem.mode != market.mode())
            continue;
        ++out.markets;
        out.matchings += sets.records.size();
        Check{market, name, search, sets, limits_, out}.run();
    }
}

bool TheoremVerifier::all_hold() const
{
    return std::all_of(outcomes_.begin(), outcomes_.end(), [](const TheoremOutcome& o) { return o.holds; });
}

std::string_view to_string(InclusionStatus status)
{
    switch (status) {
    case InclusionStatus::Holds:
        return "holds";
    case InclusionStatus::Fails:
        return "fails";
    case InclusionStatus::NotApplicable:
        break;
    }
    return "n/a";
}

std::vector<InclusionCell> inclusion_matrix(const StabilitySets& sets)
{
    std::vector<InclusionCell> cells;
    for (StabilitySet a : all_stability_sets) {
        for (StabilitySet b : all_stability_sets) {
            InclusionCell cell;
            cell.subset = a;
            cell.superset = b;
            if (a != b) {
                cell.status = InclusionStatus::Holds;
                for (std::size_t i = 0; i < sets.records.size(); ++i) {
                    if (sets.records[i].member(a) && !sets.records[i].member(b)) {
                        cell.status = InclusionStatus::Fails;
                        cell.witness = i;
                        break;
                    }
                }
            }
            cells.push_back(cell);
        }
    }
    return cells;
}

} // namespace matchkit
