// Acceptance run: one PASS/FAIL line per criterion, exit 1 if any fails.
#include "matchkit/commands.hpp"
#include "matchkit/error.hpp"
#include "matchkit/fixtures.hpp"
#include "matchkit/gen.hpp"
#include "matchkit/market_file.hpp"
#include "matchkit/theorems.hpp"
#include "matchkit/witness.hpp"

#include <chrono>
#include <iostream>
#include <sstream>

using namespace matchkit;

namespace {

using Clock = std::chrono::steady_clock;

int failures = 0;

double seconds_since(Clock::time_point start)
{
    return std::chrono::duration<double>(Clock::now() - start).count();
}

void report(int n, bool pass, const std::string& what, const std::string& detail)
{
    std::cout << (pass ? "PASS" : "FAIL") << "  " << n << ". " << what << " -- " << detail << '\n';
    if (!pass)
        ++failures;
}

std::string seconds(double s)
{
    std::ostringstream out;
    out.precision(2);
    out << std::fixed << s << "s";
    return out.str();
}

struct Corpus
{
    std::vector<Market> markets;
    std::vector<std::string> names;
};

Corpus m21_corpus()
{
    Corpus c;
    c.markets = {fixtures::ex1(), fixtures::ex2()};
    c.names = {"ex1", "ex2"};
    GenConfig config;
    config.seed = 1;
    config.n_firms = 3;
    config.n_workers = 3;
    config.mode = Mode::ManyToOne;
    config.strategy = GenStrategy::QuotaPriority;
    const auto gen = gen_corpus(config, 100);
    for (std::size_t i = 0; i < gen.size(); ++i) {
        c.markets.push_back(gen[i]);
        c.names.push_back("m21[" + std::to_string(i) + "]");
    }
    return c;
}

Corpus m2m_corpus()
{
    Corpus c;
    c.markets = {fixtures::m69(), fixtures::m69b()};
    c.names = {"m69", "m69b"};
    GenConfig config;
    config.seed = 1;
    config.n_firms = 3;
    config.n_workers = 3;
    config.mode = Mode::ManyToMany;
    config.acceptability = {1, 2};
    const auto gen = gen_mixed_corpus(config, 50);
    for (std::size_t i = 0; i < gen.size(); ++i) {
        c.markets.push_back(gen[i]);
        c.names.push_back("m2m[" + std::to_string(i) + "]");
    }
    return c;
}

struct SuiteResult
{
    bool holds = true;
    std::string detail;
};

SuiteResult run_suite(const Corpus& corpus, const std::string& ids, DominationOptions options)
{
    TheoremVerifier verifier(select_theorems(ids), {}, options);
    for (std::size_t i = 0; i < corpus.markets.size(); ++i)
        verifier.add(corpus.markets[i], corpus.names[i]);
    SuiteResult out;
    std::uint64_t matchings = 0;
    for (const auto& o : verifier.outcomes()) {
        matchings = std::max(matchings, o.matchings);
        if (!o.holds || !o.applicable()) {
            out.holds = false;
            if (!out.detail.empty())
                out.detail += "; ";
            out.detail += std::string(o.theorem.id) + " " + (o.applicable() ? "fails at " + *o.counterexample : "n/a");
        }
    }
    if (out.holds)
        out.detail = std::to_string(corpus.markets.size()) + " markets, " + std::to_string(matchings) +
                     " matchings, no counterexample";
    return out;
}

bool all_witnesses_empty_via(const Market& m, const Matching& mu, CoalitionMask coalition)
{
    const auto found = find_dominations(m, mu, DominationKind::Domination);
    if (found.empty())
        return false;
    for (const auto& w : found)
        if (!(w.dominating == Matching::empty(m.n_firms(), m.n_workers())) || w.coalition != coalition)
            return false;
    return true;
}

void criterion_1()
{
    const auto start = Clock::now();
    const Market m = fixtures::ex1();
    const Matching mu = fixtures::mu1(m);
    const auto r = classify(m, mu);
    const bool ok = !r.individually_rational && r.worker_quasi_core && all_witnesses_empty_via(m, mu, 0b01);
    const double t = seconds_since(start);
    report(1, ok && t < 1.0, "ex1: mu1 not IR, in C^QW, dominated only by the empty matching via {f}", seconds(t));
}

void criterion_2()
{
    const auto start = Clock::now();
    const Market m = fixtures::ex2();
    const Matching mu = fixtures::mu2(m);
    const auto r = classify(m, mu);
    const bool ok = !r.individually_rational && r.firm_quasi_core && all_witnesses_empty_via(m, mu, 0b10);
    const double t = seconds_since(start);
    report(2, ok && t < 1.0, "ex2: mu2 not IR, in C^QF, dominated only by the empty matching via {w}", seconds(t));
}

void criterion_3()
{
    const auto start = Clock::now();
    const Market m = fixtures::m69();
    const Matching mu = fixtures::mu3(m);
    const auto r = classify(m, mu);
    const auto v = worker_quasi_violation(m, mu);
    const SubsetMask f1 = 0b001, f12 = 0b011;
    const bool violation = v && v->agent == worker(0) && v->offered == f1 && v->chosen == f12 &&
                           m.worker_choice(0)(mu.worker_partners(0) | f1) == f12;
    const bool ok = r.individually_rational && r.core && r.worker_quasi_core && !r.worker_quasi_stable &&
                    !r.pairwise_stable && violation;
    const double t = seconds_since(start);
    report(3, ok && t < 30.0, "m69: mu3 IR, in C and C^QW, not QW (C_w1({f2 f3 f1}) = {f1 f2}), not S",
           seconds(t));
}

void criterion_4()
{
    const auto start = Clock::now();
    const Market m = fixtures::m69b();
    const Matching mu = fixtures::mu4(m);
    const auto r = classify(m, mu);
    const auto pairs = blocking_pairs(m, mu);
    const bool only_f1w1 = pairs == std::vector<BlockingPair>{{0, 0}};
    const bool ok = r.individually_rational && r.core && only_f1w1 && r.worker_quasi_stable && !r.firm_quasi_stable;
    const double t = seconds_since(start);
    std::string found;
    for (const auto& p : pairs)
        found += " (" + m.label(firm(p.firm)) + "," + m.label(worker(p.worker)) + ")";
    report(4, ok && t < 30.0, "m69b: mu4 IR, in C, blocking pairs exactly [(f1,w1)], QW, not QF",
           "blocking pairs:" + found + "; IR " + (r.individually_rational ? "yes" : "no") + ", C " +
               (r.core ? "yes" : "no") + ", QW " + (r.worker_quasi_stable ? "yes" : "no") + ", QF " +
               (r.firm_quasi_stable ? "yes" : "no") + "; " + seconds(t));
}

void criterion_5(const Corpus& corpus)
{
    const auto start = Clock::now();
    const auto r =
        run_suite(corpus, "qw-core-char,qf-core-char,core-eq-stable,stable-in-quasi,core-in-quasi-cores", {});
    const double t = seconds_since(start);
    report(5, r.holds && t < 120.0, "many-to-one theorems on ex1, ex2 and 100 generated markets",
           r.detail + "; " + seconds(t));
}

void criterion_6(const Corpus& corpus)
{
    const std::string ids = "qw-in-ir-qw-core,sw-qw-char,sw-qf-char,sw-in-core,double-quasi-core,stable-in-quasi";
    const auto start = Clock::now();
    const auto r = run_suite(corpus, ids, {});
    const double t = seconds_since(start);
    report(6, r.holds && t < 600.0, "many-to-many theorems on m69, m69b and 50 generated markets",
           "union reading: " + r.detail + "; " + seconds(t));
    const auto per_agent = run_suite(corpus, ids, {SetwiseReading::PerAgent});
    std::cout << "info  6. per-agent setwise reading: " << (per_agent.holds ? "holds" : "fails") << " -- "
              << per_agent.detail << '\n';
}

void criterion_7(const Corpus& m21, const Corpus& m2m)
{
    std::uint64_t checked = 0, disagreements = 0;
    std::string first;
    for (const Corpus* corpus : {&m21, &m2m}) {
        for (std::size_t i = 0; i < corpus->markets.size(); ++i) {
            const Market& m = corpus->markets[i];
            for (const Matching& mu : enumerate_matchings(m)) {
                ++checked;
                const bool w = is_worker_quasi_stable(m, mu) == is_worker_quasi_stable_definitional(m, mu);
                const bool f = is_firm_quasi_stable(m, mu) == is_firm_quasi_stable_definitional(m, mu);
                if (!w || !f) {
                    ++disagreements;
                    if (first.empty())
                        first = corpus->names[i] + ": " + format_matching(m, mu);
                }
            }
        }
    }
    report(7, disagreements == 0, "quasi-stability shortcut equals the definition",
           std::to_string(checked) + " matchings, " + std::to_string(disagreements) + " disagreements" +
               (first.empty() ? "" : ", first " + first));
}

void criterion_8()
{
    bool ok = true;
    int tables = 0;
    for (const Market& m : {fixtures::m69(), fixtures::m69b()}) {
        for (int i = 0; i < 3; ++i) {
            for (const ChoiceFunction* c : {&m.firm_choice(i), &m.worker_choice(i)}) {
                ++tables;
                const bool valid = is_substitutable(*c) && is_consistent(*c);
                // the path independence identity, checked on every pair
                bool identity = true;
                for (SubsetMask t = 0; t < 8; ++t)
                    for (SubsetMask u = 0; u < 8; ++u)
                        identity = identity && (*c)(t | u) == (*c)((*c)(t) | u);
                ok = ok && valid && identity && is_path_independent(*c);
            }
        }
    }
    const ChoiceFunction bad = induce_choice(PreferenceList(firm(0), 3, {0b011, 0b100, 0}));
    const auto v = find_substitutability_violation(bad);
    const bool witness = v && v->larger == 0b111 && v->smaller == 0b101 && v->element == 0;
    report(8, ok && witness, "validators on m69/m69b and the {w1 w2} > {w3} > {} counterexample",
           std::to_string(tables) + " tables valid and path independent; witness ({w1 w2 w3}, {w1 w3}, w1) " +
               (witness ? "found" : "missing"));
}

struct ConstructionTally
{
    std::uint64_t reports = 0;
    std::uint64_t unverified = 0;
    std::uint64_t round_trips = 0;
    std::uint64_t broken_round_trips = 0;
    std::string first_problem;

    void note(const std::string& what)
    {
        if (first_problem.empty())
            first_problem = what;
    }

    void add(const ConstructionReport& r)
    {
        ++reports;
        if (!r.verified)
            ++unverified;
    }
};

bool worker_clause(const Market& m, const Matching& mu, const Matching& after, CoalitionMask s)
{
    for (int w = 0; w < m.n_workers(); ++w)
        if (((s >> m.coalition_bit(worker(w))) & 1U) &&
            breaks_worker_clause(m, w, mu.worker_partners(w), after.worker_partners(w)))
            return true;
    return false;
}

void criterion_9(const Corpus& m21, const Corpus& m2m)
{
    ConstructionTally tally;
    for (std::size_t i = 0; i < m21.markets.size(); ++i) {
        const Market& m = m21.markets[i];
        DominationSearch search(m);
        for (const Matching& mu : search.matchings()) {
            if (!individually_rational(m, mu))
                continue;
            const std::string where = m21.names[i] + ": " + format_matching(m, mu);
            try {
                for (const BlockingPair& p : blocking_pairs(m, mu))
                    tally.add(domination_from_blocking_pair_m21(m, mu, p));
                if (const auto v = firm_quasi_violation(m, mu))
                    tally.add(domination_from_firm_block_m21(m, mu, v->agent.index, v->offered));
                search.for_each(mu, DominationKind::Domination, [&](const DominationWitness& d) {
                    for (int w = 0; w < m.n_workers(); ++w) {
                        if (!((d.coalition >> m.coalition_bit(worker(w))) & 1U) ||
                            !breaks_worker_clause(m, w, mu.worker_partners(w), d.dominating.worker_partners(w)))
                            continue;
                        ++tally.round_trips;
                        const BlockingPair p = blocking_pair_from_quasi_core_violation_m21(
                            m, mu, d.dominating, Coalition::from_mask(m, d.coalition), w);
                        const ConstructionReport back = domination_from_blocking_pair_m21(m, mu, p);
                        tally.add(back);
                        if (!blocks(m, mu, p.firm, p.worker) || mu.worker_partners(p.worker) == 0 ||
                            !worker_clause(m, mu, back.dominating, back.coalition)) {
                            ++tally.broken_round_trips;
                            tally.note(where + " round trip");
                        }
                        break;
                    }
                    return true;
                });
            } catch (const Error& e) {
                ++tally.unverified;
                tally.note(where + " " + e.what());
            }
        }
    }
    for (std::size_t i = 0; i < m2m.markets.size(); ++i) {
        const Market& m = m2m.markets[i];
        for (const Matching& mu : enumerate_matchings(m)) {
            if (!individually_rational(m, mu))
                continue;
            const std::string where = m2m.names[i] + ": " + format_matching(m, mu);
            try {
                if (const auto v = worker_quasi_violation(m, mu))
                    tally.add(setwise_domination_from_qw_violation_m2m(m, mu, v->agent.index, v->offered));
                if (is_worker_quasi_stable(m, mu) && is_firm_quasi_stable(m, mu))
                    for (const BlockingPair& p : blocking_pairs(m, mu))
                        tally.add(domination_from_double_quasi_m2m(m, mu, p));
            } catch (const Error& e) {
                ++tally.unverified;
                tally.note(where + " " + e.what());
            }
        }
    }
    const bool ok = tally.unverified == 0 && tally.broken_round_trips == 0 && tally.reports > 0 &&
                    tally.round_trips > 0;
    report(9, ok, "constructions verify and quasi-core violations round-trip",
           std::to_string(tally.reports) + " reports, " + std::to_string(tally.unverified) + " unverified, " +
               std::to_string(tally.round_trips) + " round trips, " + std::to_string(tally.broken_round_trips) +
               " broken" + (tally.first_problem.empty() ? "" : "; first: " + tally.first_problem));
}

void criterion_10()
{
    auto once = [](const VerifyRequest& req) {
        std::ostringstream out, err;
        const int code = cmd_verify(req, CommandOptions{}, out, err);
        return std::to_string(code) + "\n" + out.str() + err.str();
    };
    VerifyRequest file;
    file.path = std::string(MATCHKIT_DATA_DIR) + "/m69.market";
    VerifyRequest gen;
    gen.gen.seed = 1;
    gen.gen.n_firms = 3;
    gen.gen.n_workers = 3;
    gen.count = 20;
    VerifyRequest mixed = gen;
    mixed.gen.mode = Mode::ManyToMany;
    mixed.mixed = true;
    mixed.count = 6;
    bool same = true;
    std::size_t bytes = 0;
    for (const auto* req : {&file, &gen, &mixed}) {
        const std::string a = once(*req);
        const std::string b = once(*req);
        same = same && a == b;
        bytes += a.size();
    }
    report(10, same, "cmd_verify output is byte-identical across runs",
           "3 invocations, " + std::to_string(bytes) + " bytes compared");
}

} // namespace

int main()
{
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    const Corpus m21 = m21_corpus();
    const Corpus m2m = m2m_corpus();
    criterion_5(m21);
    criterion_6(m2m);
    criterion_7(m21, m2m);
    criterion_8();
    criterion_9(m21, m2m);
    criterion_10();
    std::cout << (failures == 0 ? "all criteria pass" : std::to_string(failures) + " criteria fail") << '\n';
    return failures == 0 ? 0 : 1;
}
