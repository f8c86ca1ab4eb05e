#include "matchkit/fixtures.hpp"
#include "matchkit/gen.hpp"
#include "matchkit/stability.hpp"

#include <doctest.h>

#include <algorithm>

using namespace matchkit;

TEST_CASE("blocked_by_agent")
{
    Market ex1 = fixtures::ex1();
    Market ex2 = fixtures::ex2();
    CHECK(blocked_by_agent(ex1, fixtures::mu1(ex1), firm(0)));
    CHECK_FALSE(blocked_by_agent(ex1, fixtures::mu1(ex1), worker(0)));
    CHECK(blocked_by_agent(ex2, fixtures::mu2(ex2), worker(0)));
    CHECK_FALSE(blocked_by_agent(ex2, fixtures::mu2(ex2), firm(0)));
    CHECK(first_blocking_agent(ex1, fixtures::mu1(ex1)) == firm(0));
    for (const Market& m : {ex1, ex2, fixtures::m69()}) {
        Matching empty = Matching::empty(m.n_firms(), m.n_workers());
        CHECK_FALSE(first_blocking_agent(m, empty).has_value());
    }
}

TEST_CASE("individually_rational")
{
    Market m69 = fixtures::m69();
    CHECK(individually_rational(m69, fixtures::mu3(m69)));
    CHECK(individually_rational(m69, Matching::empty(3, 3)));
    Market ex1 = fixtures::ex1();
    CHECK_FALSE(individually_rational(ex1, fixtures::mu1(ex1)));
}

TEST_CASE("blocking pairs")
{
    Market m69b = fixtures::m69b();
    Matching mu4 = fixtures::mu4(m69b);
    auto pairs = blocking_pairs(m69b, mu4);
    REQUIRE_FALSE(pairs.empty());
    CHECK(pairs.front() == BlockingPair{0, 0});
    CHECK(blocks(m69b, mu4, 0, 0));
    // (f2, w2) also blocks: f2 takes {w1 w2 w3} -> {w2 w3}, w2 takes
    // {f1 f2 f3}
    CHECK(pairs == std::vector<BlockingPair>{{0, 0}, {1, 1}});

    Market m69 = fixtures::m69();
    Matching mu3 = fixtures::mu3(m69);
    auto p3 = blocking_pairs(m69, mu3);
    CHECK(std::find(p3.begin(), p3.end(), BlockingPair{0, 0}) != p3.end());
    CHECK(std::is_sorted(p3.begin(), p3.end()));
    CHECK_FALSE(is_pairwise_stable(m69, mu3));
    CHECK_FALSE(is_pairwise_stable(m69b, mu4));

    Market ex1 = fixtures::ex1();
    CHECK(blocking_pairs(ex1, fixtures::mu1(ex1)).empty());
    Market ex2 = fixtures::ex2();
    CHECK(is_pairwise_stable(ex2, Matching::empty(1, 1)));
    CHECK_FALSE(worker_accepts(ex2, Matching::empty(1, 1), 0, 0));
    CHECK(firm_accepts(ex2, Matching::empty(1, 1), 0, 0));
}

TEST_CASE("desire sets")
{
    Market m69 = fixtures::m69();
    auto d3 = desire_sets(m69, fixtures::mu3(m69));
    CHECK((d3.worker_wanted_by[0] & 1U) != 0);

    Market m69b = fixtures::m69b();
    CHECK(desire_sets(m69b, fixtures::mu4(m69b)).worker_wanted_by[0] == 1U);

    Market ex1 = fixtures::ex1();
    CHECK(desire_sets(ex1, Matching::empty(1, 1)).firm_wanted_by[0] == 1U);
    Market ex2 = fixtures::ex2();
    CHECK(desire_sets(ex2, Matching::empty(1, 1)).firm_wanted_by[0] == 0U);
    // a worker already at f does not count for W_f
    CHECK(desire_sets(ex1, fixtures::mu1(ex1)).firm_wanted_by[0] == 0U);
}

TEST_CASE("worker-quasi-stability")
{
    Market m69 = fixtures::m69();
    Matching mu3 = fixtures::mu3(m69);
    CHECK_FALSE(is_worker_quasi_stable(m69, mu3));
    CHECK_FALSE(is_worker_quasi_stable_definitional(m69, mu3));
    auto v = worker_quasi_violation(m69, mu3);
    REQUIRE(v);
    CHECK(v->agent == worker(0));
    CHECK(v->offered == 0b001);
    CHECK(v->chosen == 0b011);

    Market m69b = fixtures::m69b();
    Matching mu4 = fixtures::mu4(m69b);
    CHECK(is_worker_quasi_stable(m69b, mu4));
    CHECK(is_worker_quasi_stable_definitional(m69b, mu4));
    CHECK_FALSE(worker_quasi_violation(m69b, mu4).has_value());

    for (const Market& m : {fixtures::ex1(), fixtures::ex2(), m69, m69b}) {
        Matching empty = Matching::empty(m.n_firms(), m.n_workers());
        CHECK(is_worker_quasi_stable(m, empty));
        CHECK(is_worker_quasi_stable_definitional(m, empty));
        CHECK(is_firm_quasi_stable(m, empty));
        CHECK(is_firm_quasi_stable_definitional(m, empty));
    }
}

TEST_CASE("firm-quasi-stability")
{
    Market m69b = fixtures::m69b();
    Matching mu4 = fixtures::mu4(m69b);
    CHECK_FALSE(is_firm_quasi_stable(m69b, mu4));
    CHECK_FALSE(is_firm_quasi_stable_definitional(m69b, mu4));
    auto v = firm_quasi_violation(m69b, mu4);
    REQUIRE(v);
    CHECK(v->agent.side == Side::Firm);

    Market m69 = fixtures::m69();
    CHECK_FALSE(is_firm_quasi_stable(m69, fixtures::mu3(m69)));
    CHECK_FALSE(is_firm_quasi_stable_definitional(m69, fixtures::mu3(m69)));
}

TEST_CASE("stability invariants over generated markets")
{
    for (Mode mode : {Mode::ManyToOne, Mode::ManyToMany}) {
        for (GenStrategy strategy : {GenStrategy::QuotaPriority, GenStrategy::SubsetRejection}) {
            GenConfig config;
            config.seed = 99;
            config.n_firms = mode == Mode::ManyToOne ? 3 : 2;
            config.n_workers = 3;
            config.mode = mode;
            config.strategy = strategy;
            config.acceptability = {1, 2};
            for (const Market& m : gen_corpus(config, 10)) {
                for (const Matching& mu : enumerate_matchings(m)) {
                    const bool ir = individually_rational(m, mu);
                    const bool s = is_pairwise_stable(m, mu);
                    const bool qw = is_worker_quasi_stable(m, mu);
                    const bool qf = is_firm_quasi_stable(m, mu);
                    CHECK(qw == is_worker_quasi_stable_definitional(m, mu));
                    CHECK(qf == is_firm_quasi_stable_definitional(m, mu));
                    if (s) {
                        CHECK(qw);
                        CHECK(qf);
                    }
                    if (qw || qf)
                        CHECK(ir);
                    if (ir) {
                        CHECK(blocking_pairs(m, mu).empty() == s);
                        CHECK(qw == !worker_quasi_violation(m, mu).has_value());
                        CHECK(qf == !firm_quasi_violation(m, mu).has_value());
                    }
                    for (auto [f, w] : blocking_pairs(m, mu))
                        CHECK_FALSE(mu.linked(f, w));
                    if (mode == Mode::ManyToOne) {
                        auto d = desire_sets(m, mu);
                        for (int f = 0; f < m.n_firms(); ++f)
                            CHECK((d.firm_wanted_by[f] & mu.firm_partners(f)) == 0);
                    }
                }
            }
        }
    }
}
