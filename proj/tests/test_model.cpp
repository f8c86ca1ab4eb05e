#include "matchkit/error.hpp"
#include "matchkit/fixtures.hpp"
#include "matchkit/model.hpp"

#include <doctest.h>

#include <bit>
#include <functional>
#include <set>

using namespace matchkit;

namespace {

ErrorCode code_of(const std::function<void()>& f)
{
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("no error raised");
    return ErrorCode::InternalConsistency;
}

ChoiceData one_by_two()
{
    ChoiceData d;
    d["f"] = RankingEntry{{1, 2, 0}};
    d["w1"] = RankingEntry{{1, 0}};
    d["w2"] = RankingEntry{{1, 0}};
    return d;
}

} // namespace

TEST_CASE("make_market on the fixtures")
{
    Market ex1 = fixtures::ex1();
    CHECK(ex1.mode() == Mode::ManyToOne);
    CHECK(ex1.n_firms() == 1);
    CHECK(ex1.n_workers() == 1);
    CHECK(ex1.firm_choice(0)(1) == 0);

    Market m69 = fixtures::m69();
    CHECK(m69.mode() == Mode::ManyToMany);
    CHECK(m69.n_agents() == 6);
    CHECK(m69.label(worker(2)) == "w3");
    CHECK(m69.find("f2") == firm(1));
    CHECK_FALSE(m69.find("x").has_value());
    CHECK(m69.coalition_bit(worker(0)) == 3);
    CHECK(m69.agent_at_bit(4) == worker(1));
    CHECK(m69 == fixtures::m69());
    CHECK_FALSE(m69 == fixtures::m69b());
}

TEST_CASE("make_market errors")
{
    CHECK(code_of([] { make_market({"f", "f"}, {"w"}, Mode::ManyToOne, {}); }) == ErrorCode::DuplicateLabel);
    CHECK(code_of([] { make_market({"a"}, {"a"}, Mode::ManyToOne, {}); }) == ErrorCode::DuplicateLabel);

    ChoiceData missing = one_by_two();
    missing.erase("w2");
    CHECK(code_of([&] { make_market({"f"}, {"w1", "w2"}, Mode::ManyToOne, missing); }) ==
          ErrorCode::MissingChoiceEntry);

    ChoiceData bad = one_by_two();
    bad["f"] = TableEntry{{0, 3, 2, 3}};
    CHECK(code_of([&] { make_market({"f"}, {"w1", "w2"}, Mode::ManyToOne, bad); }) == ErrorCode::InvalidChoiceTable);

    ChoiceData sub;
    sub["f1"] = RankingEntry{{3, 4, 0}};
    sub["f2"] = RankingEntry{{0}};
    sub["w1"] = RankingEntry{{1, 0}};
    sub["w2"] = RankingEntry{{1, 0}};
    sub["w3"] = RankingEntry{{1, 0}};
    CHECK(code_of([&] { make_market({"f1", "f2"}, {"w1", "w2", "w3"}, Mode::ManyToMany, sub); }) ==
          ErrorCode::SubstitutabilityViolation);

    ChoiceData cons;
    // C({w1 w2}) = {} yet C({w1}) = {w1}
    cons["f"] = TableEntry{{0, 1, 2, 0}};
    cons["w1"] = RankingEntry{{1, 0}};
    cons["w2"] = RankingEntry{{1, 0}};
    CHECK(code_of([&] { make_market({"f"}, {"w1", "w2"}, Mode::ManyToOne, cons); }) ==
          ErrorCode::ConsistencyViolation);

    // many-to-one workers rank single firms only
    ChoiceData pairs;
    pairs["f1"] = RankingEntry{{0}};
    pairs["f2"] = RankingEntry{{0}};
    pairs["w"] = RankingEntry{{3, 0}};
    CHECK(code_of([&] { make_market({"f1", "f2"}, {"w"}, Mode::ManyToOne, pairs); }) ==
          ErrorCode::InvalidPreferenceList);

    std::vector<std::string> many;
    for (int i = 0; i <= max_side_size; ++i)
        many.push_back("f" + std::to_string(i));
    CHECK(code_of([&] { make_market(many, {"w"}, Mode::ManyToOne, {}); }) == ErrorCode::SizeLimitExceeded);
}

TEST_CASE("make_matching")
{
    Market ex1 = fixtures::ex1();
    Matching mu1 = fixtures::mu1(ex1);
    CHECK(mu1.partners(firm(0)) == 1);
    CHECK(mu1.partners(worker(0)) == 1);
    CHECK(matched(ex1, mu1, worker(0)));

    Market m69 = fixtures::m69();
    Matching empty = make_matching(m69, std::vector<std::pair<AgentId, AgentId>>{});
    CHECK(empty == Matching::empty(3, 3));
    for (int i = 0; i < 3; ++i) {
        CHECK(unmatched(m69, empty, firm(i)));
        CHECK(unmatched(m69, empty, worker(i)));
    }

    Matching mu3 = fixtures::mu3(m69);
    CHECK(mu3.firm_partners(0) == 0b110);
    CHECK(mu3.worker_partners(0) == 0b110);
    CHECK(matched(m69, mu3, firm(0)));
    CHECK(mu3.edges().size() == 6);
    CHECK(mu3.linked(1, 0));
    CHECK_FALSE(mu3.linked(0, 0));

    Market m = make_market({"f1", "f2"}, {"w"}, Mode::ManyToOne,
                           ChoiceData{{"f1", RankingEntry{{1, 0}}}, {"f2", RankingEntry{{1, 0}}},
                                      {"w", RankingEntry{{1, 2, 0}}}});
    CHECK(code_of([&] {
              make_matching(m, std::vector<std::pair<std::string, std::string>>{{"f1", "w"}, {"f2", "w"}});
          }) == ErrorCode::ManyToOneCapacityViolation);
    CHECK(code_of([&] { make_matching(m, std::vector<std::pair<std::string, std::string>>{{"f3", "w"}}); }) ==
          ErrorCode::UnknownAgent);
    CHECK(code_of([&] { make_matching(m, std::vector<std::pair<AgentId, AgentId>>{{firm(0), firm(1)}}); }) ==
          ErrorCode::UnknownAgent);
}

TEST_CASE("enumerate_matchings")
{
    CHECK(enumerate_matchings(fixtures::ex1()).size() == 2);
    CHECK(enumerate_matchings(fixtures::m69()).size() == 512);
    CHECK(matching_count(fixtures::m69()) == 512);

    Market m22 = make_market({"f1", "f2"}, {"w1", "w2"}, Mode::ManyToOne,
                             ChoiceData{{"f1", RankingEntry{{1, 0}}},
                                        {"f2", RankingEntry{{1, 0}}},
                                        {"w1", RankingEntry{{1, 0}}},
                                        {"w2", RankingEntry{{1, 0}}}});
    auto all = enumerate_matchings(m22);
    CHECK(all.size() == 9);
    CHECK(matching_count(m22) == 9);
    CHECK(std::set<Matching>(all.begin(), all.end()).size() == 9);
    CHECK(all.front() == Matching::empty(2, 2));
    // last worker varies fastest
    CHECK(all[1].worker_partners(1) == 1);
    CHECK(all[1].worker_partners(0) == 0);
    for (const auto& mu : all)
        for (int w = 0; w < 2; ++w)
            CHECK(std::popcount(mu.worker_partners(w)) <= 1);

    auto m2m = enumerate_matchings(fixtures::m69());
    CHECK(std::set<Matching>(m2m.begin(), m2m.end()).size() == 512);
    CHECK(m2m[1].linked(0, 0));
    CHECK(m2m[2].linked(0, 1));
    CHECK(m2m[8].linked(1, 0));
}

TEST_CASE("enumeration caps")
{
    EnumerationLimits tight;
    tight.max_edges = 8;
    CHECK(code_of([&] { check_enumerable(fixtures::m69(), tight); }) == ErrorCode::SizeLimitExceeded);
    CHECK(code_of([&] { enumerate_matchings(fixtures::m69(), tight); }) == ErrorCode::SizeLimitExceeded);
    CHECK_NOTHROW(check_enumerable(fixtures::m69()));

    EnumerationLimits bits;
    bits.max_assignment_bits = 0.5;
    CHECK(code_of([&] { check_enumerable(fixtures::ex1(), bits); }) == ErrorCode::SizeLimitExceeded);
}
