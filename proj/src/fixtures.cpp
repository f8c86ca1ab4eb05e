#include "matchkit/fixtures.hpp"

#include "matchkit/error.hpp"

#include <algorithm>

namespace matchkit::fixtures {

SubsetMask labels_to_set(const std::vector<std::string>& roster, const std::vector<std::string>& labels)
{
    SubsetMask set = 0;
    for (const auto& label : labels) {
        auto it = std::find(roster.begin(), roster.end(), label);
        if (it == roster.end())
            throw Error(ErrorCode::UnknownAgent, "unknown label '" + label + "'");
        set |= bits::single(static_cast<int>(it - roster.begin()));
    }
    return set;
}

namespace {

using Sets = std::vector<std::vector<std::string>>;

RankingEntry ranking(const std::vector<std::string>& roster, const Sets& sets)
{
    RankingEntry entry;
    for (const auto& s : sets)
        entry.ranking.push_back(labels_to_set(roster, s));
    return entry;
}

const std::vector<std::string> firms3 = {"f1", "f2", "f3"};
const std::vector<std::string> workers3 = {"w1", "w2", "w3"};

} // namespace

Market ex1()
{
    ChoiceData data;
    data["f"] = ranking({"w"}, {{}, {"w"}});
    data["w"] = ranking({"f"}, {{"f"}, {}});
    return make_market({"f"}, {"w"}, Mode::ManyToOne, data);
}

Market ex2()
{
    ChoiceData data;
    data["f"] = ranking({"w"}, {{"w"}, {}});
    data["w"] = ranking({"f"}, {{}, {"f"}});
    return make_market({"f"}, {"w"}, Mode::ManyToOne, data);
}

Market m69()
{
    ChoiceData data;
    data["f1"] = ranking(workers3, {{"w1", "w2"}, {"w2", "w3"}, {"w1"}, {"w2"}, {"w3"}, {}});
    data["f2"] = ranking(workers3, {{"w2", "w3"}, {"w1", "w3"}, {"w2"}, {"w1"}, {"w3"}, {}});
    data["f3"] = ranking(workers3, {{"w1", "w3"}, {"w1", "w2"}, {"w3"}, {"w1"}, {"w2"}, {}});
    data["w1"] = ranking(firms3, {{"f1", "f2"}, {"f2", "f3"}, {"f1"}, {"f2"}, {"f3"}, {}});
    data["w2"] = ranking(firms3, {{"f2", "f3"}, {"f1", "f3"}, {"f2"}, {"f1"}, {"f3"}, {}});
    data["w3"] = ranking(firms3, {{"f1", "f3"}, {"f1", "f2"}, {"f3"}, {"f1"}, {"f2"}, {}});
    return make_market(firms3, workers3, Mode::ManyToMany, data);
}

Market m69b()
{
    ChoiceData data;
    data["f1"] = ranking(workers3, {{"w1", "w2"}, {"w2", "w3"}, {"w1"}, {"w2"}, {"w3"}, {}});
    data["f2"] = ranking(workers3, {{"w2", "w3"}, {"w1", "w3"}, {"w2"}, {"w1"}, {"w3"}, {}});
    data["f3"] = ranking(workers3, {{"w1", "w2", "w3"},
                                    {"w1", "w3"},
                                    {"w1", "w2"},
                                    {"w2", "w3"},
                                    {"w3"},
                                    {"w1"},
                                    {"w2"},
                                    {}});
    data["w1"] = ranking(firms3, {{"f1", "f2", "f3"},
                                  {"f1", "f2"},
                                  {"f2", "f3"},
                                  {"f1", "f3"},
                                  {"f1"},
                                  {"f2"},
                                  {"f3"},
                                  {}});
    data["w2"] = ranking(firms3, {{"f1", "f2", "f3"},
                                  {"f1", "f3"},
                                  {"f1", "f2"},
                                  {"f2", "f3"},
                                  {"f2"},
                                  {"f1"},
                                  {"f3"},
                                  {}});
    data["w3"] = ranking(firms3, {{"f1", "f2", "f3"},
                                  {"f1", "f3"},
                                  {"f1", "f2"},
                                  {"f2", "f3"},
                                  {"f3"},
                                  {"f1"},
                                  {"f2"},
                                  {}});
    return make_market(firms3, workers3, Mode::ManyToMany, data);
}

Matching mu1(const Market& market)
{
    return make_matching(market, std::vector<std::pair<std::string, std::string>>{{"f", "w"}});
}

Matching mu2(const Market& market)
{
    return make_matching(market, std::vector<std::pair<std::string, std::string>>{{"f", "w"}});
}

Matching mu3(const Market& market)
{
    return make_matching(market, std::vector<std::pair<std::string, std::string>>{
                                     {"f2", "w1"}, {"f3", "w1"}, {"f1", "w2"}, {"f3", "w2"}, {"f1", "w3"}, {"f2", "w3"}});
}

Matching mu4(const Market& market)
{
    return make_matching(market, std::vector<std::pair<std::string, std::string>>{{"f2", "w1"},
                                                                                 {"f3", "w1"},
                                                                                 {"f1", "w2"},
                                                                                 {"f3", "w2"},
                                                                                 {"f1", "w3"},
                                                                                 {"f2", "w3"},
                                                                                 {"f3", "w3"}});
}

std::string ex1_text()
{
    return "market many-to-one\n"
           "firms: f\n"
           "workers: w\n"
           "pref f: {} > {w}\n"
           "pref w: {f} > {}\n";
}

std::string ex2_text()
{
    return "market many-to-one\n"
           "firms: f\n"
           "workers: w\n"
           "pref f: {w} > {}\n"
           "pref w: {} > {f}\n";
}

std::string m69_text()
{
    return "market many-to-many\n"
           "firms: f1 f2 f3\n"
           "workers: w1 w2 w3\n"
           "pref f1: {w1 w2} > {w2 w3} > {w1} > {w2} > {w3} > {}\n"
           "pref f2: {w2 w3} > {w1 w3} > {w2} > {w1} > {w3} > {}\n"
           "pref f3: {w1 w3} > {w1 w2} > {w3} > {w1} > {w2} > {}\n"
           "pref w1: {f1 f2} > {f2 f3} > {f1} > {f2} > {f3} > {}\n"
           "pref w2: {f2 f3} > {f1 f3} > {f2} > {f1} > {f3} > {}\n"
           "pref w3: {f1 f3} > {f1 f2} > {f3} > {f1} > {f2} > {}\n";
}

std::string m69b_text()
{
    return "market many-to-many\n"
           "firms: f1 f2 f3\n"
           "workers: w1 w2 w3\n"
           "pref f1: {w1 w2} > {w2 w3} > {w1} > {w2} > {w3} > {}\n"
           "pref f2: {w2 w3} > {w1 w3} > {w2} > {w1} > {w3} > {}\n"
           "pref f3: {w1 w2 w3} > {w1 w3} > {w1 w2} > {w2 w3} > {w3} > {w1} > {w2} > {}\n"
           "pref w1: {f1 f2 f3} > {f1 f2} > {f2 f3} > {f1 f3} > {f1} > {f2} > {f3} > {}\n"
           "pref w2: {f1 f2 f3} > {f1 f3} > {f1 f2} > {f2 f3} > {f2} > {f1} > {f3} > {}\n"
           "pref w3: {f1 f2 f3} > {f1 f3} > {f1 f2} > {f2 f3} > {f3} > {f1} > {f2} > {}\n";
}

} // namespace matchkit::fixtures
