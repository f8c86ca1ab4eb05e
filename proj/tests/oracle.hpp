// Naive reference implementation used only by the tests. Everything is
// written straight from the definitions with std::set, sharing nothing with
// the library beyond reading a market's choice tables and rankings.
#ifndef MATCHKIT_TESTS_ORACLE_HPP
#define MATCHKIT_TESTS_ORACLE_HPP

#include "matchkit/domination.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <utility>
#include <vector>

namespace oracle {

using matchkit::AgentId;
using matchkit::Market;
using matchkit::Matching;
using matchkit::Mode;
using matchkit::Side;

using Set = std::set<int>;
using Agent = std::pair<int, int>; // (0 firm | 1 worker, index)
using Links = std::set<std::pair<int, int>>; // (firm, worker)

inline Set to_set(unsigned mask)
{
    Set s;
    for (int i = 0; i < 32; ++i)
        if (mask & (1U << i))
            s.insert(i);
    return s;
}

inline unsigned to_mask(const Set& s)
{
    unsigned m = 0;
    for (int i : s)
        m |= 1U << i;
    return m;
}

inline bool subset(const Set& a, const Set& b)
{
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

inline Set unite(const Set& a, const Set& b)
{
    Set out = a;
    out.insert(b.begin(), b.end());
    return out;
}

inline AgentId id(Agent a) { return AgentId{a.first == 0 ? Side::Firm : Side::Worker, a.second}; }

inline std::vector<Agent> agents(const Market& m)
{
    std::vector<Agent> out;
    for (int f = 0; f < m.n_firms(); ++f)
        out.push_back({0, f});
    for (int w = 0; w < m.n_workers(); ++w)
        out.push_back({1, w});
    return out;
}

inline Set partners(const Links& mu, Agent a)
{
    Set s;
    for (auto [f, w] : mu) {
        if (a.first == 0 && f == a.second)
            s.insert(w);
        if (a.first == 1 && w == a.second)
            s.insert(f);
    }
    return s;
}

inline Links links_of(const Matching& mu)
{
    Links l;
    for (auto e : mu.edges())
        l.insert(e);
    return l;
}

inline bool m21_worker(const Market& m, Agent a) { return m.mode() == Mode::ManyToOne && a.first == 1; }

// Position of a set in a many-to-one worker's ranking; unlisted sets go
// last.
inline int worker_rank(const Market& m, int w, const Set& s)
{
    const auto& ranking = m.worker_preference(w).ranking();
    for (std::size_t i = 0; i < ranking.size(); ++i)
        if (to_set(ranking[i]) == s)
            return static_cast<int>(i);
    return static_cast<int>(ranking.size());
}

// C_a(T). Many-to-one workers pick the best listed subset of T.
inline Set choose(const Market& m, Agent a, const Set& t)
{
    if (m21_worker(m, a)) {
        const auto& ranking = m.worker_preference(a.second).ranking();
        for (unsigned entry : ranking)
            if (subset(to_set(entry), t))
                return to_set(entry);
        return {};
    }
    return to_set(m.choice(id(a)).table()[to_mask(t)]);
}

inline bool individually_rational(const Market& m, const Links& mu)
{
    for (Agent a : agents(m)) {
        const Set mine = partners(mu, a);
        if (m21_worker(m, a)) {
            if (worker_rank(m, a.second, {}) < worker_rank(m, a.second, mine))
                return false;
        } else if (choose(m, a, mine) != mine) {
            return false;
        }
    }
    return true;
}

inline bool worker_wants(const Market& m, const Links& mu, int f, int w)
{
    const Set now = partners(mu, {1, w});
    if (m.mode() == Mode::ManyToOne)
        return worker_rank(m, w, {f}) < worker_rank(m, w, now);
    return choose(m, {1, w}, unite(now, {f})).count(f) > 0;
}

inline bool firm_wants(const Market& m, const Links& mu, int f, int w)
{
    return choose(m, {0, f}, unite(partners(mu, {0, f}), {w})).count(w) > 0;
}

inline std::vector<std::pair<int, int>> blocking_pairs(const Market& m, const Links& mu)
{
    std::vector<std::pair<int, int>> out;
    for (int f = 0; f < m.n_firms(); ++f)
        for (int w = 0; w < m.n_workers(); ++w)
            if (!mu.count({f, w}) && firm_wants(m, mu, f, w) && worker_wants(m, mu, f, w))
                out.push_back({f, w});
    return out;
}

inline bool pairwise_stable(const Market& m, const Links& mu)
{
    return individually_rational(m, mu) && blocking_pairs(m, mu).empty();
}

inline std::vector<Set> all_subsets(const Set& universe)
{
    std::vector<Set> out{{}};
    for (int x : universe) {
        const std::size_t n = out.size();
        for (std::size_t i = 0; i < n; ++i) {
            Set s = out[i];
            s.insert(x);
            out.push_back(s);
        }
    }
    return out;
}

inline bool worker_quasi_stable(const Market& m, const Links& mu)
{
    if (!individually_rational(m, mu))
        return false;
    if (m.mode() == Mode::ManyToOne) {
        for (auto [f, w] : blocking_pairs(m, mu))
            if (!partners(mu, {1, w}).empty())
                return false;
        return true;
    }
    for (int w = 0; w < m.n_workers(); ++w) {
        const Set now = partners(mu, {1, w});
        Set wanting;
        for (int f = 0; f < m.n_firms(); ++f)
            if (firm_wants(m, mu, f, w))
                wanting.insert(f);
        for (const Set& k : all_subsets(wanting))
            if (!subset(now, choose(m, {1, w}, unite(now, k))))
                return false;
    }
    return true;
}

inline bool firm_quasi_stable(const Market& m, const Links& mu)
{
    if (!individually_rational(m, mu))
        return false;
    for (int f = 0; f < m.n_firms(); ++f) {
        const Set now = partners(mu, {0, f});
        Set wanting;
        for (int w = 0; w < m.n_workers(); ++w)
            if (!now.count(w) && worker_wants(m, mu, f, w))
                wanting.insert(w);
        for (const Set& t : all_subsets(wanting))
            if (!subset(now, choose(m, {0, f}, unite(now, t))))
                return false;
    }
    return true;
}

// The weak order used inside domination.
inline bool prefers(const Market& m, Agent a, const Set& first, const Set& second)
{
    if (first == second)
        return true;
    if (m21_worker(m, a))
        return worker_rank(m, a.second, first) < worker_rank(m, a.second, second);
    return choose(m, a, unite(first, second)) == first;
}

// Agents of the coalition as labels on one line: firm f is bit f, worker w
// is bit |F| + w.
inline std::vector<Agent> members(const Market& m, unsigned s)
{
    std::vector<Agent> out;
    for (int f = 0; f < m.n_firms(); ++f)
        if (s & (1U << f))
            out.push_back({0, f});
    for (int w = 0; w < m.n_workers(); ++w)
        if (s & (1U << (m.n_firms() + w)))
            out.push_back({1, w});
    return out;
}

// Partners of an agent, as the same kind of Agent pairs.
inline std::set<Agent> partner_agents(const Links& mu, Agent a)
{
    std::set<Agent> out;
    for (int p : partners(mu, a))
        out.insert({1 - a.first, p});
    return out;
}

enum class Reading { Core, SetwiseUnion, SetwisePerAgent };

inline bool dominates(const Market& m, const Links& after, const Links& before, unsigned s, Reading reading)
{
    if (after == before || s == 0)
        return false;
    const auto group = members(m, s);
    const std::set<Agent> inside(group.begin(), group.end());
    std::set<Agent> joined_after, joined_before;
    bool strict = false;
    for (Agent a : group) {
        const Set x = partners(after, a);
        const Set y = partners(before, a);
        if (!prefers(m, a, x, y))
            return false;
        strict = strict || x != y;
        auto pa = partner_agents(after, a);
        auto pb = partner_agents(before, a);
        joined_after.insert(pa.begin(), pa.end());
        joined_before.insert(pb.begin(), pb.end());
        if (reading == Reading::SetwisePerAgent)
            for (Agent p : pa)
                if (!pb.count(p) && !inside.count(p))
                    return false;
    }
    if (!strict)
        return false;
    for (Agent p : joined_after) {
        if (inside.count(p))
            continue;
        if (reading == Reading::Core)
            return false;
        if (reading == Reading::SetwiseUnion && !joined_before.count(p))
            return false;
    }
    return true;
}

inline std::vector<Links> all_matchings(const Market& m)
{
    std::vector<Links> out;
    if (m.mode() == Mode::ManyToMany) {
        std::vector<std::pair<int, int>> edges;
        for (int f = 0; f < m.n_firms(); ++f)
            for (int w = 0; w < m.n_workers(); ++w)
                edges.push_back({f, w});
        for (unsigned pick = 0; pick < (1U << edges.size()); ++pick) {
            Links l;
            for (std::size_t i = 0; i < edges.size(); ++i)
                if (pick & (1U << i))
                    l.insert(edges[i]);
            out.push_back(l);
        }
        return out;
    }
    std::vector<int> assign(m.n_workers(), -1);
    auto rec = [&](auto&& self, int w) -> void {
        if (w == m.n_workers()) {
            Links l;
            for (int i = 0; i < m.n_workers(); ++i)
                if (assign[i] >= 0)
                    l.insert({assign[i], i});
            out.push_back(l);
            return;
        }
        for (int f = -1; f < m.n_firms(); ++f) {
            assign[w] = f;
            self(self, w + 1);
        }
    };
    rec(rec, 0);
    return out;
}

struct Verdict
{
    bool ir, s, c, cqw, cqf, qw, qf, sw, swqw, swqf;
};

inline bool worker_clause_broken(const Market& m, const Links& before, const Links& after, unsigned s)
{
    for (Agent a : members(m, s)) {
        if (a.first != 1)
            continue;
        const Set x = partners(before, a);
        const Set y = partners(after, a);
        if (m.mode() == Mode::ManyToOne ? (!x.empty() && x != y) : !subset(x, y))
            return true;
    }
    return false;
}

inline bool firm_clause_broken(const Market& m, const Links& before, const Links& after, unsigned s)
{
    for (Agent a : members(m, s))
        if (a.first == 0 && !subset(partners(before, a), partners(after, a)))
            return true;
    return false;
}

inline Verdict classify(const Market& m, const Links& mu, const std::vector<Links>& all,
                        Reading setwise = Reading::SetwiseUnion)
{
    Verdict v{};
    v.ir = individually_rational(m, mu);
    v.s = pairwise_stable(m, mu);
    v.qw = worker_quasi_stable(m, mu);
    v.qf = firm_quasi_stable(m, mu);
    bool dominated = false, wq = false, fq = false, sdom = false, swq = false, sfq = false;
    const unsigned everyone = (1U << (m.n_firms() + m.n_workers())) - 1;
    for (const Links& other : all) {
        for (unsigned s = 1; s <= everyone; ++s) {
            if (dominates(m, other, mu, s, Reading::Core)) {
                dominated = true;
                wq = wq || worker_clause_broken(m, mu, other, s);
                fq = fq || firm_clause_broken(m, mu, other, s);
            }
            if (dominates(m, other, mu, s, setwise)) {
                sdom = true;
                swq = swq || worker_clause_broken(m, mu, other, s);
                sfq = sfq || firm_clause_broken(m, mu, other, s);
            }
        }
    }
    v.c = !dominated;
    v.cqw = !wq;
    v.cqf = !fq;
    v.sw = v.ir && !sdom;
    v.swqw = v.ir && !swq;
    v.swqf = v.ir && !sfq;
    return v;
}

} // namespace oracle

#endif
