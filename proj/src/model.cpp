#include "matchkit/model.hpp"

#include "matchkit/error.hpp"

#include <cmath>
#include <set>

namespace matchkit {

namespace {

std::string describe_set(const std::vector<std::string>& labels, SubsetMask set)
{
    std::string out = "{";
    for (int i : bits::members(set)) {
        if (out.size() > 1)
            out += ' ';
        out += labels[i];
    }
    return out + "}";
}

void check_roster(const std::vector<std::string>& labels, std::set<std::string>& seen)
{
    if (static_cast<int>(labels.size()) > max_side_size)
        throw Error(ErrorCode::SizeLimitExceeded,
                    "at most " + std::to_string(max_side_size) + " agents per side");
    for (const auto& label : labels) {
        if (label.empty())
            throw Error(ErrorCode::DuplicateLabel, "empty agent label");
        if (!seen.insert(label).second)
            throw Error(ErrorCode::DuplicateLabel, "label '" + label + "' used twice");
    }
}

void validate_structure(const ChoiceFunction& choice, const std::string& owner,
                        const std::vector<std::string>& opposite_labels)
{
    if (auto v = find_substitutability_violation(choice)) {
        throw Error(ErrorCode::SubstitutabilityViolation,
                    owner + ": " + opposite_labels[v->element] + " is chosen from "
                        + describe_set(opposite_labels, v->larger) + " but not from "
                        + describe_set(opposite_labels, v->smaller));
    }
    if (auto v = find_consistency_violation(choice)) {
        throw Error(ErrorCode::ConsistencyViolation,
                    owner + ": choice from " + describe_set(opposite_labels, v->smaller)
                        + " differs from choice from " + describe_set(opposite_labels, v->larger));
    }
}

} // namespace

const std::string& Market::label(AgentId id) const
{
    if (!contains(id))
        throw Error(ErrorCode::UnknownAgent, "agent index out of range");
    return id.side == Side::Firm ? firm_labels_[id.index] : worker_labels_[id.index];
}

std::optional<AgentId> Market::find(const std::string& label) const
{
    for (int i = 0; i < n_firms(); ++i)
        if (firm_labels_[i] == label)
            return firm(i);
    for (int i = 0; i < n_workers(); ++i)
        if (worker_labels_[i] == label)
            return worker(i);
    return std::nullopt;
}

bool Market::contains(AgentId id) const
{
    return id.index >= 0 && id.index < side_size(id.side);
}

const ChoiceFunction& Market::choice(AgentId id) const
{
    if (!contains(id))
        throw Error(ErrorCode::UnknownAgent, "agent index out of range");
    return id.side == Side::Firm ? firm_choices_[id.index] : worker_choices_[id.index];
}

const std::optional<PreferenceList>& Market::declared_preference(AgentId id) const
{
    if (!contains(id))
        throw Error(ErrorCode::UnknownAgent, "agent index out of range");
    return id.side == Side::Firm ? firm_prefs_[id.index] : worker_prefs_[id.index];
}

bool operator==(const Market& a, const Market& b)
{
    if (a.mode_ != b.mode_ || a.firm_labels_ != b.firm_labels_ || a.worker_labels_ != b.worker_labels_)
        return false;
    if (a.firm_choices_ != b.firm_choices_ || a.worker_choices_ != b.worker_choices_)
        return false;
    if (a.mode_ == Mode::ManyToOne)
        return a.worker_prefs_ == b.worker_prefs_;
    return true;
}

Market make_market(std::vector<std::string> firms, std::vector<std::string> workers, Mode mode,
                   const ChoiceData& choice_data)
{
    std::set<std::string> seen;
    check_roster(firms, seen);
    check_roster(workers, seen);

    for (const auto& [label, entry] : choice_data) {
        if (!seen.contains(label))
            throw Error(ErrorCode::UnknownAgent, "choice data for unknown agent '" + label + "'");
    }

    Market market;
    market.mode_ = mode;
    market.firm_labels_ = std::move(firms);
    market.worker_labels_ = std::move(workers);

    auto build = [&](AgentId id, const std::string& label, int opposite_size,
                     const std::vector<std::string>& opposite_labels)
        -> std::pair<ChoiceFunction, std::optional<PreferenceList>> {
        auto it = choice_data.find(label);
        if (it == choice_data.end())
            throw Error(ErrorCode::MissingChoiceEntry, "no preference or choice table for '" + label + "'");
        const bool m21_worker = mode == Mode::ManyToOne && id.side == Side::Worker;
        if (const auto* ranking = std::get_if<RankingEntry>(&it->second)) {
            PreferenceList pref(id, opposite_size, ranking->ranking);
            if (m21_worker && !pref.singletons_only())
                throw Error(ErrorCode::InvalidPreferenceList,
                            label + ": many-to-one worker lists rank single firms only");
            ChoiceFunction choice = induce_choice(pref);
            if (!m21_worker)
                validate_structure(choice, label, opposite_labels);
            return {std::move(choice), std::move(pref)};
        }
        if (m21_worker)
            throw Error(ErrorCode::InvalidPreferenceList,
                        label + ": many-to-one workers need a preference list, not a table");
        const auto& table = std::get<TableEntry>(it->second).table;
        if (table.size() != (std::size_t{1} << opposite_size))
            throw Error(ErrorCode::MissingChoiceEntry, label + ": choice table must cover every subset");
        ChoiceFunction choice(id, opposite_size, table);
        validate_structure(choice, label, opposite_labels);
        return {std::move(choice), std::nullopt};
    };

    for (int f = 0; f < market.n_firms(); ++f) {
        auto [choice, pref] = build(firm(f), market.firm_labels_[f], market.n_workers(), market.worker_labels_);
        market.firm_choices_.push_back(std::move(choice));
        market.firm_prefs_.push_back(std::move(pref));
    }
    for (int w = 0; w < market.n_workers(); ++w) {
        auto [choice, pref] = build(worker(w), market.worker_labels_[w], market.n_firms(), market.firm_labels_);
        market.worker_choices_.push_back(std::move(choice));
        market.worker_prefs_.push_back(std::move(pref));
    }
    return market;
}

Matching Matching::empty(int n_firms, int n_workers)
{
    return from_firm_partners(n_workers, std::vector<SubsetMask>(n_firms, 0));
}

Matching Matching::from_firm_partners(int n_workers, std::vector<SubsetMask> firm_partners)
{
    Matching mu;
    mu.worker_partners_.assign(n_workers, 0);
    for (std::size_t f = 0; f < firm_partners.size(); ++f) {
        firm_partners[f] &= bits::full(n_workers);
        for (int w : bits::members(firm_partners[f]))
            mu.worker_partners_[w] |= bits::single(static_cast<int>(f));
    }
    mu.firm_partners_ = std::move(firm_partners);
    return mu;
}

std::vector<std::pair<int, int>> Matching::edges() const
{
    std::vector<std::pair<int, int>> out;
    for (int f = 0; f < n_firms(); ++f)
        for (int w : bits::members(firm_partners_[f]))
            out.emplace_back(f, w);
    return out;
}

Matching make_matching(const Market& market, const std::vector<std::pair<AgentId, AgentId>>& pairs)
{
    std::vector<SubsetMask> firm_partners(market.n_firms(), 0);
    std::vector<SubsetMask> worker_partners(market.n_workers(), 0);
    for (const auto& [f, w] : pairs) {
        if (f.side != Side::Firm || w.side != Side::Worker || !market.contains(f) || !market.contains(w))
            throw Error(ErrorCode::UnknownAgent, "pair must name a market firm and a market worker");
        firm_partners[f.index] |= bits::single(w.index);
        worker_partners[w.index] |= bits::single(f.index);
    }
    if (market.mode() == Mode::ManyToOne) {
        for (int w = 0; w < market.n_workers(); ++w)
            if (bits::size(worker_partners[w]) > 1)
                throw Error(ErrorCode::ManyToOneCapacityViolation,
                            market.worker_labels()[w] + " is assigned to more than one firm");
    }
    return Matching::from_firm_partners(market.n_workers(), std::move(firm_partners));
}

Matching make_matching(const Market& market, const std::vector<std::pair<std::string, std::string>>& pairs)
{
    std::vector<std::pair<AgentId, AgentId>> ids;
    for (const auto& [f, w] : pairs) {
        auto fid = market.find(f);
        auto wid = market.find(w);
        if (!fid || !wid)
            throw Error(ErrorCode::UnknownAgent, "unknown agent in pair (" + f + ", " + w + ")");
        ids.emplace_back(*fid, *wid);
    }
    return make_matching(market, ids);
}

bool matched(const Market& market, const Matching& mu, AgentId a)
{
    if (!market.contains(a))
        throw Error(ErrorCode::UnknownAgent, "agent index out of range");
    return mu.partners(a) != 0;
}

void check_enumerable(const Market& market, const EnumerationLimits& limits)
{
    if (market.mode() == Mode::ManyToMany) {
        const int edges = market.n_firms() * market.n_workers();
        if (edges > limits.max_edges || edges > 30)
            throw Error(ErrorCode::SizeLimitExceeded,
                        std::to_string(edges) + " potential links exceed the cap of "
                            + std::to_string(limits.max_edges));
    } else {
        const double assignment_bits = market.n_workers() * std::log2(market.n_firms() + 1.0);
        if (assignment_bits > limits.max_assignment_bits + 1e-9)
            throw Error(ErrorCode::SizeLimitExceeded,
                        "assignment space of " + std::to_string(assignment_bits) + " bits exceeds the cap");
    }
}

std::uint64_t matching_count(const Market& market)
{
    if (market.mode() == Mode::ManyToMany)
        return std::uint64_t{1} << (market.n_firms() * market.n_workers());
    std::uint64_t count = 1;
    for (int w = 0; w < market.n_workers(); ++w)
        count *= static_cast<std::uint64_t>(market.n_firms() + 1);
    return count;
}

std::vector<Matching> enumerate_matchings(const Market& market, const EnumerationLimits& limits)
{
    check_enumerable(market, limits);
    const int nf = market.n_firms();
    const int nw = market.n_workers();
    std::vector<Matching> out;
    out.reserve(matching_count(market));

    if (market.mode() == Mode::ManyToMany) {
        const std::uint64_t total = matching_count(market);
        for (std::uint64_t links = 0; links < total; ++links) {
            std::vector<SubsetMask> firm_partners(nf, 0);
            for (int f = 0; f < nf; ++f)
                firm_partners[f] = static_cast<SubsetMask>((links >> (f * nw)) & bits::full(nw));
            out.push_back(Matching::from_firm_partners(nw, std::move(firm_partners)));
        }
        return out;
    }

    std::vector<int> assignment(nw, 0);
    while (true) {
        std::vector<SubsetMask> firm_partners(nf, 0);
        for (int w = 0; w < nw; ++w)
            if (assignment[w] > 0)
                firm_partners[assignment[w] - 1] |= bits::single(w);
        out.push_back(Matching::from_firm_partners(nw, std::move(firm_partners)));

        int pos = nw - 1;
        while (pos >= 0 && assignment[pos] == nf) {
            assignment[pos] = 0;
            --pos;
        }
        if (pos < 0)
            break;
        ++assignment[pos];
    }
    return out;
}

} // namespace matchkit
