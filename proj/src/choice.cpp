#include "matchkit/choice.hpp"

#include "matchkit/error.hpp"

#include <algorithm>
#include <set>

namespace matchkit {

std::string_view to_string(ErrorCode code)
{
    switch (code) {
    case ErrorCode::DuplicateLabel: return "DuplicateLabel";
    case ErrorCode::MissingChoiceEntry: return "MissingChoiceEntry";
    case ErrorCode::InvalidChoiceTable: return "InvalidChoiceTable";
    case ErrorCode::InvalidPreferenceList: return "InvalidPreferenceList";
    case ErrorCode::SubstitutabilityViolation: return "SubstitutabilityViolation";
    case ErrorCode::ConsistencyViolation: return "ConsistencyViolation";
    case ErrorCode::UnknownAgent: return "UnknownAgent";
    case ErrorCode::ManyToOneCapacityViolation: return "ManyToOneCapacityViolation";
    case ErrorCode::SizeLimitExceeded: return "SizeLimitExceeded";
    case ErrorCode::NotSingleton: return "NotSingleton";
    case ErrorCode::EmptyCoalition: return "EmptyCoalition";
    case ErrorCode::IdenticalMatchings: return "IdenticalMatchings";
    case ErrorCode::NotABlockingPair: return "NotABlockingPair";
    case ErrorCode::EmptyT: return "EmptyT";
    case ErrorCode::TNotInDesireSet: return "TNotInDesireSet";
    case ErrorCode::PreconditionFailed: return "PreconditionFailed";
    case ErrorCode::InternalConsistency: return "InternalConsistency";
    case ErrorCode::RetriesExhausted: return "RetriesExhausted";
    case ErrorCode::ConfigInvalid: return "ConfigInvalid";
    case ErrorCode::SyntaxError: return "SyntaxError";
    }
    return "Unknown";
}

namespace bits {

std::vector<SubsetMask> subsets_size_desc_lex(SubsetMask universe)
{
    std::vector<SubsetMask> out;
    SubsetMask sub = universe;
    while (true) {
        out.push_back(sub);
        if (sub == 0)
            break;
        sub = (sub - 1) & universe;
    }
    std::sort(out.begin(), out.end(), size_desc_lex_less);
    return out;
}

} // namespace bits

PreferenceList::PreferenceList(AgentId owner, int opposite_size, std::vector<SubsetMask> ranking)
    : owner_(owner), opposite_size_(opposite_size), ranking_(std::move(ranking))
{
    if (opposite_size < 0 || opposite_size > 30)
        throw Error(ErrorCode::InvalidPreferenceList, "opposite side size out of range");
    const SubsetMask universe = bits::full(opposite_size);
    std::set<SubsetMask> seen;
    for (SubsetMask entry : ranking_) {
        if (!bits::is_subset(entry, universe))
            throw Error(ErrorCode::InvalidPreferenceList, "entry names an agent outside the opposite side");
        if (!seen.insert(entry).second)
            throw Error(ErrorCode::InvalidPreferenceList, "duplicate entry in ranking");
    }
    if (!seen.contains(0))
        throw Error(ErrorCode::InvalidPreferenceList, "ranking must list the empty set");
}

std::optional<int> PreferenceList::rank_of(SubsetMask set) const
{
    auto it = std::find(ranking_.begin(), ranking_.end(), set);
    if (it == ranking_.end())
        return std::nullopt;
    return static_cast<int>(it - ranking_.begin());
}

bool PreferenceList::singletons_only() const
{
    return std::all_of(ranking_.begin(), ranking_.end(), [](SubsetMask s) { return bits::size(s) <= 1; });
}

ChoiceFunction::ChoiceFunction(AgentId owner, int opposite_size, std::vector<SubsetMask> table)
    : owner_(owner), opposite_size_(opposite_size), table_(std::move(table))
{
    if (opposite_size < 0 || opposite_size > 20)
        throw Error(ErrorCode::InvalidChoiceTable, "opposite side size out of range");
    if (table_.size() != (std::size_t{1} << opposite_size))
        throw Error(ErrorCode::InvalidChoiceTable, "table must have one entry per subset");
    for (std::size_t t = 0; t < table_.size(); ++t) {
        if (!bits::is_subset(table_[t], static_cast<SubsetMask>(t)))
            throw Error(ErrorCode::InvalidChoiceTable, "chosen set is not a subset of its argument");
    }
}

ChoiceFunction induce_choice(const PreferenceList& pref)
{
    const int n = pref.opposite_size();
    std::vector<SubsetMask> table(std::size_t{1} << n, 0);
    for (std::size_t t = 0; t < table.size(); ++t) {
        for (SubsetMask entry : pref.ranking()) {
            if (bits::is_subset(entry, static_cast<SubsetMask>(t))) {
                table[t] = entry;
                break;
            }
        }
    }
    return ChoiceFunction(pref.owner(), n, std::move(table));
}

namespace {

bool has_substitutability_violation(const ChoiceFunction& c)
{
    const SubsetMask universe = bits::full(c.opposite_size());
    for (SubsetMask t = 0; t <= universe; ++t) {
        const SubsetMask chosen = c(t);
        if (chosen == 0)
            continue;
        for (SubsetMask sub = t;; sub = (sub - 1) & t) {
            if (!bits::is_subset(chosen & sub, c(sub)))
                return true;
            if (sub == 0)
                break;
        }
    }
    return false;
}

bool has_consistency_violation(const ChoiceFunction& c)
{
    const SubsetMask universe = bits::full(c.opposite_size());
    for (SubsetMask t = 0; t <= universe; ++t) {
        const SubsetMask chosen = c(t);
        const SubsetMask rejected = t & ~chosen;
        for (SubsetMask drop = rejected;; drop = (drop - 1) & rejected) {
            if (c(chosen | drop) != chosen)
                return true;
            if (drop == 0)
                break;
        }
    }
    return false;
}

} // namespace

std::optional<SubstitutabilityViolation> find_substitutability_violation(const ChoiceFunction& c)
{
    if (!has_substitutability_violation(c))
        return std::nullopt;
    for (SubsetMask t : bits::subsets_size_desc_lex(bits::full(c.opposite_size()))) {
        const SubsetMask chosen = c(t);
        for (SubsetMask sub : bits::subsets_size_desc_lex(t)) {
            const SubsetMask lost = chosen & sub & ~c(sub);
            if (lost != 0)
                return SubstitutabilityViolation{t, sub, bits::lowest(lost)};
        }
    }
    return std::nullopt;
}

std::optional<ConsistencyViolation> find_consistency_violation(const ChoiceFunction& c)
{
    if (!has_consistency_violation(c))
        return std::nullopt;
    for (SubsetMask t : bits::subsets_size_desc_lex(bits::full(c.opposite_size()))) {
        const SubsetMask chosen = c(t);
        for (SubsetMask sub : bits::subsets_size_desc_lex(t)) {
            if (bits::is_subset(chosen, sub) && c(sub) != chosen)
                return ConsistencyViolation{t, sub};
        }
    }
    return std::nullopt;
}

std::optional<PathIndependenceViolation> find_path_independence_violation(const ChoiceFunction& c)
{
    const SubsetMask universe = bits::full(c.opposite_size());
    for (SubsetMask a = 0; a <= universe; ++a) {
        const SubsetMask chosen = c(a);
        for (SubsetMask b = 0; b <= universe; ++b) {
            if (c(a | b) != c(chosen | b))
                return PathIndependenceViolation{a, b};
        }
    }
    return std::nullopt;
}

std::string_view to_string(BlairVerdict verdict)
{
    switch (verdict) {
    case BlairVerdict::StrictlyPrefers: return "StrictlyPrefers";
    case BlairVerdict::Equal: return "Equal";
    case BlairVerdict::StrictlyDispreferred: return "StrictlyDispreferred";
    case BlairVerdict::Incomparable: return "Incomparable";
    }
    return "Incomparable";
}

BlairVerdict blair_compare(const ChoiceFunction& c, SubsetMask first, SubsetMask second)
{
    if (first == second)
        return BlairVerdict::Equal;
    const SubsetMask pick = c(first | second);
    if (pick == first)
        return BlairVerdict::StrictlyPrefers;
    if (pick == second)
        return BlairVerdict::StrictlyDispreferred;
    return BlairVerdict::Incomparable;
}

bool worker_prefers_m21(const PreferenceList& pref, SubsetMask first, SubsetMask second)
{
    if (bits::size(first) > 1 || bits::size(second) > 1)
        throw Error(ErrorCode::NotSingleton, "many-to-one worker order compares single-firm sets only");
    if (first == second)
        return true;
    auto rank_first = pref.rank_of(first);
    auto rank_second = pref.rank_of(second);
    if (!rank_first)
        return false;
    return !rank_second || *rank_first < *rank_second;
}

} // namespace matchkit
