#ifndef MATCHKIT_CHOICE_HPP
#define MATCHKIT_CHOICE_HPP

#include "matchkit/agent.hpp"
#include "matchkit/subset.hpp"

#include <optional>
#include <vector>

namespace matchkit {

/// Strict ranking over subsets of the opposite side; earlier entries are
/// preferred. The empty set must be listed. Subsets that do not appear are
/// never chosen.
class PreferenceList
{
public:
    PreferenceList() = default;
    PreferenceList(AgentId owner, int opposite_size, std::vector<SubsetMask> ranking);

    AgentId owner() const { return owner_; }
    int opposite_size() const { return opposite_size_; }
    const std::vector<SubsetMask>& ranking() const { return ranking_; }

    /// Position in the ranking, or nullopt when the set is not listed.
    std::optional<int> rank_of(SubsetMask set) const;

    /// True when every non-empty entry is a single partner.
    bool singletons_only() const;

    friend bool operator==(const PreferenceList&, const PreferenceList&) = default;

private:
    AgentId owner_{};
    int opposite_size_ = 0;
    std::vector<SubsetMask> ranking_;
};

/// A choice function stored as a total table over all 2^n subsets of the
/// opposite side.
class ChoiceFunction
{
public:
    ChoiceFunction() = default;

    /// `table[T]` is C(T). Throws InvalidChoiceTable unless the table has
    /// 2^n entries, C(T) is a subset of T everywhere and C(empty) is empty.
    ChoiceFunction(AgentId owner, int opposite_size, std::vector<SubsetMask> table);

    AgentId owner() const { return owner_; }
    int opposite_size() const { return opposite_size_; }
    const std::vector<SubsetMask>& table() const { return table_; }

    SubsetMask operator()(SubsetMask set) const { return table_[set]; }

    friend bool operator==(const ChoiceFunction&, const ChoiceFunction&) = default;

private:
    AgentId owner_{};
    int opposite_size_ = 0;
    std::vector<SubsetMask> table_;
};

inline SubsetMask choose(const ChoiceFunction& choice, SubsetMask set) { return choice(set); }

/// C(T) is the highest-ranked listed subset of T.
ChoiceFunction induce_choice(const PreferenceList& pref);

struct SubstitutabilityViolation
{
    SubsetMask larger = 0;  // T
    SubsetMask smaller = 0; // T', a subset of T
    int element = 0;        // chosen from T, in T', not chosen from T'
};

struct ConsistencyViolation
{
    SubsetMask larger = 0;  // T
    SubsetMask smaller = 0; // T' with C(T) <= T' <= T but C(T') != C(T)
};

struct PathIndependenceViolation
{
    SubsetMask first = 0;
    SubsetMask second = 0;
};

/// Checks C(T) & T' <= C(T') for all T' <= T. On failure returns the first
/// violation with T, then T', then the element taken in size-descending,
/// lexicographic order (largest sets are examined first).
std::optional<SubstitutabilityViolation> find_substitutability_violation(const ChoiceFunction& choice);

/// Checks C(T') == C(T) whenever C(T) <= T' <= T; same witness order.
std::optional<ConsistencyViolation> find_consistency_violation(const ChoiceFunction& choice);

/// Checks C(T | T') == C(C(T) | T') for every ordered pair.
std::optional<PathIndependenceViolation> find_path_independence_violation(const ChoiceFunction& choice);

inline bool is_substitutable(const ChoiceFunction& c) { return !find_substitutability_violation(c); }
inline bool is_consistent(const ChoiceFunction& c) { return !find_consistency_violation(c); }
inline bool is_path_independent(const ChoiceFunction& c) { return !find_path_independence_violation(c); }

enum class BlairVerdict { StrictlyPrefers, Equal, StrictlyDispreferred, Incomparable };

std::string_view to_string(BlairVerdict verdict);

/// Blair comparison of `first` against `second`: `first` is weakly preferred
/// when it is what the agent picks out of their union.
BlairVerdict blair_compare(const ChoiceFunction& choice, SubsetMask first, SubsetMask second);

inline bool blair_weakly_prefers(const ChoiceFunction& choice, SubsetMask first, SubsetMask second)
{
    return first == second || choice(first | second) == first;
}

/// Raw many-to-one worker order on single-firm sets and the empty set:
/// true iff the sets are equal or `first` is ranked above `second`.
/// Unlisted sets rank below every listed one. Throws NotSingleton.
bool worker_prefers_m21(const PreferenceList& pref, SubsetMask first, SubsetMask second);

} // namespace matchkit

#endif
