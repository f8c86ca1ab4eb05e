#ifndef MATCHKIT_MODEL_HPP
#define MATCHKIT_MODEL_HPP

#include "matchkit/agent.hpp"
#include "matchkit/choice.hpp"
#include "matchkit/subset.hpp"

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace matchkit {

/// Largest roster allowed on either side; choice tables hold 2^n entries.
inline constexpr int max_side_size = 12;

/// Preference ranking over subsets, induced into a choice table.
struct RankingEntry
{
    std::vector<SubsetMask> ranking;
};

/// Explicit choice table, one entry per subset of the opposite side.
struct TableEntry
{
    std::vector<SubsetMask> table;
};

using ChoiceEntry = std::variant<RankingEntry, TableEntry>;

/// Per-agent choice data keyed by label.
using ChoiceData = std::map<std::string, ChoiceEntry>;

class Market
{
public:
    int n_firms() const { return static_cast<int>(firm_labels_.size()); }
    int n_workers() const { return static_cast<int>(worker_labels_.size()); }
    int n_agents() const { return n_firms() + n_workers(); }
    int side_size(Side side) const { return side == Side::Firm ? n_firms() : n_workers(); }
    Mode mode() const { return mode_; }

    const std::vector<std::string>& firm_labels() const { return firm_labels_; }
    const std::vector<std::string>& worker_labels() const { return worker_labels_; }
    const std::string& label(AgentId id) const;
    std::optional<AgentId> find(const std::string& label) const;
    bool contains(AgentId id) const;

    const ChoiceFunction& choice(AgentId id) const;
    const ChoiceFunction& firm_choice(int f) const { return firm_choices_[f]; }
    /// In many-to-one markets this is the choice induced from the worker's
    /// preference list; the raw list is what the stability notions use.
    const ChoiceFunction& worker_choice(int w) const { return worker_choices_[w]; }
    /// Many-to-one worker preference list.
    const PreferenceList& worker_preference(int w) const { return *worker_prefs_[w]; }

    /// The ranking an agent was declared with, if it came from one.
    const std::optional<PreferenceList>& declared_preference(AgentId id) const;

    /// Coalition bit of an agent: firms first, then workers.
    int coalition_bit(AgentId id) const { return id.side == Side::Firm ? id.index : n_firms() + id.index; }
    AgentId agent_at_bit(int bit) const { return bit < n_firms() ? firm(bit) : worker(bit - n_firms()); }

    /// Equality compares rosters, mode, choice tables and (many-to-one) the
    /// worker lists; how a table was declared does not matter.
    friend bool operator==(const Market& a, const Market& b);

private:
    friend Market make_market(std::vector<std::string>, std::vector<std::string>, Mode, const ChoiceData&);

    Mode mode_ = Mode::ManyToOne;
    std::vector<std::string> firm_labels_;
    std::vector<std::string> worker_labels_;
    std::vector<ChoiceFunction> firm_choices_;
    std::vector<ChoiceFunction> worker_choices_;
    std::vector<std::optional<PreferenceList>> firm_prefs_;
    std::vector<std::optional<PreferenceList>> worker_prefs_;
};

/// Builds and validates a market. Throws DuplicateLabel, MissingChoiceEntry,
/// InvalidChoiceTable, InvalidPreferenceList, SubstitutabilityViolation,
/// ConsistencyViolation or SizeLimitExceeded.
Market make_market(std::vector<std::string> firms, std::vector<std::string> workers, Mode mode,
                   const ChoiceData& choice_data);

/// Symmetric firm/worker correspondence. Partner sets are bitmasks, so two
/// matchings compare equal exactly when they have the same links.
class Matching
{
public:
    Matching() = default;

    /// The matching with no links.
    static Matching empty(int n_firms, int n_workers);

    /// Builds the matching from each firm's set of workers.
    static Matching from_firm_partners(int n_workers, std::vector<SubsetMask> firm_partners);

    int n_firms() const { return static_cast<int>(firm_partners_.size()); }
    int n_workers() const { return static_cast<int>(worker_partners_.size()); }

    SubsetMask partners(AgentId id) const
    {
        return id.side == Side::Firm ? firm_partners_[id.index] : worker_partners_[id.index];
    }
    SubsetMask firm_partners(int f) const { return firm_partners_[f]; }
    SubsetMask worker_partners(int w) const { return worker_partners_[w]; }
    const std::vector<SubsetMask>& all_firm_partners() const { return firm_partners_; }

    bool linked(int f, int w) const { return bits::contains(firm_partners_[f], w); }

    /// Links as (firm, worker) pairs, ascending.
    std::vector<std::pair<int, int>> edges() const;

    friend bool operator==(const Matching&, const Matching&) = default;
    friend auto operator<=>(const Matching&, const Matching&) = default;

private:
    std::vector<SubsetMask> firm_partners_;
    std::vector<SubsetMask> worker_partners_;
};

/// Throws UnknownAgent or ManyToOneCapacityViolation.
Matching make_matching(const Market& market, const std::vector<std::pair<AgentId, AgentId>>& pairs);

/// Label-based convenience: pairs of (firm label, worker label).
Matching make_matching(const Market& market, const std::vector<std::pair<std::string, std::string>>& pairs);

bool matched(const Market& market, const Matching& mu, AgentId a);
inline bool unmatched(const Market& market, const Matching& mu, AgentId a) { return !matched(market, mu, a); }

/// Caps on exhaustive enumeration. Exceeding one is an error, never a
/// silent truncation.
struct EnumerationLimits
{
    /// Many-to-many: at most this many potential links (2^edges matchings).
    int max_edges = 16;
    /// Many-to-one: |W| * log2(|F| + 1) must not exceed this.
    double max_assignment_bits = 20.0;
    /// Largest desire set the definitional quasi-stability checks expand.
    int max_desire_set = 16;
};

/// Throws SizeLimitExceeded when the market is beyond `limits`.
void check_enumerable(const Market& market, const EnumerationLimits& limits = {});

/// Number of matchings `enumerate_matchings` yields.
std::uint64_t matching_count(const Market& market);

/// Every matching exactly once. Many-to-many: ascending link bitmask with
/// link index f * |W| + w. Many-to-one: lexicographic over the worker
/// assignment vector (0 = unmatched, k = firm k-1), first worker most
/// significant.
std::vector<Matching> enumerate_matchings(const Market& market, const EnumerationLimits& limits = {});

} // namespace matchkit

#endif
