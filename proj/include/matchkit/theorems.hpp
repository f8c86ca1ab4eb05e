#ifndef MATCHKIT_THEOREMS_HPP
#define MATCHKIT_THEOREMS_HPP

#include "matchkit/domination.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace matchkit {

/// A checkable statement about the stability sets of one market.
/// `mode` is nullopt for statements checked in both modes.
struct Theorem
{
    std::string_view id;
    std::string_view statement;
    std::optional<Mode> mode;
};

/// Every theorem, in report order. Ids are stable.
const std::vector<Theorem>& theorem_catalog();

/// "all", "m21", "m2m", or a comma list of ids. Throws ConfigInvalid on an
/// unknown id.
std::vector<Theorem> select_theorems(std::string_view selector);

struct TheoremOutcome
{
    Theorem theorem;
    int markets = 0;
    std::uint64_t matchings = 0;
    /// Proof constructions run and re-verified along the way.
    std::uint64_t constructions = 0;
    bool holds = true;
    /// First failure, as "<market>: <matching> <reason>".
    std::optional<std::string> counterexample;
    /// Inclusions only: first matching of the larger set outside the
    /// smaller one.
    std::optional<std::string> strict_witness;

    bool applicable() const { return markets > 0; }
};

/// Accumulates theorem checks over a sequence of markets. Markets are
/// checked in the order added; the first counterexample is kept.
class TheoremVerifier
{
public:
    explicit TheoremVerifier(std::vector<Theorem> theorems, EnumerationLimits limits = {},
                             DominationOptions options = {});

    void add(const Market& market, const std::string& name);

    const std::vector<TheoremOutcome>& outcomes() const { return outcomes_; }
    bool all_hold() const;

private:
    EnumerationLimits limits_;
    DominationOptions options_;
    std::vector<TheoremOutcome> outcomes_;
};

/// Status of "A within B" over one market's matchings.
enum class InclusionStatus { Holds, Fails, NotApplicable };

std::string_view to_string(InclusionStatus status);

struct InclusionCell
{
    StabilitySet subset = StabilitySet::IndividuallyRational;
    StabilitySet superset = StabilitySet::IndividuallyRational;
    InclusionStatus status = InclusionStatus::NotApplicable;
    /// Index into the records of a matching in `subset` but not `superset`.
    std::optional<std::size_t> witness;
};

/// Every ordered pair of distinct sets, row-major over all_stability_sets.
/// The diagonal is NotApplicable.
std::vector<InclusionCell> inclusion_matrix(const StabilitySets& sets);

} // namespace matchkit

#endif
