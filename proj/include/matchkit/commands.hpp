#ifndef MATCHKIT_COMMANDS_HPP
#define MATCHKIT_COMMANDS_HPP

#include "matchkit/domination.hpp"
#include "matchkit/gen.hpp"

#include <iosfwd>
#include <optional>
#include <string>

namespace matchkit {

// Exit codes shared by every command.
inline constexpr int exit_ok = 0;
inline constexpr int exit_failure = 1;
inline constexpr int exit_usage = 2;

struct CommandOptions
{
    EnumerationLimits limits{};
    DominationOptions domination{};
    bool tsv = false;
};

/// Parses and validates a market file; prints a per-agent summary.
int cmd_validate(const std::string& path, std::ostream& out, std::ostream& err);

/// Classifies one matching across every stability notion.
int cmd_classify(const std::string& path, const std::string& matching, const CommandOptions& options,
                 std::ostream& out, std::ostream& err);

/// Classifies every matching of a market: rows, set sizes, and the
/// inclusion matrix.
int cmd_sets(const std::string& path, const CommandOptions& options, std::ostream& out, std::ostream& err);

struct VerifyRequest
{
    /// Market file; when empty, a generated corpus is used instead.
    std::string path;
    GenConfig gen{};
    int count = 1;
    bool mixed = false;
    std::string theorems = "all";
};

/// Checks the selected theorems; exit_failure when any fails.
int cmd_verify(const VerifyRequest& request, const CommandOptions& options, std::ostream& out, std::ostream& err);

/// Kinds: blocking-pair, firm-block, quasi-core-pair, setwise, double-quasi.
struct WitnessRequest
{
    std::string kind;
    std::string pair;        // "f1,w1"
    std::string agent;       // label
    std::string set;         // labels, with or without braces
    std::string dominating;  // matching spec
    std::string coalition;   // labels
};

int cmd_witness(const std::string& path, const std::string& matching, const WitnessRequest& request,
                std::ostream& out, std::ostream& err);

/// Markets to `out` (separated by "# gen[i]" lines when count > 1), or
/// `count` files named market-<index>.market in `directory` when given.
int cmd_gen(const GenConfig& config, int count, bool mixed, const std::string& directory, std::ostream& out,
            std::ostream& err);

/// "3/4" for --accept; "1-2" or "2" for --quota. Throw ConfigInvalid.
Probability parse_probability(const std::string& text);
std::pair<int, int> parse_range(const std::string& text);

} // namespace matchkit

#endif
