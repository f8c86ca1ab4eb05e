#ifndef MATCHKIT_MARKET_FILE_HPP
#define MATCHKIT_MARKET_FILE_HPP

#include "matchkit/model.hpp"

#include <string>
#include <string_view>

namespace matchkit {

/// Parses the line-oriented market format:
///
///     # comment
///     market many-to-many
///     firms: f1 f2
///     workers: w1 w2
///     pref f1: {w1 w2} > {w1} > {}
///     choice f2:
///       {} -> {}
///       {w1} -> {w1}
///       {w2} -> {}
///       {w1 w2} -> {w1}
///     pref w1: ...
///
/// Throws SyntaxError (with line and column) for malformed text, and the
/// make_market errors for well-formed but invalid markets.
Market parse_market(std::string_view text);

/// Inverse of parse_market. Agents declared by a ranking are written as
/// `pref` lines, the rest as full `choice` tables in ascending subset order.
std::string serialize_market(const Market& market);

Market load_market(const std::string& path);

/// "f1:w2 w3; f2:w1". Keys may be firms or workers; unlisted agents are
/// unmatched; "" and "{}" are the empty matching. Throws SyntaxError,
/// UnknownAgent or ManyToOneCapacityViolation.
Matching parse_matching(const Market& market, std::string_view spec);

/// Firm-keyed form accepted by parse_matching, or "{}" when empty.
std::string format_matching(const Market& market, const Matching& mu);

/// Worker-keyed form, e.g. "w1:f2 f3; w2:f1 f3".
std::string format_matching_by_worker(const Market& market, const Matching& mu);

/// "{w1 w2}" style rendering of a subset of one side.
std::string format_set(const Market& market, Side side, SubsetMask set);

/// "{f1 w2}" style rendering of a coalition.
std::string format_coalition(const Market& market, CoalitionMask coalition);

} // namespace matchkit

#endif
