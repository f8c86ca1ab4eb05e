#ifndef MATCHKIT_AGENT_HPP
#define MATCHKIT_AGENT_HPP

#include <compare>
#include <string_view>

namespace matchkit {

enum class Side { Firm, Worker };

constexpr Side opposite(Side side) { return side == Side::Firm ? Side::Worker : Side::Firm; }

inline std::string_view to_string(Side side) { return side == Side::Firm ? "firm" : "worker"; }

/// Identifies an agent by side and index; display labels live in the Market.
struct AgentId
{
    Side side = Side::Firm;
    int index = 0;

    friend auto operator<=>(const AgentId&, const AgentId&) = default;
};

constexpr AgentId firm(int index) { return {Side::Firm, index}; }
constexpr AgentId worker(int index) { return {Side::Worker, index}; }

enum class Mode { ManyToOne, ManyToMany };

inline std::string_view to_string(Mode mode)
{
    return mode == Mode::ManyToOne ? "many-to-one" : "many-to-many";
}

} // namespace matchkit

#endif
