#ifndef MATCHKIT_SUBSET_HPP
#define MATCHKIT_SUBSET_HPP

#include <bit>
#include <cstdint>
#include <vector>

namespace matchkit {

/// A set of agents from one side of the market, bit i standing for the
/// agent with index i. Markets are desk-scale, so 32 bits is plenty.
using SubsetMask = std::uint32_t;

/// A set of agents drawn from both sides: firms occupy bits [0, n_firms),
/// workers occupy bits [n_firms, n_firms + n_workers).
using CoalitionMask = std::uint32_t;

namespace bits {

constexpr SubsetMask single(int index) { return SubsetMask{1} << index; }
constexpr SubsetMask full(int n) { return n >= 32 ? ~SubsetMask{0} : (SubsetMask{1} << n) - 1; }
constexpr bool contains(SubsetMask set, int index) { return (set >> index) & 1U; }
constexpr bool is_subset(SubsetMask a, SubsetMask b) { return (a & ~b) == 0; }
constexpr int size(SubsetMask set) { return std::popcount(set); }
constexpr int lowest(SubsetMask set) { return std::countr_zero(set); }

inline std::vector<int> members(SubsetMask set)
{
    std::vector<int> out;
    while (set != 0) {
        out.push_back(lowest(set));
        set &= set - 1;
    }
    return out;
}

/// Strict total order on sets: larger sets first, then lexicographic on the
/// ascending member lists. Used wherever a canonical "first" set is needed.
inline bool size_desc_lex_less(SubsetMask a, SubsetMask b)
{
    if (size(a) != size(b))
        return size(a) > size(b);
    while (a != 0 && b != 0) {
        int la = lowest(a), lb = lowest(b);
        if (la != lb)
            return la < lb;
        a &= a - 1;
        b &= b - 1;
    }
    return false;
}

/// All subsets of `universe`, in size_desc_lex order.
std::vector<SubsetMask> subsets_size_desc_lex(SubsetMask universe);

} // namespace bits
} // namespace matchkit

#endif
