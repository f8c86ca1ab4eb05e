#include "matchkit/gen.hpp"

#include "matchkit/error.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace matchkit {

std::uint64_t SplitMix64::next()
{
    state_ += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

std::uint64_t SplitMix64::below(std::uint64_t bound)
{
    const std::uint64_t threshold = (0 - bound) % bound;
    while (true) {
        const std::uint64_t r = next();
        if (r >= threshold)
            return r % bound;
    }
}

bool SplitMix64::chance(std::uint64_t numerator, std::uint64_t denominator)
{
    return below(denominator) < numerator;
}

std::uint64_t corpus_seed(std::uint64_t seed, std::uint64_t index)
{
    return SplitMix64(seed ^ (0xD1B54A32D192ED03ULL * (index + 1))).next();
}

std::string_view to_string(GenStrategy strategy)
{
    return strategy == GenStrategy::QuotaPriority ? "quota-priority" : "subset-rejection";
}

namespace {

void validate(const GenConfig& c)
{
    auto fail = [](const std::string& what) { throw Error(ErrorCode::ConfigInvalid, what); };
    if (c.n_firms < 1 || c.n_workers < 1)
        fail("each side needs at least one agent");
    if (c.n_firms > max_side_size || c.n_workers > max_side_size)
        fail("at most " + std::to_string(max_side_size) + " agents per side");
    if (c.mode == Mode::ManyToMany) {
        if (c.n_firms * c.n_workers > c.limits.max_edges)
            fail("market exceeds the enumeration cap of " + std::to_string(c.limits.max_edges) + " links");
    } else if (c.n_workers * std::log2(c.n_firms + 1.0) > c.limits.max_assignment_bits + 1e-9) {
        fail("market exceeds the many-to-one enumeration cap");
    }
    const int quota_cap = c.mode == Mode::ManyToOne ? c.n_workers : std::min(c.n_firms, c.n_workers);
    if (c.quota_min < 0 || c.quota_min > c.quota_max || c.quota_max > quota_cap)
        fail("quota range must lie within [0, " + std::to_string(quota_cap) + "]");
    if (c.acceptability.denominator == 0 || c.acceptability.numerator > c.acceptability.denominator)
        fail("acceptability must be a probability");
}

std::vector<std::string> roster(char prefix, int n)
{
    std::vector<std::string> out;
    for (int i = 1; i <= n; ++i)
        out.push_back(std::string(1, prefix) + std::to_string(i));
    return out;
}

std::vector<int> acceptable_in_priority(SplitMix64& rng, int opposite_size, Probability p)
{
    std::vector<int> acceptable;
    for (int j = 0; j < opposite_size; ++j)
        if (rng.chance(p.numerator, p.denominator))
            acceptable.push_back(j);
    rng.shuffle(acceptable);
    return acceptable;
}

// Top-q acceptable partners present in T, by priority.
ChoiceEntry quota_priority_table(SplitMix64& rng, int opposite_size, const GenConfig& c)
{
    const std::vector<int> priority = acceptable_in_priority(rng, opposite_size, c.acceptability);
    const int quota = c.quota_min + static_cast<int>(rng.below(c.quota_max - c.quota_min + 1));
    TableEntry entry;
    entry.table.resize(std::size_t{1} << opposite_size);
    for (SubsetMask t = 0; t < entry.table.size(); ++t) {
        SubsetMask chosen = 0;
        int taken = 0;
        for (int j : priority) {
            if (taken == quota)
                break;
            if (bits::contains(t, j)) {
                chosen |= bits::single(j);
                ++taken;
            }
        }
        entry.table[t] = chosen;
    }
    return entry;
}

ChoiceEntry m21_worker_list(SplitMix64& rng, int n_firms, const GenConfig& c)
{
    RankingEntry entry;
    if (c.strategy == GenStrategy::QuotaPriority) {
        for (int f : acceptable_in_priority(rng, n_firms, c.acceptability))
            entry.ranking.push_back(bits::single(f));
        entry.ranking.push_back(0);
        return entry;
    }
    entry.ranking.push_back(0);
    for (int f = 0; f < n_firms; ++f)
        if (rng.chance(c.acceptability.numerator, c.acceptability.denominator))
            entry.ranking.push_back(bits::single(f));
    rng.shuffle(entry.ranking);
    return entry;
}

ChoiceEntry subset_rejection_list(SplitMix64& rng, AgentId owner, int opposite_size, const GenConfig& c)
{
    for (int attempt = 0; attempt < subset_rejection_attempts; ++attempt) {
        RankingEntry entry;
        entry.ranking.push_back(0);
        for (SubsetMask t = 1; t <= bits::full(opposite_size); ++t)
            if (bits::size(t) <= c.quota_max && rng.chance(c.acceptability.numerator, c.acceptability.denominator))
                entry.ranking.push_back(t);
        rng.shuffle(entry.ranking);
        const ChoiceFunction choice = induce_choice(PreferenceList(owner, opposite_size, entry.ranking));
        if (is_substitutable(choice) && is_consistent(choice))
            return entry;
    }
    throw Error(ErrorCode::RetriesExhausted,
                "no substitutable ranking found within " + std::to_string(subset_rejection_attempts) + " attempts");
}

} // namespace

Market gen_market(const GenConfig& config)
{
    validate(config);
    SplitMix64 rng(config.seed);
    const auto firms = roster('f', config.n_firms);
    const auto workers = roster('w', config.n_workers);

    ChoiceData data;
    for (int f = 0; f < config.n_firms; ++f) {
        data[firms[f]] = config.strategy == GenStrategy::QuotaPriority
            ? quota_priority_table(rng, config.n_workers, config)
            : subset_rejection_list(rng, firm(f), config.n_workers, config);
    }
    for (int w = 0; w < config.n_workers; ++w) {
        if (config.mode == Mode::ManyToOne)
            data[workers[w]] = m21_worker_list(rng, config.n_firms, config);
        else
            data[workers[w]] = config.strategy == GenStrategy::QuotaPriority
                ? quota_priority_table(rng, config.n_firms, config)
                : subset_rejection_list(rng, worker(w), config.n_firms, config);
    }
    return make_market(firms, workers, config.mode, data);
}

namespace {

std::vector<Market> corpus(const GenConfig& config, int count, bool mixed)
{
    if (count < 0)
        throw Error(ErrorCode::ConfigInvalid, "corpus size must be non-negative");
    std::vector<Market> out;
    out.reserve(count);
    for (int i = 0; i < count; ++i) {
        GenConfig sub = config;
        sub.seed = corpus_seed(config.seed, static_cast<std::uint64_t>(i));
        if (mixed)
            sub.strategy = i % 2 == 0 ? GenStrategy::QuotaPriority : GenStrategy::SubsetRejection;
        out.push_back(gen_market(sub));
    }
    return out;
}

} // namespace

std::vector<Market> gen_corpus(const GenConfig& config, int count)
{
    return corpus(config, count, false);
}

std::vector<Market> gen_mixed_corpus(const GenConfig& config, int count)
{
    return corpus(config, count, true);
}

} // namespace matchkit
