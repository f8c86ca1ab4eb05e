#ifndef MATCHKIT_GEN_HPP
#define MATCHKIT_GEN_HPP

#include "matchkit/model.hpp"

#include <cstdint>
#include <string_view>
#include <vector>

namespace matchkit {

/// SplitMix64 (Steele, Lea and Flood). The stream is part of the corpus
/// format: the same seed must produce the same markets everywhere.
///
///   state += 0x9E3779B97F4A7C15
///   z = state
///   z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
///   z = (z ^ (z >> 27)) * 0x94D049BB133111EB
///   return z ^ (z >> 31)
class SplitMix64
{
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next();

    /// Uniform in [0, bound) by rejection: draws below (2^64 - bound) mod
    /// bound are discarded, the rest reduced mod bound. bound > 0.
    std::uint64_t below(std::uint64_t bound);

    /// True with probability numerator / denominator: below(denominator) <
    /// numerator.
    bool chance(std::uint64_t numerator, std::uint64_t denominator);

    /// Fisher-Yates from the back: for i = n-1 .. 1, swap(v[i], v[below(i+1)]).
    template <typename T>
    void shuffle(std::vector<T>& v)
    {
        for (std::size_t i = v.size(); i > 1; --i)
            std::swap(v[i - 1], v[below(i)]);
    }

private:
    std::uint64_t state_;
};

/// Seed of the index-th market of a corpus:
/// SplitMix64(seed ^ (0xD1B54A32D192ED03 * (index + 1))).next().
std::uint64_t corpus_seed(std::uint64_t seed, std::uint64_t index);

enum class GenStrategy { QuotaPriority, SubsetRejection };

std::string_view to_string(GenStrategy strategy);

struct Probability
{
    std::uint64_t numerator = 1;
    std::uint64_t denominator = 1;
};

struct GenConfig
{
    std::uint64_t seed = 1;
    int n_firms = 2;
    int n_workers = 2;
    Mode mode = Mode::ManyToOne;
    int quota_min = 1;
    int quota_max = 2;
    /// QuotaPriority: chance each partner is acceptable. SubsetRejection:
    /// chance each non-empty subset joins the ranked family.
    Probability acceptability{3, 4};
    GenStrategy strategy = GenStrategy::QuotaPriority;
    EnumerationLimits limits{};
};

inline constexpr int subset_rejection_attempts = 10000;

/// Throws ConfigInvalid or RetriesExhausted.
Market gen_market(const GenConfig& config);

/// `count` markets, the i-th generated from corpus_seed(config.seed, i).
std::vector<Market> gen_corpus(const GenConfig& config, int count);

/// As gen_corpus, but even indices use QuotaPriority and odd indices
/// SubsetRejection, whatever config.strategy says.
std::vector<Market> gen_mixed_corpus(const GenConfig& config, int count);

} // namespace matchkit

#endif
