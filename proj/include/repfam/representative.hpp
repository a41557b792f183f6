#pragma once

#include <atomic>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string_view>
#include <tuple>
#include <vector>

#include "repfam/family.hpp"
#include "repfam/separator.hpp"

namespace repfam {

/// How separators are obtained. kVerified retries seeds until the exhaustive
/// covering check passes; kRandomized trusts a single draw.
enum class Strategy { kRandomized, kVerified };

std::string_view to_string(Strategy strategy);
/// Accepts "randomized" and "verified".
Strategy parse_strategy(std::string_view text);

struct RepConfig {
    double c = 1.447;
    Strategy strategy = Strategy::kVerified;
    std::uint64_t seed = 0;
    /// Families no larger than this are returned unchanged. Defaults to the
    /// separator's set count for the family's shape.
    std::optional<std::size_t> skip_threshold;
    std::size_t max_attempts = 64;
    std::size_t threads = 1;
    std::size_t max_separator_sets = default_max_separator_sets();
    std::uint64_t check_budget = kDefaultSeparatorCheckBudget;
};

/// Seed used for the separator of a given shape; distinct shapes draw from
/// independent streams.
std::uint64_t separator_seed(std::uint64_t seed, const SeparatorParams& params) noexcept;

struct SeparatorInfo {
    SeparatorParams params;
    std::size_t sets = 0;
    std::uint64_t seed = 0;
    std::size_t attempts = 0;
    Verified verified = Verified::kUnchecked;
};

/// Builds each separator shape once and hands out shared immutable copies.
/// Safe for concurrent use; contents depend only on the shape and the config seed.
class SeparatorCache {
public:
    explicit SeparatorCache(RepConfig config) : config_(config) {}

    std::shared_ptr<const Separator> get(const SeparatorParams& params);

    /// Every separator built so far, ordered by (n, k, p, c).
    std::vector<SeparatorInfo> entries() const;

private:
    using Key = std::tuple<std::size_t, std::size_t, std::size_t, double>;
    struct Entry {
        std::shared_ptr<const Separator> separator;
        SeparatorInfo info;
    };

    RepConfig config_;
    mutable std::mutex mutex_;
    std::map<Key, Entry> entries_;
};

/// Greedy selection over a given separator: members are visited in stable
/// weight order (descending for kMax, ascending for kMin, input order for
/// kUnweighted) and a member is kept iff some set of the separator contains
/// it and no earlier kept member. Output is in visiting order.
/// Throws InputError when the separator's n or p differ from the family's.
WeightedFamily compute_representative_with(const Separator& sep, const WeightedFamily& family, RepMode mode);

/// Builds (or takes from `cache`) a separator for (n, k, p, c) and filters `family`.
/// Throws InputError on p > k or a universe mismatch, and propagates
/// ResourceError / ConstructionError from separator construction.
WeightedFamily compute_representative(Universe universe, std::size_t k, const WeightedFamily& family, RepMode mode,
                                      const RepConfig& config, SeparatorCache* cache = nullptr);

struct FilterStats {
    std::uint64_t calls = 0;
    std::uint64_t filtered = 0;  // calls that shrank the family
    std::uint64_t input_members = 0;
    std::uint64_t output_members = 0;
    std::size_t max_input = 0;
    std::size_t max_output = 0;
    double seconds = 0.0;  // wall time spent filtering, summed over calls
};

/// Config, separator cache and counters shared by one solver run.
class RepresentativeFilter {
public:
    explicit RepresentativeFilter(RepConfig config) : config_(config), cache_(config) {}

    WeightedFamily operator()(Universe universe, std::size_t k, const WeightedFamily& family, RepMode mode);

    const RepConfig& config() const noexcept { return config_; }
    SeparatorCache& cache() noexcept { return cache_; }
    const SeparatorCache& cache() const noexcept { return cache_; }
    FilterStats stats() const;

private:
    RepConfig config_;
    SeparatorCache cache_;
    std::atomic<std::uint64_t> calls_{0};
    std::atomic<std::uint64_t> filtered_{0};
    std::atomic<std::uint64_t> input_members_{0};
    std::atomic<std::uint64_t> output_members_{0};
    std::atomic<std::size_t> max_input_{0};
    std::atomic<std::size_t> max_output_{0};
    std::atomic<std::uint64_t> nanos_{0};
};

}  // namespace repfam
