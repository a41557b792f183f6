#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "repfam/element_set.hpp"

namespace repfam {

/// Shape of an (n, k, p)-separator built with tradeoff parameter c.
struct SeparatorParams {
    std::size_t n = 0;
    std::size_t k = 0;
    std::size_t p = 0;
    double c = 1.0;

    friend bool operator==(const SeparatorParams&, const SeparatorParams&) = default;
};

/// Throws InputError unless c >= 1 and p <= min(k, n).
void validate(const SeparatorParams& params);

/// (ck)^k / (p^p (ck-p)^(k-p)) * (k+1) ln n, with 0^0 = 1.
double separator_size_formula(const SeparatorParams& params);

/// Number of sets a randomized build produces: 1 when p = 0, otherwise
/// ceil(separator_size_formula), at least 1.
std::size_t separator_set_count(const SeparatorParams& params);

/// p / (ck); 0 when k = 0.
double inclusion_probability(const SeparatorParams& params);

/// Cap on |F|: REPFAM_MAX_SEPARATOR when set, otherwise 2^24.
std::size_t default_max_separator_sets();

/// Deterministic Bernoulli(probability) draw keyed by (seed, set, element).
bool keyed_bernoulli(std::uint64_t seed, std::uint64_t set_index, std::uint64_t element, double probability) noexcept;

/// A family F of subsets of E together with an element -> sets incidence
/// index answering chi(S) = { i : S is a subset of F_i }.
class Separator {
public:
    using Word = std::uint64_t;

    Separator() = default;
    /// Every set must live in a universe of size params.n.
    Separator(SeparatorParams params, std::vector<ElementSet> sets);

    const SeparatorParams& params() const noexcept { return params_; }
    const std::vector<ElementSet>& sets() const noexcept { return sets_; }
    std::size_t size() const noexcept { return sets_.size(); }

    /// Indices of sets containing S, ascending. Throws InputError if |S| != p.
    std::vector<std::size_t> chi(const ElementSet& s) const;
    /// Same as chi, as a bitmask over F with mask_words() words.
    std::vector<Word> chi_mask(const ElementSet& s) const;
    std::size_t chi_size(const ElementSet& s) const;
    std::size_t mask_words() const noexcept { return words_; }

    /// Incidence mask of a single element.
    std::span<const Word> element_mask(Element e) const;

private:
    void check_query(const ElementSet& s) const;

    SeparatorParams params_;
    std::vector<ElementSet> sets_;
    std::size_t words_ = 0;
    std::vector<Word> incidence_;  // n rows of words_ words
};

struct BuildOptions {
    std::size_t threads = 1;
    std::size_t max_sets = default_max_separator_sets();
};

/// Each element joins each set independently with probability p/(ck).
/// Output depends only on (params, seed). Throws ResourceError when the set
/// count exceeds options.max_sets.
Separator build_randomized(const SeparatorParams& params, std::uint64_t seed, const BuildOptions& options = {});

struct SeparatorWitness {
    ElementSet x;
    ElementSet y;
};

struct SeparatorCheck {
    bool covers = false;
    std::optional<SeparatorWitness> witness;

    explicit operator bool() const noexcept { return covers; }
};

inline constexpr std::uint64_t kDefaultSeparatorCheckBudget = 4'000'000'000ULL;

/// Estimated word operations for an exhaustive covering check.
std::uint64_t separator_check_cost(const Separator& sep);

/// Exhaustive check that every p-set X and every disjoint Y of size
/// min(k - p, n - p) are split by some set (X inside, Y outside). Smaller Y
/// are implied. Returns the lexicographically first failing pair. Throws
/// ResourceError when separator_check_cost exceeds `budget`.
SeparatorCheck verify_separator(const Separator& sep, std::uint64_t budget = kDefaultSeparatorCheckBudget);

struct VerifiedBuild {
    Separator separator;
    std::uint64_t seed = 0;
    std::size_t attempts = 0;
};

/// Las-Vegas construction: tries seeds seed, seed+1, ... until a build passes
/// verify_separator. Throws ConstructionError after max_attempts failures.
VerifiedBuild build_verified(const SeparatorParams& params, std::uint64_t seed, std::size_t max_attempts,
                             const BuildOptions& options = {},
                             std::uint64_t check_budget = kDefaultSeparatorCheckBudget);

enum class Verified { kYes, kNo, kUnchecked };

std::string_view to_string(Verified v);

struct SeparatorStats {
    std::size_t sets = 0;               // C = |F|
    std::size_t delta_max_sampled = 0;  // max |chi(S)| over the sample
    double delta_mean_sampled = 0.0;
    double delta_expected = 0.0;  // t (p/ck)^p = (ck/(ck-p))^(k-p) (k+1) ln n
    Verified verified = Verified::kUnchecked;
};

/// Samples `samples` uniform p-subsets (seeded) and measures |chi(S)|.
SeparatorStats measure_separator(const Separator& sep, std::size_t samples, std::uint64_t seed,
                                 Verified verified = Verified::kUnchecked);

}  // namespace repfam
