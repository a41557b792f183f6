#pragma once

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "repfam/element_set.hpp"

namespace repfam {

/// Which weight dominance a representative must satisfy.
enum class RepMode { kMax, kMin, kUnweighted };

std::string_view to_string(RepMode mode);
/// Accepts "max", "min", "unweighted"; throws InputError otherwise.
RepMode parse_rep_mode(std::string_view text);

/// True if weight `candidate` dominates `target` under `mode` (ties dominate).
bool dominates(RepMode mode, double candidate, double target) noexcept;

/// A family of equal-size subsets of a universe, optionally weighted.
///
/// Duplicate members are allowed. A weighted family carries exactly one
/// weight per member.
class WeightedFamily {
public:
    WeightedFamily() = default;
    WeightedFamily(std::size_t universe_size, std::size_t set_size, bool weighted = false)
        : universe_size_(universe_size), set_size_(set_size), weighted_(weighted) {}

    std::size_t universe_size() const noexcept { return universe_size_; }
    std::size_t set_size() const noexcept { return set_size_; }
    bool weighted() const noexcept { return weighted_; }

    std::size_t size() const noexcept { return members_.size(); }
    bool empty() const noexcept { return members_.empty(); }

    const std::vector<ElementSet>& members() const noexcept { return members_; }
    const std::vector<double>& weights() const noexcept { return weights_; }
    const ElementSet& member(std::size_t i) const { return members_[i]; }
    /// 0 for unweighted families.
    double weight(std::size_t i) const { return weighted_ ? weights_[i] : 0.0; }

    /// Unweighted add; throws InputError on a weighted family or a size mismatch.
    void add(ElementSet set);
    /// Weighted add; throws InputError on an unweighted family or a size mismatch.
    void add(ElementSet set, double weight);

    void reserve(std::size_t count);
    void clear() noexcept;

    /// Appends every member of `other`, which must share universe, size and weighting.
    void append(const WeightedFamily& other);

    friend bool operator==(const WeightedFamily&, const WeightedFamily&) = default;

private:
    void check_member(const ElementSet& set) const;

    std::size_t universe_size_ = 0;
    std::size_t set_size_ = 0;
    bool weighted_ = false;
    std::vector<ElementSet> members_;
    std::vector<double> weights_;
};

/// Keeps one copy of each distinct set: the first one carrying the best
/// weight under `mode` (the first occurrence when unweighted). Survivors keep
/// their relative input order.
WeightedFamily deduplicate(const WeightedFamily& family, RepMode mode);

/// Sorts members (and their weights) into canonical set order; ties keep input order.
WeightedFamily canonicalize(const WeightedFamily& family);

}  // namespace repfam
