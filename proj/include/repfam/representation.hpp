#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>

#include "repfam/element_set.hpp"
#include "repfam/family.hpp"

namespace repfam {

/// A pair (X, Y) with X in the family, Y disjoint from X, |Y| <= k - p, and
/// no member of the subfamily avoiding Y with a dominating weight.
struct RepresentationWitness {
    ElementSet x;
    ElementSet y;
};

struct RepresentationCheck {
    bool represents = false;
    std::optional<RepresentationWitness> witness;

    explicit operator bool() const noexcept { return represents; }
};

inline constexpr std::uint64_t kDefaultOracleBudget = 2'000'000'000ULL;

/// Brute-force check that `subfamily` mode-represents `family` in U_{n,k}.
///
/// Every Y with |Y| <= k - p is tried (sizes 0 through k - p); for uniform
/// matroids checking only |Y| = k - p would be equivalent whenever n >= k.
/// Throws InputError if `subfamily` is not a sub-multiset of `family` (as
/// (set, weight) pairs) or p > k, and ResourceError when the work estimate
/// exceeds `budget`.
RepresentationCheck verify_representation(const WeightedFamily& family, const WeightedFamily& subfamily,
                                          std::size_t k, RepMode mode,
                                          std::uint64_t budget = kDefaultOracleBudget);

}  // namespace repfam
