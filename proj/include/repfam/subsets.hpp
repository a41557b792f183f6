#pragma once

#include <cstddef>
#include <cstdint>
#include <type_traits>
#include <utility>
#include <vector>

#include "repfam/element_set.hpp"

namespace repfam {

/// Binomial coefficient, saturating at UINT64_MAX.
std::uint64_t binomial(std::uint64_t n, std::uint64_t r) noexcept;

/// Visits every `size`-subset of E \ excluding exactly once, in lexicographic
/// order of their sorted member lists. An out-of-range size visits nothing.
/// If `fn` returns bool, returning false stops the enumeration early.
template <class Fn>
void for_each_subset(Universe universe, std::size_t size, const ElementSet& excluding, Fn&& fn) {
    std::vector<Element> pool;
    pool.reserve(universe.n);
    for (Element e = 0; e < universe.n; ++e) {
        if (!excluding.contains(e)) {
            pool.push_back(e);
        }
    }
    if (size > pool.size()) {
        return;
    }
    std::vector<std::size_t> idx(size);
    for (std::size_t i = 0; i < size; ++i) {
        idx[i] = i;
    }
    while (true) {
        ElementSet current(universe.n);
        for (std::size_t i : idx) {
            current.insert(pool[i]);
        }
        if constexpr (std::is_same_v<std::invoke_result_t<Fn&, const ElementSet&>, bool>) {
            if (!fn(static_cast<const ElementSet&>(current))) {
                return;
            }
        } else {
            fn(static_cast<const ElementSet&>(current));
        }
        // advance to the next combination
        std::size_t i = size;
        while (i > 0 && idx[i - 1] == pool.size() - size + (i - 1)) {
            --i;
        }
        if (i == 0) {
            return;
        }
        ++idx[i - 1];
        for (std::size_t j = i; j < size; ++j) {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

template <class Fn>
void for_each_subset(Universe universe, std::size_t size, Fn&& fn) {
    for_each_subset(universe, size, ElementSet(universe.n), std::forward<Fn>(fn));
}

/// Materialized form of for_each_subset.
std::vector<ElementSet> enumerate_subsets(Universe universe, std::size_t size, const ElementSet& excluding);

}  // namespace repfam
