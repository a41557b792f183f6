#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "repfam/element_set.hpp"
#include "repfam/graph.hpp"
#include "repfam/representative.hpp"
#include "repfam/verification.hpp"

namespace repfam {

/// Pick the fewest sets whose union has at least k elements.
struct PCInstance {
    Universe universe;
    std::vector<ElementSet> sets;
    std::size_t k = 1;
};

/// Throws InputError unless k >= 1 and every set lives in the universe.
void validate(const PCInstance& inst);

struct PCOptions {
    RepConfig rep;
    /// Check every table cell and every inner family against brute-force oracles.
    bool debug_verify = false;
    std::uint64_t oracle_budget = 200'000'000;
};

struct PCResult {
    std::optional<std::size_t> answer;  // empty when the union has fewer than k elements
    bool shortcut = false;              // some single set already has k elements
    std::size_t cells_filled = 0;       // nonempty M[i, j, l]
    std::size_t max_cell_size = 0;      // largest M[i, j, l]
    std::size_t max_inner_size = 0;     // largest A[r', j']
    FilterStats filter;
    std::vector<SeparatorInfo> separators;
    std::optional<VerificationSummary> verification;
};

/// Dynamic program over M[i, j, l]: families of j-element partial solutions
/// drawn from l of the first i sets. Elements of S_i are added one at a time
/// with a representative filter (rank k) after each addition.
PCResult solve_partial_cover(const PCInstance& inst, const PCOptions& options = {});

inline constexpr std::size_t kBruteForcePCoverMaxSets = 24;

/// Exact minimum by enumerating subfamilies. Throws ResourceError for more
/// than `max_sets` sets.
std::optional<std::size_t> brute_force_pcover(const PCInstance& inst,
                                              std::size_t max_sets = kBruteForcePCoverMaxSets);

/// k-Dominating Set as partial cover: universe V, one closed neighbourhood
/// N[v] per node. Arcs are read in both directions.
PCInstance dominating_set_reduce(const Digraph& g, std::size_t k);

}  // namespace repfam
