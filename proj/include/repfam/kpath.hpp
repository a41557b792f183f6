#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "repfam/graph.hpp"
#include "repfam/representative.hpp"
#include "repfam/verification.hpp"

namespace repfam {

/// What the length k of a path counts.
enum class PathLength { kVertices, kEdges };

std::string_view to_string(PathLength length);
/// Accepts "vertices" and "edges".
PathLength parse_path_length(std::string_view text);

/// Vertices on a path of length k.
std::size_t path_vertices(std::size_t k, PathLength length);

struct KPathOptions {
    RepConfig rep;
    PathLength length = PathLength::kVertices;
    /// Check every stored family against the brute-force family of paths.
    bool debug_verify = false;
    std::uint64_t oracle_budget = 200'000'000;
};

struct KPathResult {
    std::optional<double> answer;  // empty when no simple path has the required length
    std::size_t vertices = 0;      // vertices on the paths searched for
    std::size_t families = 0;      // sets stored over all (p, v)
    std::size_t max_family = 0;    // largest family at one (p, v)
    FilterStats filter;
    std::vector<SeparatorInfo> separators;
    std::optional<VerificationSummary> verification;
};

/// Minimum weight of a simple path of length k. For each vertex count p and
/// endpoint v it keeps a family of (p-1)-sets (the other path vertices)
/// weighted by path weight, extends along arcs and applies a MIN
/// representative filter of rank equal to the target vertex count.
/// Throws InputError when k = 0.
KPathResult solve_weighted_kpath(const WeightedGraph& g, std::size_t k, const KPathOptions& options = {});

inline constexpr std::size_t kBruteForceKPathMaxNodes = 12;

/// Exact minimum by DFS over simple paths. Throws ResourceError above
/// `max_nodes` nodes.
std::optional<double> brute_force_kpath(const WeightedGraph& g, std::size_t k,
                                        PathLength length = PathLength::kVertices,
                                        std::size_t max_nodes = kBruteForceKPathMaxNodes);

}  // namespace repfam
