#include "repfam/kpath.hpp"

#include <algorithm>
#include <functional>
#include <string>

#include "repfam/errors.hpp"
#include "repfam/parallel.hpp"
#include "repfam/representation.hpp"

namespace repfam {

namespace {

// Calls fn(endpoint, other vertices, weight) for every simple path on
// `vertices` vertices, weights summed from the first vertex on.
void for_each_path(const WeightedGraph& g, std::size_t vertices,
                   const std::function<void(Node, const ElementSet&, double)>& fn) {
    const std::size_t n = g.size();
    ElementSet on_path(n);
    std::function<void(Node, std::size_t, double)> walk = [&](Node x, std::size_t count, double weight) {
        if (count == vertices) {
            ElementSet others = on_path;
            others.erase(x);
            fn(x, others, weight);
            return;
        }
        for (const auto& arc : g.out(x)) {
            if (!on_path.contains(arc.to)) {
                on_path.insert(arc.to);
                walk(arc.to, count + 1, weight + arc.weight);
                on_path.erase(arc.to);
            }
        }
    };
    for (Node s = 0; s < n; ++s) {
        on_path.insert(s);
        walk(s, 1, 0.0);
        on_path.erase(s);
    }
}

}  // namespace

std::string_view to_string(PathLength length) {
    return length == PathLength::kVertices ? "vertices" : "edges";
}

PathLength parse_path_length(std::string_view text) {
    if (text == "vertices") {
        return PathLength::kVertices;
    }
    if (text == "edges") {
        return PathLength::kEdges;
    }
    throw InputError("unknown path length unit '" + std::string(text) + "' (expected vertices or edges)");
}

std::size_t path_vertices(std::size_t k, PathLength length) {
    return length == PathLength::kVertices ? k : k + 1;
}

KPathResult solve_weighted_kpath(const WeightedGraph& g, std::size_t k, const KPathOptions& options) {
    if (k == 0) {
        throw InputError("path length k must be at least 1");
    }
    const std::size_t n = g.size();
    const std::size_t target = path_vertices(k, options.length);
    KPathResult result;
    result.vertices = target;
    if (options.debug_verify) {
        result.verification.emplace();
    }
    if (target > n) {
        return result;
    }
    if (target == 1) {
        result.answer = 0.0;
        return result;
    }

    RepresentativeFilter filter(options.rep);
    std::vector<WeightedFamily> current(n, WeightedFamily(n, 0, true));
    for (Node v = 0; v < n; ++v) {
        current[v].add(ElementSet(n), 0.0);
    }
    for (std::size_t p = 2; p <= target; ++p) {
        std::vector<WeightedFamily> next(n, WeightedFamily(n, p - 1, true));
        for (Node x = 0; x < n; ++x) {
            for (const auto& arc : g.out(x)) {
                const WeightedFamily& from = current[x];
                for (std::size_t idx = 0; idx < from.size(); ++idx) {
                    if (!from.member(idx).contains(arc.to)) {
                        ElementSet grown = from.member(idx);
                        grown.insert(x);
                        next[arc.to].add(std::move(grown), from.weight(idx) + arc.weight);
                    }
                }
            }
        }
        parallel_for(n, options.rep.threads, [&](std::size_t v) {
            next[v] = filter(Universe{n}, target, deduplicate(next[v], RepMode::kMin), RepMode::kMin);
        });
        if (result.verification) {
            std::vector<WeightedFamily> truth(n, WeightedFamily(n, p - 1, true));
            for_each_path(g, p, [&](Node v, const ElementSet& others, double weight) { truth[v].add(others, weight); });
            for (Node v = 0; v < n; ++v) {
                const std::string what = "paths on " + std::to_string(p) + " vertices ending at " + std::to_string(v);
                if (truth[v].empty()) {
                    result.verification->record(next[v].empty(), what + ": family should be empty");
                    continue;
                }
                try {
                    const auto check =
                        verify_representation(truth[v], next[v], target, RepMode::kMin, options.oracle_budget);
                    std::string message = what + " are not MIN-represented";
                    if (check.witness) {
                        message += " (X=" + check.witness->x.to_string() + ", Y=" + check.witness->y.to_string() + ")";
                    }
                    result.verification->record(check.represents, message);
                } catch (const InputError& e) {
                    result.verification->record(false, what + ": stored set is not a path: " + e.what());
                }
            }
        }
        for (const auto& family : next) {
            result.families += family.size();
            result.max_family = std::max(result.max_family, family.size());
        }
        current = std::move(next);
    }

    for (const auto& family : current) {
        for (std::size_t idx = 0; idx < family.size(); ++idx) {
            if (!result.answer || family.weight(idx) < *result.answer) {
                result.answer = family.weight(idx);
            }
        }
    }
    result.filter = filter.stats();
    result.separators = filter.cache().entries();
    return result;
}

std::optional<double> brute_force_kpath(const WeightedGraph& g, std::size_t k, PathLength length,
                                        std::size_t max_nodes) {
    if (k == 0) {
        throw InputError("path length k must be at least 1");
    }
    if (g.size() > max_nodes) {
        throw ResourceError("brute-force path enumeration is limited to " + std::to_string(max_nodes) +
                            " nodes, graph has " + std::to_string(g.size()));
    }
    const std::size_t target = path_vertices(k, length);
    std::optional<double> best;
    if (target > g.size()) {
        return best;
    }
    for_each_path(g, target, [&](Node, const ElementSet&, double weight) {
        if (!best || weight < *best) {
            best = weight;
        }
    });
    return best;
}

}  // namespace repfam
