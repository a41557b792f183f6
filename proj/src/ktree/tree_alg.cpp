#include <algorithm>
#include <deque>
#include <limits>
#include <map>
#include <mutex>
#include <set>
#include <string>

#include "repfam/errors.hpp"
#include "repfam/ktree.hpp"
#include "repfam/parallel.hpp"
#include "repfam/representation.hpp"

namespace repfam {

namespace {

constexpr std::size_t kFar = std::numeric_limits<std::size_t>::max();

using Layer = std::vector<std::vector<WeightedFamily>>;  // [internal][leaves]

std::vector<std::vector<std::size_t>> all_distances(const Digraph& g) {
    const std::size_t n = g.size();
    std::vector<std::vector<std::size_t>> dist(n, std::vector<std::size_t>(n, kFar));
    for (Node s = 0; s < n; ++s) {
        auto& d = dist[s];
        d[s] = 0;
        std::deque<Node> queue{s};
        while (!queue.empty()) {
            const Node x = queue.front();
            queue.pop_front();
            for (Node y : g.out(x)) {
                if (d[y] == kFar) {
                    d[y] = d[x] + 1;
                    queue.push_back(y);
                }
            }
        }
    }
    return dist;
}

std::string cell_name(Node v, Node u, std::size_t i, std::size_t l) {
    return "M[" + std::to_string(v) + "," + std::to_string(u) + "," + std::to_string(i) + "," + std::to_string(l) +
           "]";
}

// Internal and leaf counts of a tree rooted at v, leaving out v and the endpoint u.
std::pair<std::size_t, std::size_t> counts_excluding(const OutTree& tree, Node u) {
    std::size_t internal = tree.internal_count();
    std::size_t leaves = tree.leaf_count();
    if (tree.has_children(tree.root)) {
        --internal;
    } else {
        --leaves;
    }
    if (u != tree.root) {
        --leaves;
    }
    return {internal, leaves};
}

// Internal and leaf counts over the tree nodes outside `skip`.
std::pair<std::size_t, std::size_t> counts_outside(const OutTree& tree, const ElementSet& skip) {
    std::size_t internal = 0;
    std::size_t leaves = 0;
    (tree.nodes - skip).for_each([&](Node x) { ++(tree.has_children(x) ? internal : leaves); });
    return {internal, leaves};
}

struct CellStats {
    std::size_t max_inner = 0;
    std::size_t guide_trees = 0;
    VerificationSummary checks;
};

class TreeSolver {
public:
    TreeSolver(const Digraph& g, Node r, std::size_t k, std::size_t t, const TreeOptions& options)
        : g_(g),
          r_(r),
          n_(g.size()),
          k_(k),
          t_(t),
          cap_((k + t) / options.d),
          options_(options),
          full_(options.full_table || options.debug_verify),
          filter_(options.rep),
          dist_(all_distances(g)) {}

    TreeResult run() {
        TreeResult result;
        if (options_.debug_verify) {
            result.verification.emplace();
            build_truth();
        }
        table_.resize(n_ * n_ * k_ * (t_ + 1));
        for (Node v = 0; v < n_; ++v) {
            for (Node u = 0; u < n_; ++u) {
                for (std::size_t i = 0; i < k_; ++i) {
                    for (std::size_t l = 0; l <= t_; ++l) {
                        table_[index(v, u, i, l)] = WeightedFamily(n_, i + l);
                    }
                }
                if (v == u || g_.has_arc(v, u)) {
                    table_[index(v, u, 0, 0)].add(ElementSet(n_));
                }
                ++result.cells;
                if (truth_) {
                    check_cell(result.verification.value(), v, u, 0, 0);
                }
            }
        }

        for (std::size_t level = 1; level + 1 <= k_ + t_; ++level) {
            struct Key {
                Node v, u;
                std::size_t i, l;
            };
            std::vector<Key> keys;
            for (std::size_t i = level > t_ ? level - t_ : 0; i < k_ && i <= level; ++i) {
                const std::size_t l = level - i;
                for (Node v = 0; v < n_; ++v) {
                    for (Node u = 0; u < n_; ++u) {
                        if (wanted(v, u, i, l)) {
                            keys.push_back({v, u, i, l});
                        }
                    }
                }
            }
            std::vector<WeightedFamily> families(keys.size());
            std::vector<CellStats> stats(keys.size());
            parallel_for(keys.size(), options_.rep.threads, [&](std::size_t idx) {
                const Key& key = keys[idx];
                try {
                    families[idx] = compute_cell(key.v, key.u, key.i, key.l, stats[idx]);
                } catch (const ResourceError& e) {
                    throw ResourceError(std::string(e.what()) + " (while computing " +
                                        cell_name(key.v, key.u, key.i, key.l) + ")");
                }
            });
            for (std::size_t idx = 0; idx < keys.size(); ++idx) {
                const Key& key = keys[idx];
                table_[index(key.v, key.u, key.i, key.l)] = std::move(families[idx]);
                ++result.cells;
                result.max_inner = std::max(result.max_inner, stats[idx].max_inner);
                result.guide_trees += stats[idx].guide_trees;
                if (result.verification) {
                    result.verification->merge(stats[idx].checks);
                    check_cell(*result.verification, key.v, key.u, key.i, key.l);
                }
            }
        }

        for (const auto& family : table_) {
            result.max_family = std::max(result.max_family, family.size());
        }
        result.answer = !cell(r_, r_, k_ - 1, t_).empty();
        result.filter = filter_.stats();
        result.separators = filter_.cache().entries();
        return result;
    }

private:
    std::size_t index(Node v, Node u, std::size_t i, std::size_t l) const {
        return ((static_cast<std::size_t>(v) * n_ + u) * k_ + i) * (t_ + 1) + l;
    }

    const WeightedFamily& cell(Node v, Node u, std::size_t i, std::size_t l) const {
        return table_[index(v, u, i, l)];
    }

    bool wanted(Node v, Node u, std::size_t i, std::size_t l) const {
        const std::size_t ends = v == u ? 1 : 2;
        if (i + l + ends > n_ || (u != v && dist_[v][u] == kFar)) {
            return false;
        }
        return full_ || i + l <= cap_ || (v == r_ && u == r_ && i + 1 == k_ && l == t_);
    }

    WeightedFamily compute_cell(Node v, Node u, std::size_t i, std::size_t l, CellStats& stats) {
        if (v == u && i == 0 && l == 1) {
            WeightedFamily out(n_, 1);
            for (Node x : g_.out(v)) {
                out.add(ElementSet(n_, {x}));
            }
            return out;
        }
        const std::size_t extra_leaf = u != v ? 1 : 0;
        const std::size_t total = i + l + 1 + extra_leaf;

        GuideTreeLimits limits;
        limits.max_nodes = std::min(4 * options_.d, total);
        limits.max_internal = i + 1;
        limits.max_leaves = l + extra_leaf;
        limits.max_total = total;
        limits.max_internal_total = i + 1;
        limits.edge_cost = [this](Node f, Node w) -> std::optional<std::size_t> {
            const std::size_t d = dist_[f][w];
            if (d == kFar || d - 1 > cap_) {
                return std::nullopt;
            }
            return d - 1;
        };

        WeightedFamily candidates(n_, i + l);
        for_each_guide_tree(n_, v, u, limits, [&](const GuideTree& guide) {
            ++stats.guide_trees;
            const WeightedFamily found = follow_guide(guide, i, l, extra_leaf, stats);
            ElementSet inner = guide.node_set;
            inner.erase(v);
            inner.erase(u);
            for (const auto& x : found.members()) {
                ElementSet member = x | inner;
                if (truth_) {
                    check_guided_member(stats.checks, guide, member, v, u, i, l);
                }
                candidates.add(std::move(member));
            }
            return true;
        });
        return filter_(Universe{n_}, k_ + t_, deduplicate(candidates, RepMode::kUnweighted), RepMode::kUnweighted);
    }

    // Families L[j][a][b] of node sets outside the guide tree that, together with
    // its first j+1 nodes, form a complying partial tree with a internal nodes and
    // b leaves outside the guide tree. Returns the last layer's target cell.
    WeightedFamily follow_guide(const GuideTree& guide, std::size_t i, std::size_t l, std::size_t extra_leaf,
                                CellStats& stats) {
        const std::size_t istar = i + 1 - guide.internal_count();
        const std::size_t lstar = l + extra_leaf - guide.leaf_count();
        const ElementSet& vc = guide.node_set;

        auto combine = [&](const WeightedFamily& pieces, const WeightedFamily& partial, WeightedFamily& out) {
            for (const auto& w : pieces.members()) {
                if (!w.is_disjoint(vc)) {
                    continue;
                }
                for (const auto& x : partial.members()) {
                    if (x.is_disjoint(w)) {
                        out.add(x | w);
                    }
                }
            }
        };

        Layer prev;
        ElementSet prefix(n_);
        for (std::size_t j = 0; j < guide.size(); ++j) {
            const Node w = guide.nodes[j];
            prefix.insert(w);
            Layer layer(istar + 1);
            bool any = false;
            for (std::size_t a = 0; a <= istar; ++a) {
                layer[a].reserve(lstar + 1);
                for (std::size_t b = 0; b <= lstar; ++b) {
                    WeightedFamily candidates(n_, a + b);
                    if (j == 0) {
                        if (a == 0 && b == 0) {
                            candidates.add(ElementSet(n_));
                        }
                    } else {
                        const Node f = guide.nodes[guide.parent[j]];
                        for (std::size_t a2 = 0; a2 <= a; ++a2) {
                            for (std::size_t b2 = 0; b2 <= b && a2 + b2 <= cap_; ++b2) {
                                combine(cell(f, w, a2, b2), prev[a - a2][b - b2], candidates);
                            }
                        }
                    }
                    if (!guide.leaf[j]) {
                        for (std::size_t a2 = 0; a2 <= a; ++a2) {
                            for (std::size_t b2 = 1; b2 <= b && a2 + b2 <= cap_; ++b2) {
                                combine(cell(w, w, a2, b2), layer[a - a2][b - b2], candidates);
                            }
                        }
                    }
                    WeightedFamily kept = a + b == 0 ? deduplicate(candidates, RepMode::kUnweighted)
                                                     : filter_(Universe{n_}, k_ + t_,
                                                               deduplicate(candidates, RepMode::kUnweighted),
                                                               RepMode::kUnweighted);
                    stats.max_inner = std::max(stats.max_inner, kept.size());
                    any = any || !kept.empty();
                    if (truth_) {
                        for (const auto& x : kept.members()) {
                            check_partial_member(stats.checks, guide, j, prefix, x, a, b);
                        }
                    }
                    layer[a].push_back(std::move(kept));
                }
            }
            if (!any) {
                return WeightedFamily(n_, istar + lstar);
            }
            prev = std::move(layer);
        }
        return std::move(prev[istar][lstar]);
    }

    void build_truth() {
        if (n_ > kBruteForceTreeMaxNodes) {
            throw ResourceError("debug verification enumerates out-trees and is limited to " +
                                std::to_string(kBruteForceTreeMaxNodes) + " nodes");
        }
        truth_.emplace();
        for (Node v = 0; v < n_; ++v) {
            for_each_out_tree(g_, v, [&](const OutTree& tree) {
                auto record = [&](Node u) {
                    const auto [i, l] = counts_excluding(tree, u);
                    if (i < k_ && l <= t_) {
                        ElementSet x = tree.nodes;
                        x.erase(v);
                        x.erase(u);
                        (*truth_)[index(v, u, i, l)].insert(std::move(x));
                    }
                };
                record(v);
                tree.nodes.for_each([&](Node u) {
                    if (u != v && !tree.has_children(u)) {
                        record(u);
                    }
                });
                return true;
            });
        }
    }

    void check_cell(VerificationSummary& summary, Node v, Node u, std::size_t i, std::size_t l) const {
        const std::size_t idx = index(v, u, i, l);
        WeightedFamily truth(n_, i + l);
        if (const auto it = truth_->find(idx); it != truth_->end()) {
            for (const auto& x : it->second) {
                truth.add(x);
            }
        }
        const std::string what = cell_name(v, u, i, l);
        try {
            const auto check =
                verify_representation(truth, table_[idx], k_ + t_, RepMode::kUnweighted, options_.oracle_budget);
            std::string message = what + " does not represent its solution family";
            if (check.witness) {
                message += " (X=" + check.witness->x.to_string() + ", Y=" + check.witness->y.to_string() + ")";
            }
            summary.record(check.represents, message);
        } catch (const InputError& e) {
            summary.record(false, what + " holds a set outside its solution family: " + e.what());
        }
    }

    void check_guided_member(VerificationSummary& summary, const GuideTree& guide, const ElementSet& x, Node v,
                             Node u, std::size_t i, std::size_t l) const {
        ElementSet nodes = x;
        nodes.insert(v);
        nodes.insert(u);
        const bool found = !for_each_out_tree_on(g_, v, nodes, [&](const OutTree& tree) {
            if (u != v && tree.has_children(u)) {
                return true;
            }
            const bool match = counts_excluding(tree, u) == std::make_pair(i, l) &&
                               complies_prefix(tree, guide, guide.size(), cap_);
            return !match;
        });
        summary.record(found, "guided set " + x.to_string() + " for " + cell_name(v, u, i, l) +
                                  " has no complying out-tree");
    }

    void check_partial_member(VerificationSummary& summary, const GuideTree& guide, std::size_t j,
                              const ElementSet& prefix, const ElementSet& x, std::size_t a, std::size_t b) const {
        const bool found = !for_each_out_tree_on(g_, guide.root(), x | prefix, [&](const OutTree& tree) {
            const bool match =
                counts_outside(tree, prefix) == std::make_pair(a, b) && complies_prefix(tree, guide, j + 1, cap_);
            return !match;
        });
        summary.record(found, "partial set " + x.to_string() + " at guide position " + std::to_string(j) +
                                  " has no complying out-tree");
    }

    const Digraph& g_;
    Node r_;
    std::size_t n_;
    std::size_t k_;
    std::size_t t_;
    std::size_t cap_;
    TreeOptions options_;
    bool full_;
    RepresentativeFilter filter_;
    std::vector<std::vector<std::size_t>> dist_;
    std::vector<WeightedFamily> table_;
    std::optional<std::map<std::size_t, std::set<ElementSet>>> truth_;
};

}  // namespace

TreeResult solve_kt_tree(const Digraph& g, Node r, std::size_t k, std::size_t t, const TreeOptions& options) {
    if (k == 0 || t == 0) {
        throw InputError("a (k, t)-tree needs k >= 1 and t >= 1");
    }
    if (options.d < 2) {
        throw InputError("guide tree parameter d must be at least 2");
    }
    if (r >= g.size()) {
        throw InputError("root " + std::to_string(r) + " is not a node of a graph with " +
                         std::to_string(g.size()) + " nodes");
    }
    return TreeSolver(g, r, k, t, options).run();
}

KiobResult solve_kiob(const Digraph& g, std::size_t k, const TreeOptions& options) {
    if (k == 0) {
        throw InputError("k-internal out-branching needs k >= 1");
    }
    KiobResult result;
    const ElementSet all = ElementSet::full(g.size());
    for (Node r = 0; r < g.size(); ++r) {
        if (g.reachable_from(r) != all) {
            continue;
        }
        for (std::size_t t = 1; t <= k && k + t <= g.size(); ++t) {
            ++result.queries;
            if (solve_kt_tree(g, r, k, t, options).answer) {
                result.answer = true;
                result.root = r;
                result.leaves = t;
                return result;
            }
        }
    }
    return result;
}

}  // namespace repfam
