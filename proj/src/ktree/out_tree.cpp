#include <algorithm>
#include <string>

#include "repfam/errors.hpp"
#include "repfam/ktree.hpp"
#include "repfam/subsets.hpp"

namespace repfam {

bool OutTree::has_children(Node x) const {
    bool found = false;
    nodes.for_each([&](Node y) { found = found || parent[y] == x; });
    return found;
}

std::size_t OutTree::internal_count() const {
    ElementSet parents(nodes.universe_size());
    nodes.for_each([&](Node y) {
        if (parent[y] != kNoParent) {
            parents.insert(parent[y]);
        }
    });
    return parents.size();
}

std::size_t OutTree::leaf_count() const { return size() - internal_count(); }

bool OutTree::is_ancestor(Node a, Node b) const {
    if (a == b) {
        return false;
    }
    for (Node x = parent[b]; x != kNoParent; x = parent[x]) {
        if (x == a) {
            return true;
        }
    }
    return false;
}

bool for_each_out_tree_on(const Digraph& g, Node r, const ElementSet& nodes,
                          const std::function<bool(const OutTree&)>& fn) {
    if (!nodes.contains(r)) {
        throw InputError("out-tree node set must contain the root " + std::to_string(r));
    }
    std::vector<Node> others;
    nodes.for_each([&](Node x) {
        if (x != r) {
            others.push_back(x);
        }
    });
    std::vector<std::vector<Node>> choices(others.size());
    for (std::size_t i = 0; i < others.size(); ++i) {
        for (Node p : g.in(others[i])) {
            if (nodes.contains(p)) {
                choices[i].push_back(p);
            }
        }
        if (choices[i].empty()) {
            return true;
        }
    }

    OutTree tree{r, nodes, std::vector<Node>(g.size(), kNoParent)};
    // Assigning p as parent of x closes a cycle iff x is on p's (partial) parent chain.
    auto closes_cycle = [&](Node x, Node p) {
        for (Node y = p; y != kNoParent; y = tree.parent[y]) {
            if (y == x) {
                return true;
            }
        }
        return false;
    };
    std::function<bool(std::size_t)> assign = [&](std::size_t i) -> bool {
        if (i == others.size()) {
            return fn(tree);
        }
        const Node x = others[i];
        for (Node p : choices[i]) {
            if (closes_cycle(x, p)) {
                continue;
            }
            tree.parent[x] = p;
            const bool go_on = assign(i + 1);
            tree.parent[x] = kNoParent;
            if (!go_on) {
                return false;
            }
        }
        return true;
    };
    return assign(0);
}

bool for_each_out_tree(const Digraph& g, Node r, const std::function<bool(const OutTree&)>& fn) {
    const ElementSet reach = g.reachable_from(r);
    ElementSet rest = reach;
    rest.erase(r);
    const Universe universe{g.size()};
    const ElementSet outside = ElementSet::full(g.size()) - rest;
    for (std::size_t extra = 0; extra <= rest.size(); ++extra) {
        bool go_on = true;
        for_each_subset(universe, extra, outside, [&](const ElementSet& chosen) {
            ElementSet nodes = chosen;
            nodes.insert(r);
            go_on = for_each_out_tree_on(g, r, nodes, fn);
            return go_on;
        });
        if (!go_on) {
            return false;
        }
    }
    return true;
}

namespace {

void require_small(const Digraph& g, std::size_t max_nodes) {
    if (g.size() > max_nodes) {
        throw ResourceError("brute-force tree enumeration is limited to " + std::to_string(max_nodes) +
                            " nodes, graph has " + std::to_string(g.size()));
    }
}

}  // namespace

std::set<std::pair<std::size_t, std::size_t>> out_tree_profiles(const Digraph& g, Node r, std::size_t max_nodes) {
    require_small(g, max_nodes);
    if (r >= g.size()) {
        throw InputError("root " + std::to_string(r) + " is not a node");
    }
    std::set<std::pair<std::size_t, std::size_t>> profiles;
    for_each_out_tree(g, r, [&](const OutTree& tree) {
        profiles.emplace(tree.internal_count(), tree.leaf_count());
        return true;
    });
    return profiles;
}

bool brute_force_kt_tree(const Digraph& g, Node r, std::size_t k, std::size_t t, std::size_t max_nodes) {
    return out_tree_profiles(g, r, max_nodes).count({k, t}) > 0;
}

std::optional<std::size_t> max_internal_out_branching(const Digraph& g, std::size_t max_nodes) {
    require_small(g, max_nodes);
    std::optional<std::size_t> best;
    const ElementSet all = ElementSet::full(g.size());
    for (Node r = 0; r < g.size(); ++r) {
        if (g.reachable_from(r) != all) {
            continue;
        }
        for_each_out_tree_on(g, r, all, [&](const OutTree& tree) {
            best = std::max(best.value_or(0), tree.internal_count());
            return true;
        });
    }
    return best;
}

bool brute_force_kiob(const Digraph& g, std::size_t k, std::size_t max_nodes) {
    const auto best = max_internal_out_branching(g, max_nodes);
    return best && *best >= k;
}

}  // namespace repfam
