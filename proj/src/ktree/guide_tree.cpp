#include <algorithm>
#include <numeric>
#include <string>

#include "repfam/errors.hpp"
#include "repfam/ktree.hpp"
#include "repfam/subsets.hpp"

namespace repfam {

std::size_t GuideTree::internal_count() const { return size() - leaf_count(); }

std::size_t GuideTree::leaf_count() const {
    return static_cast<std::size_t>(std::count(leaf.begin(), leaf.end(), true));
}

std::size_t GuideTree::index_of(Node x) const {
    const auto it = std::find(nodes.begin(), nodes.end(), x);
    return it == nodes.end() ? kNone : static_cast<std::size_t>(it - nodes.begin());
}

bool GuideTree::is_ancestor(std::size_t a, std::size_t b) const {
    if (a == b) {
        return false;
    }
    for (std::size_t x = parent[b]; x != kNone; x = parent[x]) {
        if (x == a) {
            return true;
        }
    }
    return false;
}

namespace {

class GuideTreeGenerator {
public:
    GuideTreeGenerator(std::size_t n, Node v, Node u, const GuideTreeLimits& limits,
                       const std::function<bool(const GuideTree&)>& fn)
        : n_(n), v_(v), u_(u), limits_(limits), fn_(fn), used_(n) {
        labels_ = limits.labels.value_or(ElementSet::full(n));
    }

    void run() {
        if (!labels_.contains(v_) || (u_ != v_ && !labels_.contains(u_))) {
            return;
        }
        nodes_.push_back(v_);
        parent_.push_back(GuideTree::kNone);
        leaf_.push_back(false);
        used_.insert(v_);
        expand(0);
    }

private:
    void emit() {
        GuideTree tree;
        tree.nodes = nodes_;
        tree.parent = parent_;
        tree.leaf = leaf_;
        tree.node_set = used_;
        stop_ = !fn_(tree);
    }

    bool node_ok(Node x, bool leaf) const { return !limits_.node_ok || limits_.node_ok(x, leaf); }

    void expand(std::size_t e) {
        if (stop_) {
            return;
        }
        if (u_ != v_ && !used_.contains(u_) && nodes_.size() >= limits_.max_nodes) {
            return;
        }
        if (e == nodes_.size()) {
            if (nodes_.size() >= limits_.min_nodes && (u_ == v_ || used_.contains(u_))) {
                emit();
            }
            return;
        }
        const Node x = nodes_[e];

        // x as a leaf
        if (e > 0 && leaves_ + 1 <= limits_.max_leaves && node_ok(x, true)) {
            leaf_[e] = true;
            ++leaves_;
            expand(e + 1);
            --leaves_;
            leaf_[e] = false;
        }
        if (x == u_ && u_ != v_) {
            return;
        }
        if (internal_ + 1 > limits_.max_internal || !node_ok(x, false)) {
            return;
        }

        const std::size_t room = std::min(limits_.max_nodes, n_) - nodes_.size();
        const ElementSet blocked = ElementSet::full(n_) - (labels_ - used_);
        ++internal_;
        for (std::size_t count = 1; count <= room && !stop_; ++count) {
            for_each_subset(Universe{n_}, count, blocked, [&](const ElementSet& children) {
                std::size_t extra = 0;
                bool allowed = true;
                children.for_each([&](Node c) {
                    if (!allowed) {
                        return;
                    }
                    if (limits_.edge_cost) {
                        const auto edge = limits_.edge_cost(x, c);
                        if (!edge) {
                            allowed = false;
                            return;
                        }
                        extra += *edge;
                    }
                });
                if (!allowed) {
                    return true;
                }
                const std::size_t new_cost = cost_ + extra;
                if (nodes_.size() + count + new_cost > limits_.max_total ||
                    internal_ + new_cost > limits_.max_internal_total) {
                    return true;
                }
                const std::size_t parent_index = e;
                const std::size_t before = nodes_.size();
                children.for_each([&](Node c) {
                    nodes_.push_back(c);
                    parent_.push_back(parent_index);
                    leaf_.push_back(false);
                });
                used_ |= children;
                const std::size_t saved_cost = cost_;
                cost_ = new_cost;
                expand(e + 1);
                cost_ = saved_cost;
                used_ -= children;
                nodes_.resize(before);
                parent_.resize(before);
                leaf_.resize(before);
                return !stop_;
            });
        }
        --internal_;
    }

    std::size_t n_;
    Node v_;
    Node u_;
    const GuideTreeLimits& limits_;
    const std::function<bool(const GuideTree&)>& fn_;
    ElementSet labels_;
    ElementSet used_;
    std::vector<Node> nodes_;
    std::vector<std::size_t> parent_;
    std::vector<bool> leaf_;
    std::size_t internal_ = 0;
    std::size_t leaves_ = 0;
    std::size_t cost_ = 0;
    bool stop_ = false;
};

}  // namespace

void for_each_guide_tree(std::size_t n, Node v, Node u, const GuideTreeLimits& limits,
                         const std::function<bool(const GuideTree&)>& fn) {
    if (v >= n || u >= n) {
        throw InputError("guide tree endpoints must be nodes below " + std::to_string(n));
    }
    GuideTreeGenerator(n, v, u, limits, fn).run();
}

std::vector<GuideTree> enumerate_guide_trees(const Digraph& g, Node v, Node u, std::size_t d) {
    if (d < 2) {
        throw InputError("guide tree parameter d must be at least 2");
    }
    GuideTreeLimits limits;
    limits.max_nodes = 4 * d;
    std::vector<GuideTree> out;
    for_each_guide_tree(g.size(), v, u, limits, [&](const GuideTree& tree) {
        out.push_back(tree);
        return true;
    });
    return out;
}

bool complies_prefix(const OutTree& tree, const GuideTree& guide, std::size_t prefix, std::size_t cap) {
    prefix = std::min(prefix, guide.size());
    const std::size_t n = tree.nodes.universe_size();
    ElementSet in_prefix(n);
    for (std::size_t j = 0; j < prefix; ++j) {
        const Node w = guide.nodes[j];
        if (w >= n || !tree.nodes.contains(w)) {
            throw InputError("guide node " + std::to_string(w) + " is not in the out-tree");
        }
        in_prefix.insert(w);
    }
    if (prefix == 0 || tree.root != guide.root()) {
        return false;
    }
    for (std::size_t j = prefix; j < guide.size(); ++j) {
        if (tree.nodes.contains(guide.nodes[j])) {
            return false;
        }
    }
    for (std::size_t a = 0; a < prefix; ++a) {
        for (std::size_t b = 0; b < prefix; ++b) {
            if (a != b && guide.is_ancestor(a, b) != tree.is_ancestor(guide.nodes[a], guide.nodes[b])) {
                return false;
            }
        }
        if (guide.leaf[a] && tree.has_children(guide.nodes[a])) {
            return false;
        }
    }

    // Components of the tree minus the prefix nodes, joined along tree edges.
    std::vector<Node> comp(n);
    std::iota(comp.begin(), comp.end(), Node{0});
    auto find = [&](Node x) {
        while (comp[x] != x) {
            comp[x] = comp[comp[x]];
            x = comp[x];
        }
        return x;
    };
    const ElementSet rest = tree.nodes - in_prefix;
    rest.for_each([&](Node x) {
        const Node p = tree.parent[x];
        if (p != kNoParent && rest.contains(p)) {
            comp[find(x)] = find(p);
        }
    });
    std::vector<std::size_t> size(n, 0);
    std::vector<ElementSet> touches(n, ElementSet(n));
    rest.for_each([&](Node x) {
        const Node root = find(x);
        ++size[root];
        const Node p = tree.parent[x];
        if (p != kNoParent && in_prefix.contains(p)) {
            touches[root].insert(p);
        }
    });
    in_prefix.for_each([&](Node y) {
        const Node p = tree.parent[y];
        if (p != kNoParent && rest.contains(p)) {
            touches[find(p)].insert(y);
        }
    });
    bool ok = true;
    rest.for_each([&](Node x) {
        if (find(x) == x && (size[x] > cap || touches[x].size() > 2)) {
            ok = false;
        }
    });
    return ok;
}

bool complies(const OutTree& tree, const GuideTree& guide, std::size_t k, std::size_t t, std::size_t d) {
    if (d == 0) {
        throw InputError("guide tree parameter d must be positive");
    }
    return complies_prefix(tree, guide, guide.size(), (k + t) / d);
}

}  // namespace repfam
