#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "repfam/element_set.hpp"
#include "repfam/graph.hpp"
#include "repfam/representative.hpp"
#include "repfam/verification.hpp"

namespace repfam {

inline constexpr Node kNoParent = std::numeric_limits<Node>::max();

/// An out-tree of a digraph: every node but the root has one parent, and
/// every node is reachable from the root along parent -> child arcs.
struct OutTree {
    Node root = 0;
    ElementSet nodes;          // over the graph's node universe
    std::vector<Node> parent;  // indexed by node; kNoParent for the root and absent nodes

    std::size_t size() const noexcept { return nodes.size(); }
    bool has_children(Node x) const;
    /// Nodes with at least one child.
    std::size_t internal_count() const;
    /// Nodes without children (a lone root counts as a leaf).
    std::size_t leaf_count() const;
    /// True if a is a proper ancestor of b.
    bool is_ancestor(Node a, Node b) const;
};

/// Visits every out-tree of g rooted at r whose node set is exactly `nodes`.
/// `fn` may return false to stop; the function then returns false too.
bool for_each_out_tree_on(const Digraph& g, Node r, const ElementSet& nodes,
                          const std::function<bool(const OutTree&)>& fn);

/// Visits every out-tree of g rooted at r (the lone root included).
bool for_each_out_tree(const Digraph& g, Node r, const std::function<bool(const OutTree&)>& fn);

inline constexpr std::size_t kBruteForceTreeMaxNodes = 9;

/// All (internal, leaves) pairs realized by out-trees of g rooted at r.
/// Throws ResourceError when g has more than `max_nodes` nodes.
std::set<std::pair<std::size_t, std::size_t>> out_tree_profiles(const Digraph& g, Node r,
                                                                std::size_t max_nodes = kBruteForceTreeMaxNodes);

/// Exhaustive answer to "does g have an out-tree rooted at r with exactly k
/// internal nodes and t leaves".
bool brute_force_kt_tree(const Digraph& g, Node r, std::size_t k, std::size_t t,
                         std::size_t max_nodes = kBruteForceTreeMaxNodes);

/// Largest internal-node count over all spanning out-branchings of g, or
/// nothing when g has none.
std::optional<std::size_t> max_internal_out_branching(const Digraph& g,
                                                      std::size_t max_nodes = kBruteForceTreeMaxNodes);

/// Exhaustive k-internal out-branching: some spanning out-tree has at least k internal nodes.
bool brute_force_kiob(const Digraph& g, std::size_t k, std::size_t max_nodes = kBruteForceTreeMaxNodes);

/// A small rooted tree labelled by distinct graph nodes, stored in BFS order:
/// nodes[0] is the root and every parent precedes its children.
struct GuideTree {
    static constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

    std::vector<Node> nodes;
    std::vector<std::size_t> parent;  // index into nodes; kNone for the root
    std::vector<bool> leaf;           // no children in this tree
    ElementSet node_set;

    std::size_t size() const noexcept { return nodes.size(); }
    Node root() const { return nodes.front(); }
    std::size_t internal_count() const;
    std::size_t leaf_count() const;
    /// Index of node x, or kNone.
    std::size_t index_of(Node x) const;
    /// True if nodes[a] is a proper ancestor of nodes[b].
    bool is_ancestor(std::size_t a, std::size_t b) const;
};

/// Restrictions applied while generating guide trees. Defaults generate every
/// labelled tree.
struct GuideTreeLimits {
    std::size_t min_nodes = 3;
    std::size_t max_nodes = 8;
    std::size_t max_internal = std::numeric_limits<std::size_t>::max();
    std::size_t max_leaves = std::numeric_limits<std::size_t>::max();
    /// Bound on tree size plus the sum of edge costs.
    std::size_t max_total = std::numeric_limits<std::size_t>::max();
    /// Bound on internal nodes plus the sum of edge costs.
    std::size_t max_internal_total = std::numeric_limits<std::size_t>::max();
    /// Labels that may appear; empty means every node.
    std::optional<ElementSet> labels;
    /// Cost of a tree edge (parent, child); nullopt forbids the edge.
    std::function<std::optional<std::size_t>(Node, Node)> edge_cost;
    /// Extra per-node constraint: may this node be a leaf / internal?
    std::function<bool(Node, bool leaf)> node_ok;
};

/// Visits every guide tree rooted at v on `n` candidate labels, with u a leaf
/// when u != v. Children are appended in label order, so each labelled tree
/// appears once. `fn` may return false to stop.
void for_each_guide_tree(std::size_t n, Node v, Node u, const GuideTreeLimits& limits,
                         const std::function<bool(const GuideTree&)>& fn);

/// All guide trees on 3..4d nodes of g rooted at v with u a leaf (or u = v).
std::vector<GuideTree> enumerate_guide_trees(const Digraph& g, Node v, Node u, std::size_t d);

/// Compliance of an out-tree with a prefix w_1..w_j of a guide tree:
/// same root; ancestry among prefix nodes agrees; guide leaves in the prefix
/// are leaves of the tree; the tree avoids guide nodes outside the prefix;
/// every component left after deleting the prefix nodes has at most `cap`
/// nodes and touches at most two prefix nodes (tree edges read undirected).
/// Throws InputError if a prefix node is missing from the tree.
bool complies_prefix(const OutTree& tree, const GuideTree& guide, std::size_t prefix, std::size_t cap);

/// Full compliance with cap floor((k + t) / d).
bool complies(const OutTree& tree, const GuideTree& guide, std::size_t k, std::size_t t, std::size_t d);

struct TreeOptions {
    RepConfig rep;
    std::size_t d = 2;
    /// Compute every cell of M instead of only those the answer depends on.
    bool full_table = false;
    /// Check representation and membership of every computed family against
    /// brute-force oracles. Implies full_table.
    bool debug_verify = false;
    std::uint64_t oracle_budget = 200'000'000;
};

struct TreeResult {
    bool answer = false;
    std::size_t cells = 0;           // cells of M computed
    std::size_t max_family = 0;      // largest M cell
    std::size_t max_inner = 0;       // largest L cell
    std::size_t guide_trees = 0;     // guide trees processed
    FilterStats filter;
    std::vector<SeparatorInfo> separators;
    std::optional<VerificationSummary> verification;
};

/// Table M[v, u, i, l] over out-trees rooted at v (u a leaf, or u = v) with i
/// internal nodes and l leaves besides v and u, filled through guide trees
/// and representative filters of rank k + t. Accepts iff M[r, r, k-1, t] is
/// nonempty. Throws InputError unless k, t >= 1, d >= 2 and r is a node.
TreeResult solve_kt_tree(const Digraph& g, Node r, std::size_t k, std::size_t t, const TreeOptions& options = {});

struct KiobResult {
    bool answer = false;
    std::optional<Node> root;
    std::optional<std::size_t> leaves;  // t of the (k, t)-tree found
    std::size_t queries = 0;            // solve_kt_tree calls
};

/// k-internal out-branching: tries each root reaching every node and
/// t = 1..k, accepting on the first (k, t)-tree. An out-tree with k internal
/// nodes extends to a spanning out-branching from a root that reaches all
/// nodes, and any out-branching with at least k internal nodes contains one
/// with exactly k internal nodes and at most k leaves.
KiobResult solve_kiob(const Digraph& g, std::size_t k, const TreeOptions& options = {});

}  // namespace repfam
