#pragma once

// Graph text format:
//
//   # comment
//   p <nodes> <edges>
//   u v [w]        (<edges> lines)
//
// Node ids are 0-based. Either every edge line carries a weight or none does.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <vector>

#include "repfam/element_set.hpp"

namespace repfam {

using Node = std::uint32_t;

struct EdgeRecord {
    Node u = 0;
    Node v = 0;
    std::optional<double> weight;
};

struct GraphFile {
    std::size_t nodes = 0;
    std::vector<EdgeRecord> edges;
    bool weighted = false;
};

/// Throws ParseError naming the offending line.
GraphFile read_graph(std::istream& in);
GraphFile read_graph_file(const std::filesystem::path& path);
void write_graph(std::ostream& out, const GraphFile& file);

/// Directed graph with sorted, duplicate-free adjacency lists. Self-loops are
/// dropped: no out-tree or simple path can use them.
class Digraph {
public:
    Digraph() = default;
    explicit Digraph(std::size_t nodes);
    Digraph(std::size_t nodes, const std::vector<std::pair<Node, Node>>& arcs);

    /// Each undirected edge {u, v} becomes the arcs u -> v and v -> u.
    static Digraph undirected(std::size_t nodes, const std::vector<std::pair<Node, Node>>& edges);
    static Digraph from_file(const GraphFile& file, bool undirected = false);

    std::size_t size() const noexcept { return out_.size(); }
    std::size_t arc_count() const noexcept { return arcs_; }
    const std::vector<Node>& out(Node v) const { return out_[v]; }
    const std::vector<Node>& in(Node v) const { return in_[v]; }
    /// Out-neighbourhood as a set over the node universe.
    const ElementSet& out_set(Node v) const { return out_sets_[v]; }
    bool has_arc(Node u, Node v) const { return out_sets_[u].contains(v); }

    /// All arcs (u, v) in lexicographic order.
    std::vector<std::pair<Node, Node>> arcs() const;

    /// Nodes reachable from r, r included.
    ElementSet reachable_from(Node r) const;

private:
    void add_arc(Node u, Node v);

    std::vector<std::vector<Node>> out_;
    std::vector<std::vector<Node>> in_;
    std::vector<ElementSet> out_sets_;
    std::size_t arcs_ = 0;
};

struct WeightedArc {
    Node to = 0;
    double weight = 0.0;
};

/// Graph with real arc weights. Undirected edges become two arcs; among
/// parallel arcs the lightest is kept. Self-loops are dropped.
class WeightedGraph {
public:
    WeightedGraph() = default;
    WeightedGraph(std::size_t nodes, bool directed);

    /// Throws InputError on a non-finite weight or an out-of-range node.
    void add_edge(Node u, Node v, double weight);

    /// Edges without a weight get weight 1.
    static WeightedGraph from_file(const GraphFile& file, bool directed);

    std::size_t size() const noexcept { return out_.size(); }
    bool directed() const noexcept { return directed_; }
    /// Arcs leaving v, sorted by target.
    const std::vector<WeightedArc>& out(Node v) const { return out_[v]; }

private:
    void add_arc(Node u, Node v, double weight);

    bool directed_ = true;
    std::vector<std::vector<WeightedArc>> out_;
};

}  // namespace repfam
