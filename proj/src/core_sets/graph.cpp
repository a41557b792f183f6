#include "repfam/graph.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "repfam/errors.hpp"
#include "repfam/family_io.hpp"

namespace repfam {

namespace {

bool next_tokens(std::istream& in, std::size_t& line_no, std::vector<std::string>& tokens) {
    std::string text;
    while (std::getline(in, text)) {
        ++line_no;
        const auto first = text.find_first_not_of(" \t\r");
        if (first == std::string::npos || text[first] == '#') {
            continue;
        }
        tokens.clear();
        std::istringstream stream(text);
        std::string token;
        while (stream >> token) {
            tokens.push_back(token);
        }
        return true;
    }
    return false;
}

template <class T>
T parse_number(const std::string& token, std::size_t line, const char* what) {
    T value{};
    const auto* end = token.data() + token.size();
    auto [ptr, ec] = std::from_chars(token.data(), end, value);
    if (ec != std::errc() || ptr != end) {
        throw ParseError(line, std::string("expected ") + what + ", got '" + token + "'");
    }
    return value;
}

}  // namespace

GraphFile read_graph(std::istream& in) {
    std::size_t line_no = 0;
    std::vector<std::string> tokens;
    if (!next_tokens(in, line_no, tokens)) {
        throw ParseError(line_no == 0 ? 1 : line_no, "missing header 'p <nodes> <edges>'");
    }
    if (tokens.size() != 3 || tokens[0] != "p") {
        throw ParseError(line_no, "header must read 'p <nodes> <edges>'");
    }
    GraphFile file;
    file.nodes = parse_number<std::size_t>(tokens[1], line_no, "a node count");
    const auto edges = parse_number<std::size_t>(tokens[2], line_no, "an edge count");
    std::optional<bool> weighted;
    while (next_tokens(in, line_no, tokens)) {
        if (file.edges.size() == edges) {
            throw ParseError(line_no, "more edge lines than the declared " + std::to_string(edges));
        }
        if (tokens.size() != 2 && tokens.size() != 3) {
            throw ParseError(line_no, "edge line must read 'u v' or 'u v w'");
        }
        const bool has_weight = tokens.size() == 3;
        if (weighted && *weighted != has_weight) {
            throw ParseError(line_no, "either every edge carries a weight or none does");
        }
        weighted = has_weight;
        EdgeRecord edge;
        const auto u = parse_number<std::size_t>(tokens[0], line_no, "a node id");
        const auto v = parse_number<std::size_t>(tokens[1], line_no, "a node id");
        if (u >= file.nodes || v >= file.nodes) {
            throw ParseError(line_no, "node id is not below " + std::to_string(file.nodes));
        }
        edge.u = static_cast<Node>(u);
        edge.v = static_cast<Node>(v);
        if (has_weight) {
            edge.weight = parse_number<double>(tokens[2], line_no, "a decimal weight");
            if (!std::isfinite(*edge.weight)) {
                throw ParseError(line_no, "edge weight must be finite");
            }
        }
        file.edges.push_back(edge);
    }
    if (file.edges.size() != edges) {
        throw ParseError(line_no + 1, "expected " + std::to_string(edges) + " edge lines, found " +
                                          std::to_string(file.edges.size()));
    }
    file.weighted = weighted.value_or(false);
    return file;
}

GraphFile read_graph_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw InputError("cannot open '" + path.string() + "'");
    }
    return read_graph(in);
}

void write_graph(std::ostream& out, const GraphFile& file) {
    out << "p " << file.nodes << ' ' << file.edges.size() << '\n';
    for (const auto& e : file.edges) {
        out << e.u << ' ' << e.v;
        if (e.weight) {
            out << ' ' << format_weight(*e.weight);
        }
        out << '\n';
    }
}

Digraph::Digraph(std::size_t nodes) : out_(nodes), in_(nodes), out_sets_(nodes, ElementSet(nodes)) {}

Digraph::Digraph(std::size_t nodes, const std::vector<std::pair<Node, Node>>& arcs) : Digraph(nodes) {
    for (auto [u, v] : arcs) {
        add_arc(u, v);
    }
    for (auto& list : out_) {
        std::sort(list.begin(), list.end());
    }
    for (auto& list : in_) {
        std::sort(list.begin(), list.end());
    }
}

Digraph Digraph::undirected(std::size_t nodes, const std::vector<std::pair<Node, Node>>& edges) {
    std::vector<std::pair<Node, Node>> arcs;
    arcs.reserve(2 * edges.size());
    for (auto [u, v] : edges) {
        arcs.emplace_back(u, v);
        arcs.emplace_back(v, u);
    }
    return Digraph(nodes, arcs);
}

Digraph Digraph::from_file(const GraphFile& file, bool undirected) {
    std::vector<std::pair<Node, Node>> arcs;
    arcs.reserve(file.edges.size());
    for (const auto& e : file.edges) {
        arcs.emplace_back(e.u, e.v);
    }
    return undirected ? Digraph::undirected(file.nodes, arcs) : Digraph(file.nodes, arcs);
}

void Digraph::add_arc(Node u, Node v) {
    if (u >= size() || v >= size()) {
        throw InputError("arc (" + std::to_string(u) + ", " + std::to_string(v) + ") leaves the node range");
    }
    if (u == v || out_sets_[u].contains(v)) {
        return;
    }
    out_sets_[u].insert(v);
    out_[u].push_back(v);
    in_[v].push_back(u);
    ++arcs_;
}

std::vector<std::pair<Node, Node>> Digraph::arcs() const {
    std::vector<std::pair<Node, Node>> out;
    out.reserve(arcs_);
    for (Node u = 0; u < size(); ++u) {
        for (Node v : out_[u]) {
            out.emplace_back(u, v);
        }
    }
    return out;
}

ElementSet Digraph::reachable_from(Node r) const {
    ElementSet seen(size());
    std::vector<Node> stack{r};
    seen.insert(r);
    while (!stack.empty()) {
        const Node u = stack.back();
        stack.pop_back();
        for (Node v : out_[u]) {
            if (!seen.contains(v)) {
                seen.insert(v);
                stack.push_back(v);
            }
        }
    }
    return seen;
}

WeightedGraph::WeightedGraph(std::size_t nodes, bool directed) : directed_(directed), out_(nodes) {}

void WeightedGraph::add_arc(Node u, Node v, double weight) {
    auto& list = out_[u];
    auto it = std::lower_bound(list.begin(), list.end(), v,
                               [](const WeightedArc& a, Node target) { return a.to < target; });
    if (it != list.end() && it->to == v) {
        it->weight = std::min(it->weight, weight);
        return;
    }
    list.insert(it, WeightedArc{v, weight});
}

void WeightedGraph::add_edge(Node u, Node v, double weight) {
    if (u >= size() || v >= size()) {
        throw InputError("edge (" + std::to_string(u) + ", " + std::to_string(v) + ") leaves the node range");
    }
    if (!std::isfinite(weight)) {
        throw InputError("edge weight must be finite");
    }
    if (u == v) {
        return;
    }
    add_arc(u, v, weight);
    if (!directed_) {
        add_arc(v, u, weight);
    }
}

WeightedGraph WeightedGraph::from_file(const GraphFile& file, bool directed) {
    WeightedGraph g(file.nodes, directed);
    for (const auto& e : file.edges) {
        g.add_edge(e.u, e.v, e.weight.value_or(1.0));
    }
    return g;
}

}  // namespace repfam
