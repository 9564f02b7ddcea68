#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace linkexpr {

using NodeId = std::uint32_t;
using Label = std::uint32_t;

/// Unordered node pair, stored with u < v. Also used for edges.
struct Link {
    NodeId u = 0;
    NodeId v = 0;

    Link() = default;
    /// Normalizes orientation. Does not reject u == v; callers that need a proper link check it.
    Link(NodeId a, NodeId b) : u(a < b ? a : b), v(a < b ? b : a) {}

    friend auto operator<=>(const Link&, const Link&) = default;
};

class Permutation;

/// Immutable simple undirected graph with optional categorical node labels.
///
/// Adjacency is kept in CSR form with each neighbor list sorted ascending.
/// Duplicate edges (in either orientation) collapse on construction; self-loops
/// and out-of-range endpoints are rejected with ValidationError.
class Graph {
public:
    Graph() = default;
    Graph(std::size_t node_count, std::span<const Link> edges,
          std::optional<std::vector<Label>> labels = std::nullopt);
    Graph(std::size_t node_count, std::initializer_list<std::pair<NodeId, NodeId>> edges);

    std::size_t node_count() const noexcept { return node_count_; }
    std::size_t edge_count() const noexcept { return edges_.size(); }
    /// Edges sorted lexicographically, each with u < v.
    const std::vector<Link>& edges() const noexcept { return edges_; }

    std::span<const NodeId> neighbors(NodeId v) const;
    std::size_t degree(NodeId v) const { return neighbors(v).size(); }
    bool has_edge(NodeId a, NodeId b) const;

    bool has_labels() const noexcept { return labels_.has_value(); }
    /// Label of v; 0 for every node when the graph carries no labels.
    Label label(NodeId v) const;
    const std::optional<std::vector<Label>>& labels() const noexcept { return labels_; }

    /// Subgraph induced on `nodes` (sorted, unique). Node i of the result is nodes[i].
    Graph induced_subgraph(std::span<const NodeId> nodes) const;
    Graph with_labels(std::vector<Label> labels) const;

    friend bool operator==(const Graph& a, const Graph& b) {
        return a.node_count_ == b.node_count_ && a.edges_ == b.edges_ && a.labels_ == b.labels_;
    }

private:
    void check_node(NodeId v) const;

    std::size_t node_count_ = 0;
    std::vector<Link> edges_;
    std::optional<std::vector<Label>> labels_;
    std::vector<std::size_t> offsets_{0};
    std::vector<NodeId> targets_;
};

/// Parses the edge-list text format:
///
///     # comment
///     n=4
///     0 1
///     1 2
///     labels: 0 0 1 1
///
/// Errors carry the offending 1-based line number.
Graph load_graph(std::string_view text);
Graph load_graph_file(const std::string& path);
std::string to_edge_list_text(const Graph& g);

/// Bijection on {0..n-1}; mapping[i] is the new index of node i.
class Permutation {
public:
    explicit Permutation(std::vector<NodeId> mapping);
    static Permutation identity(std::size_t n);

    std::size_t size() const noexcept { return mapping_.size(); }
    NodeId operator()(NodeId v) const { return mapping_.at(v); }
    Link operator()(Link l) const { return Link(mapping_.at(l.u), mapping_.at(l.v)); }
    const std::vector<NodeId>& mapping() const noexcept { return mapping_; }
    Permutation inverse() const;
    /// (this * other)(v) = this(other(v)).
    Permutation compose(const Permutation& other) const;
    bool is_identity() const;

    friend bool operator==(const Permutation&, const Permutation&) = default;
    friend auto operator<=>(const Permutation&, const Permutation&) = default;

private:
    std::vector<NodeId> mapping_;
};

/// Edge {a,b} becomes {p(a),p(b)}; the label of node i moves to p(i).
Graph apply_permutation(const Graph& g, const Permutation& p);

/// True iff p maps the edge set onto itself and preserves labels.
bool is_automorphism(const Graph& g, const Permutation& p);

/// Hop counts from a source node. Unreachable nodes have no distance; there is
/// no finite stand-in value for them.
class DistanceVector {
public:
    static constexpr std::uint32_t kUnreachable = std::numeric_limits<std::uint32_t>::max();

    DistanceVector(NodeId source, std::vector<std::uint32_t> raw);

    NodeId source() const noexcept { return source_; }
    std::size_t size() const noexcept { return dist_.size(); }
    bool reachable(NodeId v) const { return dist_.at(v) != kUnreachable; }
    std::optional<std::uint32_t> at(NodeId v) const;
    /// Distance to a reachable node; throws for unreachable ones.
    std::uint32_t hops(NodeId v) const;
    /// Raw values with kUnreachable sentinels, for serialization and comparison.
    const std::vector<std::uint32_t>& raw() const noexcept { return dist_; }

    friend bool operator==(const DistanceVector&, const DistanceVector&) = default;

private:
    NodeId source_;
    std::vector<std::uint32_t> dist_;
};

DistanceVector bfs_distances(const Graph& g, NodeId source);

/// Nodes at shortest-path distance exactly m from v, ascending.
std::vector<NodeId> exact_ring(const Graph& g, NodeId v, std::uint32_t m);

/// N^m(u) ∪ N^m(v) or, when cumulative, the union over all radii 0..m. Ascending.
std::vector<NodeId> joint_neighborhood(const Graph& g, NodeId u, NodeId v, std::uint32_t m,
                                       bool cumulative);

}  // namespace linkexpr
