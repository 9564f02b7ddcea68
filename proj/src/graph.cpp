#include "linkexpr/graph.hpp"

#include "linkexpr/error.hpp"

#include <algorithm>
#include <charconv>
#include <deque>
#include <fstream>
#include <sstream>

namespace linkexpr {

Graph::Graph(std::size_t node_count, std::span<const Link> edges,
             std::optional<std::vector<Label>> labels)
    : node_count_(node_count), labels_(std::move(labels)) {
    if (node_count_ > std::numeric_limits<NodeId>::max()) {
        throw ValidationError("graph: node count too large");
    }
    if (labels_ && labels_->size() != node_count_) {
        throw ValidationError("graph: label count " + std::to_string(labels_->size()) +
                              " does not match node count " + std::to_string(node_count_));
    }
    edges_.reserve(edges.size());
    for (const Link& e : edges) {
        if (e.u == e.v) throw ValidationError("graph: self-loop at node " + std::to_string(e.u));
        if (e.v >= node_count_) {
            throw ValidationError("graph: endpoint " + std::to_string(e.v) + " out of range (n=" +
                                  std::to_string(node_count_) + ")");
        }
        edges_.emplace_back(e.u, e.v);
    }
    std::sort(edges_.begin(), edges_.end());
    edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());

    std::vector<std::size_t> degree(node_count_, 0);
    for (const Link& e : edges_) {
        ++degree[e.u];
        ++degree[e.v];
    }
    offsets_.assign(node_count_ + 1, 0);
    for (std::size_t i = 0; i < node_count_; ++i) offsets_[i + 1] = offsets_[i] + degree[i];
    targets_.resize(offsets_.back());
    std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
    for (const Link& e : edges_) {
        targets_[fill[e.u]++] = e.v;
        targets_[fill[e.v]++] = e.u;
    }
    for (std::size_t i = 0; i < node_count_; ++i) {
        std::sort(targets_.begin() + static_cast<std::ptrdiff_t>(offsets_[i]),
                  targets_.begin() + static_cast<std::ptrdiff_t>(offsets_[i + 1]));
    }
}

Graph::Graph(std::size_t node_count, std::initializer_list<std::pair<NodeId, NodeId>> edges)
    : Graph(node_count, [&] {
          std::vector<Link> links;
          for (auto [a, b] : edges) {
              // Keep self-loops visible to the validating constructor.
              Link l;
              l.u = std::min(a, b);
              l.v = std::max(a, b);
              links.push_back(l);
          }
          return links;
      }()) {}

void Graph::check_node(NodeId v) const {
    if (v >= node_count_) {
        throw ValidationError("node " + std::to_string(v) + " out of range (n=" +
                              std::to_string(node_count_) + ")");
    }
}

std::span<const NodeId> Graph::neighbors(NodeId v) const {
    check_node(v);
    return {targets_.data() + offsets_[v], offsets_[v + 1] - offsets_[v]};
}

bool Graph::has_edge(NodeId a, NodeId b) const {
    auto nb = neighbors(a);
    check_node(b);
    return std::binary_search(nb.begin(), nb.end(), b);
}

Label Graph::label(NodeId v) const {
    check_node(v);
    return labels_ ? (*labels_)[v] : Label{0};
}

Graph Graph::induced_subgraph(std::span<const NodeId> nodes) const {
    std::vector<NodeId> local(node_count_, std::numeric_limits<NodeId>::max());
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        check_node(nodes[i]);
        if (i > 0 && nodes[i] <= nodes[i - 1]) {
            throw ValidationError("induced_subgraph: node list must be sorted and unique");
        }
        local[nodes[i]] = static_cast<NodeId>(i);
    }
    std::vector<Link> sub_edges;
    for (const Link& e : edges_) {
        if (local[e.u] != std::numeric_limits<NodeId>::max() &&
            local[e.v] != std::numeric_limits<NodeId>::max()) {
            sub_edges.emplace_back(local[e.u], local[e.v]);
        }
    }
    std::optional<std::vector<Label>> sub_labels;
    if (labels_) {
        sub_labels.emplace();
        for (NodeId v : nodes) sub_labels->push_back((*labels_)[v]);
    }
    return Graph(nodes.size(), sub_edges, std::move(sub_labels));
}

Graph Graph::with_labels(std::vector<Label> labels) const {
    return Graph(node_count_, edges_, std::move(labels));
}

namespace {

std::string_view trim(std::string_view s) {
    const auto is_space = [](char c) { return c == ' ' || c == '\t' || c == '\r'; };
    while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
    while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> split_ws(std::string_view s) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
        std::size_t j = i;
        while (j < s.size() && s[j] != ' ' && s[j] != '\t') ++j;
        if (j > i) out.push_back(s.substr(i, j - i));
        i = j;
    }
    return out;
}

std::uint64_t parse_uint(std::string_view token, std::size_t line, const char* what) {
    std::uint64_t value = 0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc() || ptr != token.data() + token.size()) {
        throw ParseError(line, std::string("malformed ") + what + " '" + std::string(token) + "'");
    }
    return value;
}

}  // namespace

Graph load_graph(std::string_view text) {
    std::optional<std::uint64_t> n;
    std::vector<Link> edges;
    std::optional<std::vector<Label>> labels;

    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = trim(text.substr(pos, end - pos));
        pos = end + 1;
        ++line_no;
        if (line.empty() || line.front() == '#') continue;

        if (!n) {
            if (line.substr(0, 2) != "n=") throw ParseError(line_no, "expected header 'n=<int>'");
            n = parse_uint(trim(line.substr(2)), line_no, "node count");
            continue;
        }
        if (labels) throw ParseError(line_no, "content after labels block");
        if (line.substr(0, 7) == "labels:") {
            auto tokens = split_ws(line.substr(7));
            labels.emplace();
            for (auto t : tokens) {
                auto value = parse_uint(t, line_no, "label");
                if (value > std::numeric_limits<Label>::max()) throw ParseError(line_no, "label too large");
                labels->push_back(static_cast<Label>(value));
            }
            if (labels->size() != *n) {
                throw ParseError(line_no, "expected " + std::to_string(*n) + " labels, got " +
                                              std::to_string(labels->size()));
            }
            continue;
        }
        auto tokens = split_ws(line);
        if (tokens.size() != 2) throw ParseError(line_no, "expected edge 'u v'");
        auto a = parse_uint(tokens[0], line_no, "endpoint");
        auto b = parse_uint(tokens[1], line_no, "endpoint");
        if (a >= *n || b >= *n) {
            throw ParseError(line_no, "endpoint out of range (n=" + std::to_string(*n) + ")");
        }
        if (a == b) throw ParseError(line_no, "self-loop");
        edges.emplace_back(static_cast<NodeId>(a), static_cast<NodeId>(b));
    }
    if (!n) throw ParseError(line_no, "missing header 'n=<int>'");
    return Graph(*n, edges, std::move(labels));
}

Graph load_graph_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return load_graph(buffer.str());
}

std::string to_edge_list_text(const Graph& g) {
    std::ostringstream out;
    out << "n=" << g.node_count() << '\n';
    for (const Link& e : g.edges()) out << e.u << ' ' << e.v << '\n';
    if (g.has_labels()) {
        out << "labels:";
        for (Label l : *g.labels()) out << ' ' << l;
        out << '\n';
    }
    return out.str();
}

Permutation::Permutation(std::vector<NodeId> mapping) : mapping_(std::move(mapping)) {
    std::vector<bool> seen(mapping_.size(), false);
    for (NodeId x : mapping_) {
        if (x >= mapping_.size() || seen[x]) throw ValidationError("permutation: mapping is not a bijection");
        seen[x] = true;
    }
}

Permutation Permutation::identity(std::size_t n) {
    std::vector<NodeId> m(n);
    for (std::size_t i = 0; i < n; ++i) m[i] = static_cast<NodeId>(i);
    return Permutation(std::move(m));
}

Permutation Permutation::inverse() const {
    std::vector<NodeId> inv(mapping_.size());
    for (std::size_t i = 0; i < mapping_.size(); ++i) inv[mapping_[i]] = static_cast<NodeId>(i);
    return Permutation(std::move(inv));
}

Permutation Permutation::compose(const Permutation& other) const {
    if (other.size() != size()) throw ValidationError("permutation: size mismatch in compose");
    std::vector<NodeId> m(size());
    for (std::size_t i = 0; i < size(); ++i) m[i] = mapping_[other.mapping_[i]];
    return Permutation(std::move(m));
}

bool Permutation::is_identity() const {
    for (std::size_t i = 0; i < mapping_.size(); ++i) {
        if (mapping_[i] != i) return false;
    }
    return true;
}

Graph apply_permutation(const Graph& g, const Permutation& p) {
    if (p.size() != g.node_count()) {
        throw ValidationError("apply_permutation: permutation size " + std::to_string(p.size()) +
                              " != node count " + std::to_string(g.node_count()));
    }
    std::vector<Link> edges;
    edges.reserve(g.edge_count());
    for (const Link& e : g.edges()) edges.push_back(p(e));
    std::optional<std::vector<Label>> labels;
    if (g.has_labels()) {
        labels.emplace(g.node_count());
        for (NodeId v = 0; v < g.node_count(); ++v) (*labels)[p(v)] = (*g.labels())[v];
    }
    return Graph(g.node_count(), edges, std::move(labels));
}

bool is_automorphism(const Graph& g, const Permutation& p) {
    if (p.size() != g.node_count()) return false;
    for (NodeId v = 0; v < g.node_count(); ++v) {
        if (g.label(v) != g.label(p(v))) return false;
    }
    for (const Link& e : g.edges()) {
        if (!g.has_edge(p(e.u), p(e.v))) return false;
    }
    return true;
}

DistanceVector::DistanceVector(NodeId source, std::vector<std::uint32_t> raw)
    : source_(source), dist_(std::move(raw)) {}

std::optional<std::uint32_t> DistanceVector::at(NodeId v) const {
    auto d = dist_.at(v);
    if (d == kUnreachable) return std::nullopt;
    return d;
}

std::uint32_t DistanceVector::hops(NodeId v) const {
    auto d = dist_.at(v);
    if (d == kUnreachable) {
        throw ValidationError("node " + std::to_string(v) + " unreachable from " + std::to_string(source_));
    }
    return d;
}

DistanceVector bfs_distances(const Graph& g, NodeId source) {
    if (source >= g.node_count()) {
        throw ValidationError("bfs_distances: source " + std::to_string(source) + " out of range");
    }
    std::vector<std::uint32_t> dist(g.node_count(), DistanceVector::kUnreachable);
    std::deque<NodeId> queue{source};
    dist[source] = 0;
    while (!queue.empty()) {
        NodeId x = queue.front();
        queue.pop_front();
        for (NodeId y : g.neighbors(x)) {
            if (dist[y] == DistanceVector::kUnreachable) {
                dist[y] = dist[x] + 1;
                queue.push_back(y);
            }
        }
    }
    return DistanceVector(source, std::move(dist));
}

std::vector<NodeId> exact_ring(const Graph& g, NodeId v, std::uint32_t m) {
    auto dist = bfs_distances(g, v);
    std::vector<NodeId> ring;
    if (m == DistanceVector::kUnreachable) return ring;
    for (NodeId w = 0; w < g.node_count(); ++w) {
        if (dist.raw()[w] == m) ring.push_back(w);
    }
    return ring;
}

std::vector<NodeId> joint_neighborhood(const Graph& g, NodeId u, NodeId v, std::uint32_t m,
                                       bool cumulative) {
    auto du = bfs_distances(g, u);
    auto dv = bfs_distances(g, v);
    const auto in_range = [&](std::uint32_t d) {
        return cumulative ? d <= m : d == m;
    };
    std::vector<NodeId> out;
    for (NodeId w = 0; w < g.node_count(); ++w) {
        auto a = du.raw()[w];
        auto b = dv.raw()[w];
        if ((a != DistanceVector::kUnreachable && in_range(a)) ||
            (b != DistanceVector::kUnreachable && in_range(b))) {
            out.push_back(w);
        }
    }
    return out;
}

}  // namespace linkexpr
