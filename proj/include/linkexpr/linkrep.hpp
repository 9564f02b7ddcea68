#pragma once

#include "linkexpr/digest.hpp"
#include "linkexpr/error.hpp"
#include "linkexpr/graph.hpp"
#include "linkexpr/wl.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace linkexpr {

enum class ModelKind : std::uint8_t { pure, ncn, elph, neognn, seal };

const char* model_name(ModelKind kind);
ModelKind parse_model(std::string_view name);

/// Framework configuration. `m` is the link-neighborhood radius, `l` the number
/// of message-passing rounds behind every node color.
struct ModelConfig {
    ModelKind kind = ModelKind::pure;
    std::uint32_t m = 3;
    std::uint32_t l = 3;
    double beta = 0.5;        // Neo-GNN hop decay; does not enter the representation
    std::uint32_t h_hops = 3; // SEAL enclosing-subgraph radius
    /// SEAL only: label nodes by the sorted distance pair instead of min distance + 1.
    bool drnl_distance_pairs = false;

    void validate() const;
};

/// Canonical serialization of a link's representation plus its 128-bit digest.
/// Two representations are equal iff their canonical forms are equal; a digest
/// match with differing forms raises DigestCollision.
class LinkRepresentation {
public:
    LinkRepresentation(ModelKind kind, std::vector<std::uint64_t> canonical_form);

    ModelKind kind() const noexcept { return kind_; }
    const std::vector<std::uint64_t>& canonical_form() const noexcept { return form_; }
    const Digest128& digest() const noexcept { return digest_; }

    friend bool operator==(const LinkRepresentation& a, const LinkRepresentation& b);

private:
    ModelKind kind_;
    std::vector<std::uint64_t> form_;
    Digest128 digest_;
};

class DigestCollision : public Error {
public:
    explicit DigestCollision(const std::string& what) : Error(ErrorKind::numerical, what) {}
};

/// ELPH distance-pair counts for radius m (all tables 1-indexed in the API).
struct ElphCounts {
    std::uint32_t m = 0;
    /// a[(du-1)*m + (dv-1)]: nodes at distance exactly du from u and dv from v.
    std::vector<std::uint64_t> a;
    /// b_u[d-1]: nodes at distance d from u and farther than d from v (or unreachable from v).
    std::vector<std::uint64_t> b_u;
    std::vector<std::uint64_t> b_v;

    std::uint64_t at(std::uint32_t du, std::uint32_t dv) const { return a.at((du - 1) * m + (dv - 1)); }
};

/// Per-graph precomputation shared by all links of one graph: the l-round
/// coloring, all-pairs BFS, and walk counts. Immutable after construction.
class LinkRepresenter {
public:
    LinkRepresenter(const Graph& g, const ModelConfig& cfg);
    ~LinkRepresenter();
    LinkRepresenter(LinkRepresenter&&) noexcept;

    LinkRepresentation operator()(NodeId u, NodeId v) const;
    LinkRepresentation operator()(Link l) const { return (*this)(l.u, l.v); }

    ElphCounts elph_counts(NodeId u, NodeId v) const;

private:
    struct State;
    std::unique_ptr<State> state_;
};

/// Dispatches on cfg.kind. Requires u != v, both in range. Symmetric in u, v.
LinkRepresentation represent(const Graph& g, NodeId u, NodeId v, const ModelConfig& cfg);

/// Endpoint colors only.
LinkRepresentation pure_rep(const Graph& g, NodeId u, NodeId v, std::uint32_t l);
/// Endpoint colors plus the multiset of colors over N(u) ∩ N(v).
LinkRepresentation ncn_rep(const Graph& g, NodeId u, NodeId v, std::uint32_t l);
ElphCounts elph_counts(const Graph& g, NodeId u, NodeId v, std::uint32_t m);
LinkRepresentation elph_rep(const Graph& g, NodeId u, NodeId v, std::uint32_t m, std::uint32_t l);
LinkRepresentation neognn_rep(const Graph& g, NodeId u, NodeId v, std::uint32_t m, std::uint32_t l, double beta);

/// Per-power structural contributions [A^k x]_v for k = 1..m with x = degree.
std::vector<std::uint64_t> neognn_structural_vector(const Graph& g, NodeId v, std::uint32_t m);

struct EnclosingSubgraph {
    Graph graph;
    /// node_map[i] is the original id of subgraph node i (ascending).
    std::vector<NodeId> node_map;
    NodeId u = 0;  // local ids of the link endpoints
    NodeId v = 0;
};

/// Subgraph induced on every node within h hops of u or v.
EnclosingSubgraph enclosing_subgraph(const Graph& g, NodeId u, NodeId v, std::uint32_t h);

/// min(δ(i,u), δ(i,v)) + 1 with distances measured inside `sub` (u, v local ids).
/// Nodes unreachable from both get 0.
std::vector<Label> drnl_labels(const Graph& sub, NodeId u, NodeId v);

LinkRepresentation seal_rep(const Graph& g, NodeId u, NodeId v, std::uint32_t h, std::uint32_t l,
                            bool distance_pairs = false);

}  // namespace linkexpr
