#pragma once

#include "linkexpr/graph.hpp"
#include "linkexpr/wl.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace linkexpr {

struct SearchLimits {
    /// Graphs above this size are refused outright.
    std::size_t max_nodes = 40;
    /// Explicit enumeration refuses groups larger than this.
    std::size_t max_group_order = 1'000'000;
    /// Backtracking budget (refinement calls) for a single existence query.
    std::size_t max_search_nodes = 5'000'000;
};

/// Explicit list of every label-preserving automorphism; identity is first.
struct AutomorphismSet {
    std::vector<Permutation> automorphisms;
    std::size_t order() const noexcept { return automorphisms.size(); }
    bool contains(const Permutation& p) const;
};

/// Backtracking over nodes in index order. Candidate images are restricted to
/// the node's stable WL class and must agree on adjacency with every node
/// already placed. Throws SearchRefused above `limits.max_nodes` or once more
/// than `limits.max_group_order` automorphisms have been found.
AutomorphismSet enumerate_automorphisms(const Graph& g, const SearchLimits& limits = {});

/// Finds some automorphism σ with σ(from) = to for each prescribed pair, or
/// nullopt if none exists. Uses individualization-refinement: both sides of
/// the mapping are colored jointly, so color classes stay comparable, and a
/// non-singleton class is split by trying each candidate image in turn.
std::optional<Permutation> find_automorphism(const Graph& g,
                                             std::span<const std::pair<NodeId, NodeId>> prescribed,
                                             const SearchLimits& limits = {});

struct OrbitPartition {
    /// Orbit index per node; orbits are numbered by their smallest member.
    std::vector<std::uint32_t> orbit_id;
    std::uint32_t orbit_count = 0;
};

/// Orbits from an explicit automorphism list (union of every (v, σ(v))).
OrbitPartition orbits_from(const AutomorphismSet& set, std::size_t n);

/// Orbits of the automorphism group. Nodes are only ever compared within a
/// stable WL class; each successful existence query merges every (v, σ(v)).
OrbitPartition orbits(const Graph& g, const SearchLimits& limits = {});

/// True iff some automorphism maps {a.u, a.v} onto {b.u, b.v} as sets.
bool are_links_automorphic(const Graph& g, Link a, Link b, const SearchLimits& limits = {});

/// Orbits of the automorphism group acting on unordered node pairs u < v.
class LinkOrbits {
public:
    LinkOrbits(const Graph& g, const Coloring& stable, const SearchLimits& limits = {});

    /// Links in lexicographic order; orbit(i) refers to links()[i].
    const std::vector<Link>& links() const noexcept { return links_; }
    std::uint32_t orbit(std::size_t link_index) const { return orbit_.at(link_index); }
    std::uint32_t orbit_of(Link l) const;
    std::uint32_t orbit_count() const noexcept { return orbit_count_; }

private:
    std::size_t index_of(Link l) const;

    std::size_t n_ = 0;
    std::vector<Link> links_;
    std::vector<std::uint32_t> orbit_;
    std::uint32_t orbit_count_ = 0;
};

/// Exact graph-symmetry measure 1 - (|orbits| - 1)/(n - 1). Defined as 1 for
/// n = 1; n = 0 throws.
double symmetry_exact(const Graph& g, const SearchLimits& limits = {});

/// WL approximation 1 - (|stable WL classes| - 1)/(n - 1), same conventions.
double symmetry_wl(const Graph& g);

/// Shared formula for both measures.
double symmetry_measure(std::size_t n, std::size_t classes);

}  // namespace linkexpr
