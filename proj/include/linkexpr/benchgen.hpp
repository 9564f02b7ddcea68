#pragma once

#include "linkexpr/automorphism.hpp"
#include "linkexpr/error.hpp"
#include "linkexpr/graph.hpp"
#include "linkexpr/rng.hpp"

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace linkexpr {

inline constexpr const char* kGeneratorVersion = "linkexpr-benchgen/1";
inline constexpr int kDatasetFormatVersion = 1;

struct GenParams {
    std::uint32_t n_min = 5;
    std::uint32_t n_max = 17;
    std::uint64_t seed = 0;
    std::uint32_t target_graph_count = 1400;
    std::uint32_t max_attempts_per_graph = 50;
    /// Qualifying link pairs kept per graph, lexicographically first.
    std::uint32_t pair_cap = 32;

    void validate() const;
};

struct SplitRatios {
    double train = 0.8;
    double validation = 0.1;
    double test = 0.1;

    void validate() const;
    /// Floor each share, then hand out the remainder one graph at a time in
    /// train, validation, test order.
    std::array<std::size_t, 3> sizes(std::size_t graph_count) const;
};

/// Random choices behind one two-block graph.
struct BlockDraw {
    std::uint32_t block_size = 0;
    double p = 0.0;
    double p_cross = 0.0;
    friend bool operator==(const BlockDraw&, const BlockDraw&) = default;
};

/// Draws the block size uniformly from [n_min, n_max], then p and p' from U(0,1).
BlockDraw draw_block_params(SplitMix64& rng, const GenParams& params);

/// An Erdős–Rényi block G(n, p) on nodes 0..n-1, an identical copy on n..2n-1,
/// and each of the n² cross pairs (i, n+j) added independently with probability p'.
Graph sample_two_block_graph(SplitMix64& rng, const BlockDraw& draw);

Graph sample_lrexp_graph(SplitMix64& rng, const GenParams& params);

struct LinkPairInstance {
    std::uint32_t instance_id = 0;
    std::uint32_t graph_id = 0;
    Link pair_a;
    Link pair_b;
    bool wl_matched = true;
    bool non_automorphic = true;

    friend bool operator==(const LinkPairInstance&, const LinkPairInstance&) = default;
};

struct MinedPairs {
    /// instance_id and graph_id are left at 0 for the caller to assign.
    std::vector<LinkPairInstance> instances;
    /// Total number of qualifying pairs before truncation.
    std::size_t qualifying_total = 0;
    bool truncated = false;
};

/// All unordered pairs of distinct links (u,v), u != v, whose endpoint WL color
/// multisets agree but which lie in different automorphism orbits, in
/// lexicographic order, truncated to `pair_cap`.
MinedPairs mine_test_pairs(const Graph& g, std::uint32_t pair_cap, const SearchLimits& limits = {});

enum class Split { train, validation, test };
const char* split_name(Split s);

struct DatasetGraph {
    std::uint32_t id = 0;
    Graph graph;
    BlockDraw draw;
    std::uint64_t attempt = 0;
    std::size_t qualifying_total = 0;
    bool truncated = false;
    Split split = Split::train;

    friend bool operator==(const DatasetGraph&, const DatasetGraph&) = default;
};

struct Provenance {
    GenParams params;
    SplitRatios ratios;
    std::string generator_version = kGeneratorVersion;
    std::uint64_t attempts_used = 0;
};

struct Dataset {
    Provenance provenance;
    std::vector<DatasetGraph> graphs;  // graphs[i].id == i
    std::vector<LinkPairInstance> instances;

    std::vector<std::uint32_t> graph_ids(Split s) const;
    /// Checks every structural invariant; throws ValidationError.
    void validate() const;
};

bool operator==(const SplitRatios&, const SplitRatios&);
bool operator==(const GenParams&, const GenParams&);
bool operator==(const Provenance&, const Provenance&);
bool operator==(const Dataset&, const Dataset&);

/// Thrown when the attempt budget runs out before the target count.
class PartialDatasetError : public ValidationError {
public:
    PartialDatasetError(std::size_t achieved, std::size_t target);
    std::size_t achieved() const noexcept { return achieved_; }

private:
    std::size_t achieved_;
};

/// Samples attempt k from derive_seed(seed, "graph", k), keeps graphs with at
/// least one qualifying pair in attempt order, then assigns splits by a
/// Fisher-Yates shuffle seeded with derive_seed(seed, "split", 0).
Dataset build_dataset(const GenParams& params, const SplitRatios& ratios = {});

std::string dataset_to_json(const Dataset& ds);
Dataset dataset_from_json(std::string_view text);
void write_dataset(const Dataset& ds, const std::string& path);
Dataset read_dataset(const std::string& path);

/// Re-checks every instance against the symmetry module: endpoint WL
/// multisets equal and the two links not automorphic. Returns the ids of
/// failing instances.
std::vector<std::uint32_t> reverify_instances(const Dataset& ds, const SearchLimits& limits = {});

}  // namespace linkexpr
