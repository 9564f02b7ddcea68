#pragma once

#include "linkexpr/digest.hpp"
#include "linkexpr/graph.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace linkexpr {

using Color = std::uint32_t;

/// 1-WL color assignment. Color ids are dense in [0, class_count) and are a
/// canonical function of the graph's isomorphism class: at every round a
/// node's signature is (previous color, sorted neighbor colors) and new ids are
/// handed out in sorted signature order. Initial colors are the node labels,
/// densified in ascending label order.
struct Coloring {
    std::vector<Color> colors;
    std::uint32_t class_count = 0;
    /// Rounds that strictly refined the partition.
    std::uint32_t iterations = 0;
};

/// Runs refinement to the stable partition (at most n rounds).
Coloring wl_refine(const Graph& g);

/// Exactly `rounds` refinement rounds from the label coloring (the l-layer view).
Coloring wl_rounds(const Graph& g, std::uint32_t rounds);

/// Refinement from an arbitrary initial coloring. `initial` values need not be
/// dense. `max_rounds` bounds the number of rounds; refinement stops early once
/// the partition is stable unless `exact_rounds` is set.
Coloring wl_refine_from(const Graph& g, std::span<const std::uint64_t> initial, std::uint32_t max_rounds,
                        bool exact_rounds);

/// Graph-independent WL colors: each round's color is the BLAKE2b fingerprint of
/// (previous fingerprint, sorted neighbor fingerprints). Unlike dense ids these
/// are comparable between different graphs. `initial_tokens[v]` holds an
/// arbitrary-length token sequence describing node v's starting features.
std::vector<Digest128> wl_fingerprints(const Graph& g,
                                       std::span<const std::vector<std::uint64_t>> initial_tokens,
                                       std::uint32_t rounds);

}  // namespace linkexpr
