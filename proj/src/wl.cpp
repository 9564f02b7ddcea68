#include "linkexpr/wl.hpp"

#include <algorithm>

namespace linkexpr {

namespace {

std::vector<Color> densify(std::span<const std::uint64_t> values, std::uint32_t& count) {
    std::vector<std::uint64_t> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    std::vector<Color> out(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        out[i] = static_cast<Color>(std::lower_bound(sorted.begin(), sorted.end(), values[i]) - sorted.begin());
    }
    count = static_cast<std::uint32_t>(sorted.size());
    return out;
}

// One refinement round. Returns the new class count.
std::uint32_t refine_round(const Graph& g, std::vector<Color>& colors) {
    const std::size_t n = g.node_count();
    std::vector<std::vector<Color>> signatures(n);
    for (NodeId v = 0; v < n; ++v) {
        auto& sig = signatures[v];
        auto nb = g.neighbors(v);
        sig.reserve(nb.size() + 1);
        sig.push_back(colors[v]);
        for (NodeId w : nb) sig.push_back(colors[w]);
        std::sort(sig.begin() + 1, sig.end());
    }
    std::vector<NodeId> order(n);
    for (NodeId v = 0; v < n; ++v) order[v] = v;
    std::sort(order.begin(), order.end(),
              [&](NodeId a, NodeId b) { return signatures[a] < signatures[b]; });
    std::uint32_t next = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (i > 0 && signatures[order[i]] != signatures[order[i - 1]]) ++next;
        colors[order[i]] = next;
    }
    return n == 0 ? 0 : next + 1;
}

}  // namespace

Coloring wl_refine_from(const Graph& g, std::span<const std::uint64_t> initial, std::uint32_t max_rounds,
                        bool exact_rounds) {
    Coloring c;
    c.colors = densify(initial, c.class_count);
    for (std::uint32_t round = 0; round < max_rounds; ++round) {
        std::uint32_t count = refine_round(g, c.colors);
        const bool refined = count != c.class_count;
        c.class_count = count;
        if (refined) {
            ++c.iterations;
        } else if (!exact_rounds) {
            break;
        }
    }
    return c;
}

namespace {

std::vector<std::uint64_t> label_values(const Graph& g) {
    std::vector<std::uint64_t> init(g.node_count());
    for (NodeId v = 0; v < g.node_count(); ++v) init[v] = g.label(v);
    return init;
}

}  // namespace

Coloring wl_refine(const Graph& g) {
    auto init = label_values(g);
    // Each strict refinement adds a class, so n rounds always reach stability.
    return wl_refine_from(g, init, static_cast<std::uint32_t>(g.node_count()) + 1, false);
}

Coloring wl_rounds(const Graph& g, std::uint32_t rounds) {
    auto init = label_values(g);
    return wl_refine_from(g, init, rounds, true);
}

std::vector<Digest128> wl_fingerprints(const Graph& g,
                                       std::span<const std::vector<std::uint64_t>> initial_tokens,
                                       std::uint32_t rounds) {
    const std::size_t n = g.node_count();
    std::vector<Digest128> current(n);
    for (NodeId v = 0; v < n; ++v) {
        std::vector<std::uint64_t> tokens{0x494e4954ULL};  // "INIT" domain tag
        tokens.insert(tokens.end(), initial_tokens[v].begin(), initial_tokens[v].end());
        current[v] = digest128(tokens);
    }
    std::vector<Digest128> next(n);
    std::vector<Digest128> nb_colors;
    std::vector<std::uint64_t> tokens;
    for (std::uint32_t round = 0; round < rounds; ++round) {
        for (NodeId v = 0; v < n; ++v) {
            nb_colors.clear();
            for (NodeId w : g.neighbors(v)) nb_colors.push_back(current[w]);
            std::sort(nb_colors.begin(), nb_colors.end());
            tokens.assign({current[v].words[0], current[v].words[1], nb_colors.size()});
            for (const auto& c : nb_colors) tokens.insert(tokens.end(), c.words.begin(), c.words.end());
            next[v] = digest128(tokens);
        }
        current.swap(next);
    }
    return current;
}

}  // namespace linkexpr
