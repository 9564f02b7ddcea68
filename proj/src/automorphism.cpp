#include "linkexpr/automorphism.hpp"

#include "linkexpr/error.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <tuple>

namespace linkexpr {

namespace {

class UnionFind {
public:
    explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }

    std::size_t find(std::size_t x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }
    void unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return;
        if (a < b) std::swap(a, b);
        parent_[a] = b;  // smallest index stays root
    }
    bool same(std::size_t a, std::size_t b) { return find(a) == find(b); }

private:
    std::vector<std::size_t> parent_;
};

void check_size(const Graph& g, const SearchLimits& limits) {
    if (g.node_count() > limits.max_nodes) {
        throw SearchRefused("exact search refused: " + std::to_string(g.node_count()) +
                            " nodes exceeds cap " + std::to_string(limits.max_nodes));
    }
}

std::vector<std::vector<NodeId>> classes_of(const Coloring& c) {
    std::vector<std::vector<NodeId>> classes(c.class_count);
    for (NodeId v = 0; v < c.colors.size(); ++v) classes[c.colors[v]].push_back(v);
    return classes;
}

// Individualization-refinement on two copies of the same graph: nodes
// [0, n) are the domain side, [n, 2n) the image side.
class PairedSearch {
public:
    PairedSearch(const Graph& g, const SearchLimits& limits) : g_(g), n_(g.node_count()), limits_(limits) {}

    std::optional<Permutation> run(std::span<const std::pair<NodeId, NodeId>> prescribed) {
        std::vector<Color> colors(2 * n_);
        for (NodeId v = 0; v < n_; ++v) {
            colors[v] = g_.label(v);
            colors[n_ + v] = g_.label(v);
        }
        // Individualize the prescribed pairs; reject inconsistent prescriptions.
        std::vector<std::optional<NodeId>> forward(n_), backward(n_);
        Color fresh = 1 + *std::max_element(colors.begin(), colors.end());
        for (auto [from, to] : prescribed) {
            if (from >= n_ || to >= n_) throw ValidationError("find_automorphism: node out of range");
            if (forward[from] || backward[to]) {
                if (forward[from] == to && backward[to] == from) continue;
                return std::nullopt;
            }
            forward[from] = to;
            backward[to] = from;
            colors[from] = fresh;
            colors[n_ + to] = fresh;
            ++fresh;
        }
        return search(std::move(colors));
    }

private:
    std::span<const NodeId> neighbors(std::size_t x) const {
        return g_.neighbors(static_cast<NodeId>(x < n_ ? x : x - n_));
    }

    // Refines to an equitable coloring; false as soon as the two sides disagree.
    bool refine(std::vector<Color>& colors, std::uint32_t& class_count) const {
        const std::size_t total = 2 * n_;
        std::vector<std::vector<Color>> sig(total);
        std::vector<std::size_t> order(total);
        std::uint32_t count = 0;
        {
            std::vector<Color> sorted(colors);
            std::sort(sorted.begin(), sorted.end());
            count = static_cast<std::uint32_t>(std::unique(sorted.begin(), sorted.end()) - sorted.begin());
        }
        while (true) {
            for (std::size_t x = 0; x < total; ++x) {
                auto nb = neighbors(x);
                const std::size_t shift = x < n_ ? 0 : n_;
                sig[x].assign(1, colors[x]);
                for (NodeId w : nb) sig[x].push_back(colors[w + shift]);
                std::sort(sig[x].begin() + 1, sig[x].end());
            }
            std::iota(order.begin(), order.end(), 0);
            std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return sig[a] < sig[b]; });
            Color next = 0;
            std::vector<std::int64_t> balance;
            balance.push_back(0);
            for (std::size_t i = 0; i < total; ++i) {
                if (i > 0 && sig[order[i]] != sig[order[i - 1]]) {
                    ++next;
                    balance.push_back(0);
                }
                colors[order[i]] = next;
                balance.back() += order[i] < n_ ? 1 : -1;
            }
            if (std::any_of(balance.begin(), balance.end(), [](std::int64_t b) { return b != 0; })) return false;
            const std::uint32_t new_count = next + 1;
            if (new_count == count) break;
            count = new_count;
        }
        class_count = count;
        return true;
    }

    std::optional<Permutation> search(std::vector<Color> colors) {
        if (++visited_ > limits_.max_search_nodes) {
            throw SearchRefused("exact search refused: backtracking budget exhausted");
        }
        std::uint32_t class_count = 0;
        if (!refine(colors, class_count)) return std::nullopt;

        // Class sizes on the domain side (equal to the image side after balancing).
        std::vector<std::uint32_t> size(class_count, 0);
        for (std::size_t x = 0; x < n_; ++x) ++size[colors[x]];
        std::optional<Color> target;
        for (Color c = 0; c < class_count; ++c) {
            if (size[c] > 1) {
                target = c;
                break;
            }
        }
        if (!target) {
            std::vector<NodeId> image_of_color(class_count);
            for (std::size_t y = n_; y < 2 * n_; ++y) image_of_color[colors[y]] = static_cast<NodeId>(y - n_);
            std::vector<NodeId> mapping(n_);
            for (std::size_t x = 0; x < n_; ++x) mapping[x] = image_of_color[colors[x]];
            Permutation sigma(std::move(mapping));
            if (is_automorphism(g_, sigma)) return sigma;
            return std::nullopt;
        }
        std::size_t x = 0;
        while (colors[x] != *target) ++x;
        for (std::size_t y = n_; y < 2 * n_; ++y) {
            if (colors[y] != *target) continue;
            auto branch = colors;
            branch[x] = class_count;
            branch[y] = class_count;
            if (auto found = search(std::move(branch))) return found;
        }
        return std::nullopt;
    }

    const Graph& g_;
    std::size_t n_;
    SearchLimits limits_;
    std::size_t visited_ = 0;
};

}  // namespace

bool AutomorphismSet::contains(const Permutation& p) const {
    return std::find(automorphisms.begin(), automorphisms.end(), p) != automorphisms.end();
}

AutomorphismSet enumerate_automorphisms(const Graph& g, const SearchLimits& limits) {
    check_size(g, limits);
    const std::size_t n = g.node_count();
    const Coloring stable = wl_refine(g);
    const auto classes = classes_of(stable);
    std::vector<bool> adj(n * n, false);
    for (const Link& e : g.edges()) {
        adj[e.u * n + e.v] = true;
        adj[e.v * n + e.u] = true;
    }

    AutomorphismSet result;
    std::vector<NodeId> image(n);
    std::vector<bool> used(n, false);

    auto place = [&](auto& self, NodeId v) -> void {
        if (v == n) {
            result.automorphisms.emplace_back(image);
            if (result.automorphisms.size() > limits.max_group_order) {
                throw SearchRefused("exact search refused: automorphism group exceeds " +
                                    std::to_string(limits.max_group_order) + " elements");
            }
            return;
        }
        for (NodeId w : classes[stable.colors[v]]) {
            if (used[w]) continue;
            bool consistent = true;
            for (NodeId x = 0; x < v && consistent; ++x) {
                consistent = adj[x * n + v] == adj[image[x] * n + w];
            }
            if (!consistent) continue;
            image[v] = w;
            used[w] = true;
            self(self, v + 1);
            used[w] = false;
        }
    };
    place(place, 0);
    return result;
}

std::optional<Permutation> find_automorphism(const Graph& g,
                                             std::span<const std::pair<NodeId, NodeId>> prescribed,
                                             const SearchLimits& limits) {
    check_size(g, limits);
    if (g.node_count() == 0) return Permutation::identity(0);
    PairedSearch search(g, limits);
    return search.run(prescribed);
}

namespace {

OrbitPartition number_orbits(UnionFind& uf, std::size_t n) {
    OrbitPartition out;
    out.orbit_id.assign(n, 0);
    std::vector<std::int64_t> id_of_root(n, -1);
    for (std::size_t v = 0; v < n; ++v) {
        auto root = uf.find(v);
        if (id_of_root[root] < 0) id_of_root[root] = out.orbit_count++;
        out.orbit_id[v] = static_cast<std::uint32_t>(id_of_root[root]);
    }
    return out;
}

}  // namespace

OrbitPartition orbits_from(const AutomorphismSet& set, std::size_t n) {
    UnionFind uf(n);
    for (const auto& sigma : set.automorphisms) {
        for (NodeId v = 0; v < n; ++v) uf.unite(v, sigma(v));
    }
    return number_orbits(uf, n);
}

OrbitPartition orbits(const Graph& g, const SearchLimits& limits) {
    check_size(g, limits);
    const std::size_t n = g.node_count();
    const Coloring stable = wl_refine(g);
    UnionFind uf(n);
    std::vector<std::vector<NodeId>> reps(stable.class_count);
    for (NodeId w = 0; w < n; ++w) {
        auto& candidates = reps[stable.colors[w]];
        bool merged = std::any_of(candidates.begin(), candidates.end(), [&](NodeId r) { return uf.same(r, w); });
        for (std::size_t i = 0; i < candidates.size() && !merged; ++i) {
            const std::pair<NodeId, NodeId> pin{candidates[i], w};
            if (auto sigma = find_automorphism(g, std::span(&pin, 1), limits)) {
                for (NodeId v = 0; v < n; ++v) uf.unite(v, (*sigma)(v));
                merged = true;
            }
        }
        if (!merged) candidates.push_back(w);
    }
    return number_orbits(uf, n);
}

bool are_links_automorphic(const Graph& g, Link a, Link b, const SearchLimits& limits) {
    for (NodeId x : {a.u, a.v, b.u, b.v}) {
        if (x >= g.node_count()) throw ValidationError("are_links_automorphic: node out of range");
    }
    check_size(g, limits);
    if (a == b) return true;
    const std::pair<NodeId, NodeId> straight[] = {{a.u, b.u}, {a.v, b.v}};
    if (find_automorphism(g, straight, limits)) return true;
    const std::pair<NodeId, NodeId> crossed[] = {{a.u, b.v}, {a.v, b.u}};
    return find_automorphism(g, crossed, limits).has_value();
}

LinkOrbits::LinkOrbits(const Graph& g, const Coloring& stable, const SearchLimits& limits)
    : n_(g.node_count()) {
    check_size(g, limits);
    for (NodeId u = 0; u < n_; ++u) {
        for (NodeId v = u + 1; v < n_; ++v) links_.emplace_back(u, v);
    }
    UnionFind uf(links_.size());
    // Automorphisms preserve WL colors and adjacency, so only links agreeing on
    // both can share an orbit.
    std::map<std::tuple<Color, Color, bool>, std::vector<std::size_t>> reps;
    for (std::size_t i = 0; i < links_.size(); ++i) {
        const Link l = links_[i];
        Color cu = stable.colors[l.u];
        Color cv = stable.colors[l.v];
        auto& candidates = reps[{std::min(cu, cv), std::max(cu, cv), g.has_edge(l.u, l.v)}];
        bool merged = std::any_of(candidates.begin(), candidates.end(), [&](std::size_t r) { return uf.same(r, i); });
        for (std::size_t k = 0; k < candidates.size() && !merged; ++k) {
            const Link r = links_[candidates[k]];
            const std::pair<NodeId, NodeId> straight[] = {{r.u, l.u}, {r.v, l.v}};
            const std::pair<NodeId, NodeId> crossed[] = {{r.u, l.v}, {r.v, l.u}};
            auto sigma = find_automorphism(g, straight, limits);
            if (!sigma) sigma = find_automorphism(g, crossed, limits);
            if (sigma) {
                for (std::size_t j = 0; j < links_.size(); ++j) uf.unite(j, index_of((*sigma)(links_[j])));
                merged = true;
            }
        }
        if (!merged) candidates.push_back(i);
    }
    auto numbered = number_orbits(uf, links_.size());
    orbit_ = std::move(numbered.orbit_id);
    orbit_count_ = numbered.orbit_count;
}

std::size_t LinkOrbits::index_of(Link l) const {
    if (l.u == l.v || l.v >= n_) throw ValidationError("LinkOrbits: invalid link");
    return l.u * n_ - l.u * (l.u + 1) / 2 + (l.v - l.u - 1);
}

std::uint32_t LinkOrbits::orbit_of(Link l) const { return orbit_.at(index_of(l)); }

}  // namespace linkexpr
