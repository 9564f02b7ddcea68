#pragma once

// Brute-force reference implementations used only by tests. None of them call
// into the library beyond the Graph container.

#include "linkexpr/graph.hpp"
#include "linkexpr/rng.hpp"

#include <boost/math/special_functions/beta.hpp>

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <numeric>
#include <set>
#include <vector>

namespace oracle {

using linkexpr::Graph;
using linkexpr::NodeId;

inline constexpr std::uint32_t kFar = 1u << 30;

inline std::vector<std::vector<bool>> adjacency(const Graph& g) {
    std::vector<std::vector<bool>> a(g.node_count(), std::vector<bool>(g.node_count(), false));
    for (const auto& e : g.edges()) a[e.u][e.v] = a[e.v][e.u] = true;
    return a;
}

/// Every permutation of {0..n-1} that preserves adjacency and labels.
inline std::vector<std::vector<NodeId>> all_automorphisms(const Graph& g) {
    const auto a = adjacency(g);
    const std::size_t n = g.node_count();
    std::vector<NodeId> p(n);
    std::iota(p.begin(), p.end(), 0);
    std::vector<std::vector<NodeId>> out;
    do {
        bool ok = true;
        for (std::size_t i = 0; i < n && ok; ++i) {
            if (g.label(static_cast<NodeId>(i)) != g.label(p[i])) ok = false;
            for (std::size_t j = i + 1; j < n && ok; ++j) ok = a[i][j] == a[p[i]][p[j]];
        }
        if (ok) out.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    return out;
}

inline std::size_t orbit_count(const Graph& g) {
    const auto auts = all_automorphisms(g);
    std::set<std::set<NodeId>> orbits;
    for (NodeId v = 0; v < g.node_count(); ++v) {
        std::set<NodeId> o;
        for (const auto& p : auts) o.insert(p[v]);
        orbits.insert(o);
    }
    return orbits.size();
}

inline std::vector<std::uint32_t> bfs(const Graph& g, NodeId s) {
    std::vector<std::uint32_t> d(g.node_count(), kFar);
    std::deque<NodeId> q{s};
    d[s] = 0;
    while (!q.empty()) {
        NodeId x = q.front();
        q.pop_front();
        for (NodeId y : g.neighbors(x)) {
            if (d[y] == kFar) {
                d[y] = d[x] + 1;
                q.push_back(y);
            }
        }
    }
    return d;
}

struct Elph {
    std::map<std::pair<std::uint32_t, std::uint32_t>, std::uint64_t> a;
    std::vector<std::uint64_t> bu, bv;
};

inline Elph elph(const Graph& g, NodeId u, NodeId v, std::uint32_t m) {
    const auto du = bfs(g, u);
    const auto dv = bfs(g, v);
    Elph out;
    out.bu.assign(m, 0);
    out.bv.assign(m, 0);
    for (NodeId i = 0; i < g.node_count(); ++i) {
        if (du[i] >= 1 && du[i] <= m && dv[i] >= 1 && dv[i] <= m) ++out.a[{du[i], dv[i]}];
        if (du[i] >= 1 && du[i] <= m && dv[i] > du[i]) ++out.bu[du[i] - 1];
        if (dv[i] >= 1 && dv[i] <= m && du[i] > dv[i]) ++out.bv[dv[i] - 1];
    }
    return out;
}

/// Upper-tail F quantile by bisection on Boost's regularized incomplete beta.
inline double f_upper_quantile(double d1, double d2, double alpha) {
    const auto survival = [&](double x) { return boost::math::ibetac(d1 / 2, d2 / 2, d1 * x / (d1 * x + d2)); };
    double lo = 0.0;
    double hi = 1.0;
    while (survival(hi) > alpha) hi *= 2;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        (survival(mid) > alpha ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

inline Graph random_graph(linkexpr::SplitMix64& rng, std::size_t n, double p) {
    std::vector<linkexpr::Link> edges;
    for (NodeId i = 0; i < n; ++i)
        for (NodeId j = i + 1; j < n; ++j)
            if (rng.uniform01() < p) edges.emplace_back(i, j);
    return Graph(n, edges);
}

inline Graph cycle(std::size_t n) {
    std::vector<linkexpr::Link> edges;
    for (NodeId i = 0; i < n; ++i) edges.emplace_back(i, static_cast<NodeId>((i + 1) % n));
    return Graph(n, edges);
}

inline Graph complete(std::size_t n) {
    std::vector<linkexpr::Link> edges;
    for (NodeId i = 0; i < n; ++i)
        for (NodeId j = i + 1; j < n; ++j) edges.emplace_back(i, j);
    return Graph(n, edges);
}

inline Graph two_triangles() { return Graph(6, {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}}); }

/// Six nodes, trivial automorphism group.
inline Graph asymmetric6() { return Graph(6, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {1, 5}, {2, 5}}); }

}  // namespace oracle
