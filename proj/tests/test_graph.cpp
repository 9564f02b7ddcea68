#include "linkexpr/error.hpp"
#include "linkexpr/graph.hpp"
#include "linkexpr/rng.hpp"

#include "oracles.hpp"

#include <doctest.h>

using namespace linkexpr;

TEST_CASE("edge list parsing") {
    const Graph tri = load_graph("n=3\n0 1\n1 2\n0 2\n");
    CHECK(tri.node_count() == 3);
    CHECK(tri.edge_count() == 3);

    const Graph empty = load_graph("n=2\n");
    CHECK(empty.node_count() == 2);
    CHECK(empty.edge_count() == 0);

    CHECK_THROWS_AS(load_graph("n=3\n0 3\n"), ValidationError);
}

TEST_CASE("parse errors name the line") {
    try {
        load_graph("# header\nn=3\n0 1\n1 x\n");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.line() == 4);
    }
    CHECK_THROWS_AS(load_graph(""), ParseError);
    CHECK_THROWS_AS(load_graph("n=3\n1 1\n"), ValidationError);
}

TEST_CASE("labels and round trip") {
    const Graph g = load_graph("n=4\n0 1\n2 3\n1 0\nlabels: 0 0 1 1\n");
    CHECK(g.edge_count() == 2);
    CHECK(g.label(2) == 1);
    CHECK(load_graph(to_edge_list_text(g)) == g);
    CHECK_THROWS_AS(load_graph("n=2\nlabels: 1\n"), ValidationError);
}

TEST_CASE("bfs distances") {
    const Graph path(4, {{0, 1}, {1, 2}, {2, 3}});
    CHECK(bfs_distances(path, 0).raw() == std::vector<std::uint32_t>{0, 1, 2, 3});

    const Graph two_edges(4, {{0, 1}, {2, 3}});
    const auto d = bfs_distances(two_edges, 0);
    CHECK(d.hops(1) == 1);
    CHECK_FALSE(d.at(2).has_value());
    CHECK_FALSE(d.reachable(3));
    CHECK_THROWS(d.hops(3));

    const Graph tri(3, {{0, 1}, {1, 2}, {0, 2}});
    CHECK(bfs_distances(tri, 2).raw() == std::vector<std::uint32_t>{1, 1, 0});
}

TEST_CASE("rings and joint neighborhoods") {
    const Graph path(4, {{0, 1}, {1, 2}, {2, 3}});
    const Graph tri(3, {{0, 1}, {1, 2}, {0, 2}});
    const Graph two_edges(4, {{0, 1}, {2, 3}});
    CHECK(exact_ring(path, 0, 2) == std::vector<NodeId>{2});
    CHECK(exact_ring(tri, 0, 1) == std::vector<NodeId>{1, 2});
    CHECK(exact_ring(tri, 0, 2).empty());
    CHECK(exact_ring(two_edges, 0, DistanceVector::kUnreachable).empty());

    CHECK(joint_neighborhood(path, 1, 2, 1, false) == std::vector<NodeId>{0, 1, 2, 3});
    CHECK(joint_neighborhood(tri, 0, 1, 1, true) == std::vector<NodeId>{0, 1, 2});
    CHECK(joint_neighborhood(two_edges, 0, 2, 1, false) == std::vector<NodeId>{1, 3});
}

TEST_CASE("permutations") {
    const Graph g(3, {{0, 2}});
    const Permutation swap01({1, 0, 2});
    CHECK(apply_permutation(g, swap01).edges() == std::vector<Link>{Link(1, 2)});
    CHECK(apply_permutation(g, Permutation::identity(3)) == g);

    const Graph tri(3, {{0, 1}, {1, 2}, {0, 2}});
    CHECK(apply_permutation(tri, Permutation({2, 0, 1})) == tri);
    CHECK(is_automorphism(tri, Permutation({2, 0, 1})));
    CHECK_FALSE(is_automorphism(g, swap01));

    CHECK_THROWS_AS(Permutation({0, 0, 1}), ValidationError);
    const Permutation p({2, 0, 3, 1});
    CHECK(p.compose(p.inverse()).is_identity());
}

TEST_CASE("bfs matches reference on random graphs") {
    SplitMix64 rng(11);
    for (int trial = 0; trial < 50; ++trial) {
        const Graph g = oracle::random_graph(rng, 1 + rng.uniform_int(0, 14), 0.2);
        for (NodeId s = 0; s < g.node_count(); ++s) {
            const auto ref = oracle::bfs(g, s);
            const auto d = bfs_distances(g, s);
            for (NodeId t = 0; t < g.node_count(); ++t) {
                if (ref[t] == oracle::kFar) {
                    CHECK_FALSE(d.reachable(t));
                } else {
                    CHECK(d.hops(t) == ref[t]);
                }
            }
        }
    }
}
