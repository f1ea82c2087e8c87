#include <catch2/catch_amalgamated.hpp>

#include "totcol/oracle.hpp"
#include "totcol/rng.hpp"

using namespace totcol;

namespace {

Graph complete(int n) {
    Graph g(n);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) g.add_edge(u, v);
    return g;
}

Graph cycle(int n) {
    Graph g(n);
    for (int v = 0; v < n; ++v) g.add_edge(v, (v + 1) % n);
    return g;
}

} // namespace

TEST_CASE("isomorph-free enumeration counts") {
    REQUIRE(enumerate_graphs(1).size() == 1);
    REQUIRE(enumerate_graphs(2).size() == 2);
    REQUIRE(enumerate_graphs(3).size() == 4);
    REQUIRE(enumerate_graphs(4).size() == 11);
    REQUIRE(enumerate_graphs(5).size() == 34);
    REQUIRE(enumerate_graphs(6).size() == 156);
}

TEST_CASE("canonical key is isomorphism-invariant") {
    Rng rng(5);
    for (int trial = 0; trial < 50; ++trial) {
        int n = rng.range(2, 9);
        Graph g(n);
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v)
                if (rng.chance(0.5)) g.add_edge(u, v);
        std::vector<int> perm(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) perm[std::size_t(i)] = i;
        rng.shuffle(perm);
        Graph h(n);
        for (auto [u, v] : g.edges()) h.add_edge(perm[std::size_t(u)], perm[std::size_t(v)]);
        REQUIRE(canonical_key(g) == canonical_key(h));
        REQUIRE(canonical_graph6(g) == canonical_graph6(h));
    }
}

TEST_CASE("total chromatic number on knowns") {
    REQUIRE(brute_total_chromatic(complete(1)) == 1);
    REQUIRE(brute_total_chromatic(complete(2)) == 3);
    REQUIRE(brute_total_chromatic(cycle(4)) == 4);
    REQUIRE(brute_total_chromatic(complete(4)) == 5);
    REQUIRE(brute_total_chromatic(cycle(6)) == 3);
}

TEST_CASE("total coloring witness is valid") {
    auto tc = brute_total_coloring(complete(4));
    REQUIRE(tc.k == 5);
    // Spot checks on the witness structure.
    for (auto& [e, c] : tc.edge_color) {
        REQUIRE(c >= 1);
        REQUIRE(c <= tc.k);
        REQUIRE(tc.vertex_color[std::size_t(e.first)] != c);
        REQUIRE(tc.vertex_color[std::size_t(e.second)] != c);
    }
}

TEST_CASE("chromatic index on knowns") {
    REQUIRE(brute_chromatic_index(Multigraph::from_graph(complete(3))) == 3);
    REQUIRE(brute_chromatic_index(Multigraph::from_graph(cycle(6))) == 2);
    Multigraph dbl(2);
    dbl.add_edge(0, 1);
    dbl.add_edge(0, 1);
    REQUIRE(brute_chromatic_index(dbl) == 2);
}

TEST_CASE("brute matching agrees with Tutte-Berge on small graphs") {
    for (int n = 1; n <= 6; ++n)
        for (const Graph& g : enumerate_graphs(n))
            REQUIRE(brute_max_matching_size(g) == brute_tutte_berge(g));
}

TEST_CASE("rainbow edge coloring oracle") {
    // In any proper 3-edge-coloring of K4 the color classes are the three
    // perfect matchings, so {0,1} and {2,3} cannot be forced apart with 3
    // colors; with 4 they can.
    Graph k4 = complete(4);
    PairList pm = {{0, 1}, {2, 3}};
    REQUIRE(!brute_rainbow_edge_coloring(k4, pm, 3).has_value());
    auto c = brute_rainbow_edge_coloring(k4, pm, 4);
    REQUIRE(c.has_value());
    REQUIRE(c->at({0, 1}) != c->at({2, 3}));

    // Forcing a triangle rainbow in 2 colors is impossible.
    Graph k3 = complete(3);
    REQUIRE(!brute_rainbow_edge_coloring(k3, {{0, 1}, {1, 2}, {0, 2}}, 2).has_value());
}
