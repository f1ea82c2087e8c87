#include <catch2/catch_amalgamated.hpp>

#include "totcol/graph.hpp"
#include "totcol/graph_io.hpp"
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

Graph path(int n) {
    Graph g(n);
    for (int v = 0; v + 1 < n; ++v) g.add_edge(v, v + 1);
    return g;
}

Graph random_graph(int n, double p, Rng& rng) {
    Graph g(n);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (rng.chance(p)) g.add_edge(u, v);
    return g;
}

} // namespace

TEST_CASE("complement of small graphs") {
    REQUIRE(complement(complete(4)).edge_count() == 0);

    Graph empty3(3);
    REQUIRE(complement(empty3) == complete(3));

    // C5 is self-complementary (up to isomorphism).
    Graph c5 = cycle(5);
    Graph cc5 = complement(c5);
    REQUIRE(cc5.edge_count() == 5);
    REQUIRE(canonical_key(c5) == canonical_key(cc5));
}

TEST_CASE("complement is an involution") {
    Rng rng(7);
    for (int trial = 0; trial < 30; ++trial) {
        Graph g = random_graph(rng.range(1, 12), 0.4, rng);
        REQUIRE(complement(complement(g)) == g);
    }
}

TEST_CASE("degree profile") {
    SECTION("K4 is regular, U empty") {
        auto p = degree_profile(complete(4), 0.1);
        REQUIRE(p.delta == 3);
        REQUIRE(p.Delta == 3);
        REQUIRE(p.regular());
        REQUIRE(p.V_delta.size() == 4);
        REQUIRE(p.V_Delta.size() == 4);
        REQUIRE(p.U_xi.empty());
        REQUIRE(p.middle.empty());
    }
    SECTION("star K_{1,3}") {
        Graph g(4);
        g.add_edge(0, 1);
        g.add_edge(0, 2);
        g.add_edge(0, 3);
        auto p = degree_profile(g, 0.1);
        REQUIRE(p.delta == 1);
        REQUIRE(p.Delta == 3);
        REQUIRE(p.U_xi.size() == 3);  // 3-1 >= 0.4
        REQUIRE(p.middle.empty());
    }
    SECTION("P3 with xi=1 has empty U") {
        auto p = degree_profile(path(3), 1.0);
        REQUIRE(p.Delta - p.delta == 1);
        REQUIRE(p.U_xi.empty());
        REQUIRE(p.middle.empty());
    }
}

TEST_CASE("degree sum equals twice edge count") {
    Rng rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        Graph g = random_graph(rng.range(1, 15), 0.5, rng);
        long long sum = 0;
        for (int v = 0; v < g.n(); ++v) sum += g.degree(v);
        REQUIRE(sum == 2 * g.edge_count());

        Multigraph h = Multigraph::from_graph(g);
        if (g.n() > 1) h.add_edge(0, 1);  // a parallel or fresh edge
        sum = 0;
        for (int v = 0; v < h.n(); ++v) sum += h.degree(v);
        REQUIRE(sum == 2 * h.edge_count());
    }
}

TEST_CASE("multigraph with multiplicities <= 1 behaves like the graph") {
    Rng rng(13);
    Graph g = random_graph(10, 0.5, rng);
    Multigraph h = Multigraph::from_graph(g);
    REQUIRE(h.max_multiplicity() <= 1);
    REQUIRE(h.edge_count() == g.edge_count());
    REQUIRE(h.max_degree() == g.max_degree());
    for (int v = 0; v < 10; ++v) REQUIRE(h.degree(v) == g.degree(v));
}

TEST_CASE("multigraph edge handles are stable") {
    Multigraph h(3);
    int e1 = h.add_edge(0, 1);
    int e2 = h.add_edge(0, 1);
    int e3 = h.add_edge(1, 2);
    REQUIRE(h.multiplicity(0, 1) == 2);
    REQUIRE(h.edge(e1).slot != h.edge(e2).slot);
    h.remove_edge(e1);
    REQUIRE(h.multiplicity(0, 1) == 1);
    REQUIRE(h.alive(e2));
    REQUIRE(h.edge(e3).u == 1);
    REQUIRE(h.parallel_partner(e2) == -1);
    int e4 = h.add_edge(1, 0);
    REQUIRE(h.parallel_partner(e2) == e4);
}

TEST_CASE("graph6 round trips") {
    SECTION("C~ decodes to K4") {
        Graph g = parse_graph6("C~");
        REQUIRE(g == complete(4));
        REQUIRE(emit_graph6(complete(4)) == "C~");
    }
    SECTION("@ is the single vertex") {
        Graph g = parse_graph6("@");
        REQUIRE(g.n() == 1);
        REQUIRE(g.edge_count() == 0);
    }
    SECTION("independent decoder cross-check on random graphs") {
        // Decode emitted bytes positionally, per the published definition.
        Rng rng(17);
        for (int trial = 0; trial < 25; ++trial) {
            Graph g = random_graph(rng.range(1, 30), 0.4, rng);
            std::string s = emit_graph6(g);
            int n = s[0] - 63;
            REQUIRE(n == g.n());
            int bit = 0;
            for (int v = 1; v < n; ++v)
                for (int u = 0; u < v; ++u, ++bit) {
                    int byte = 1 + bit / 6;
                    bool on = (s[std::size_t(byte)] - 63) >> (5 - bit % 6) & 1;
                    REQUIRE(on == g.has_edge(u, v));
                }
            REQUIRE(parse_graph6(s) == g);
        }
    }
    SECTION("large n header") {
        Graph g(100);
        g.add_edge(0, 99);
        Graph h = parse_graph6(emit_graph6(g));
        REQUIRE(h.n() == 100);
        REQUIRE(h.has_edge(0, 99));
        REQUIRE(h.edge_count() == 1);
    }
}

TEST_CASE("graph6 malformed inputs carry byte offsets") {
    REQUIRE_THROWS_AS(parse_graph6("C"), ParseError);
    REQUIRE_THROWS_AS(parse_graph6("C!"), ParseError);  // byte below 63
    try {
        parse_graph6("C\x01");
    } catch (const ParseError& e) {
        REQUIRE(e.offset() == 1);
    }
}

TEST_CASE("edge list parsing") {
    Graph g = parse_edge_list("2 1\n0 1\n");
    REQUIRE(g == complete(2));

    REQUIRE_THROWS_AS(parse_edge_list("2 1\n0 2\n"), ParseError);  // out of range
    REQUIRE_THROWS_AS(parse_edge_list("2 2\n0 1\n"), ParseError);  // truncated
    REQUIRE_THROWS_AS(parse_edge_list("3 1\n1 1\n"), ParseError);  // loop

    Rng rng(23);
    for (int trial = 0; trial < 10; ++trial) {
        Graph r = random_graph(rng.range(1, 12), 0.5, rng);
        REQUIRE(parse_edge_list(emit_edge_list(r)) == r);
    }
}
