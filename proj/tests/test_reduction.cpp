#include <catch2/catch_amalgamated.hpp>

#include "totcol/oracle.hpp"
#include "totcol/reduction.hpp"
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

Graph circulant(int n, int dist) {
    Graph g(n);
    for (int v = 0; v < n; ++v)
        for (int d = 1; d <= dist; ++d) g.add_edge(v, (v + d) % n);
    return g;
}

// A good coloring of G^M produced by the independent backtracking oracle.
std::vector<ColoredEdge> oracle_good_coloring(const AugmentedGraph& ag) {
    PairList specials = ag.M;
    specials.insert(specials.end(), ag.Ex.begin(), ag.Ex.end());
    auto sol = brute_rainbow_edge_coloring(ag.combined, specials, ag.base.max_degree() + 2);
    REQUIRE(sol.has_value());
    std::vector<ColoredEdge> out;
    for (auto& [e, c] : *sol) out.push_back({e.first, e.second, 0, c});
    return out;
}

} // namespace

TEST_CASE("augmented graph construction") {
    SECTION("C4 with one diagonal") {
        auto ag = build_augmented(cycle(4), {{0, 2}});
        REQUIRE(ag.combined.n() == 5);
        REQUIRE(ag.combined.degree(4) == 2);  // x joined to 1 and 3
        REQUIRE(ag.Ex.size() == 2);
    }
    SECTION("K4 with empty matching gives K5") {
        auto ag = build_augmented(complete(4), {});
        REQUIRE(ag.combined == complete(5));
    }
    SECTION("perfect complement matching isolates x") {
        Graph g = complete(6);
        for (int i = 0; i < 6; i += 2) g.remove_edge(i, i + 1);
        PairList m = {{0, 1}, {2, 3}, {4, 5}};
        auto ag = build_augmented(g, m);
        REQUIRE(ag.combined.degree(ag.x) == 0);
        REQUIRE(ag.Ex.empty());
    }
    SECTION("non-matching or in-graph edges rejected") {
        REQUIRE_THROWS_AS(build_augmented(cycle(4), {{0, 1}}), PreconditionError);
        REQUIRE_THROWS_AS(build_augmented(cycle(4), {{0, 2}, {2, 1}}), PreconditionError);
    }
}

TEST_CASE("good colorings transfer to total colorings") {
    SECTION("C4 with diagonal, hand-checkable 4-coloring") {
        Graph g = cycle(4);
        auto ag = build_augmented(g, {{0, 2}});
        std::vector<ColoredEdge> good = {
            {0, 1, 0, 4}, {1, 2, 0, 1}, {2, 3, 0, 2}, {3, 0, 0, 1},
            {0, 2, 0, 3}, {1, 4, 0, 2}, {3, 4, 0, 4},
        };
        auto tc = good_coloring_to_total(ag, good);
        REQUIRE(tc.k == 4);
        REQUIRE(validate_total(g, tc).ok);
        REQUIRE(brute_total_chromatic(g) == 4);
        // Vertex colors come from the special edges.
        REQUIRE(tc.vertex_color[0] == 3);
        REQUIRE(tc.vertex_color[2] == 3);
        REQUIRE(tc.vertex_color[1] == 2);
        REQUIRE(tc.vertex_color[3] == 4);
    }
    SECTION("K2 with empty matching: G^M is a triangle") {
        Graph g = complete(2);
        auto ag = build_augmented(g, {});
        REQUIRE(ag.combined == complete(3));
        auto good = oracle_good_coloring(ag);
        auto tc = good_coloring_to_total(ag, good);
        REQUIRE(tc.k == 3);
        REQUIRE(validate_total(g, tc).ok);
        REQUIRE(brute_total_chromatic(g) == 3);
    }
    SECTION("a non-good coloring is rejected with the failing clause") {
        Graph g = cycle(4);
        auto ag = build_augmented(g, {{0, 2}});
        std::vector<ColoredEdge> bad = {
            {0, 1, 0, 4}, {1, 2, 0, 1}, {2, 3, 0, 2}, {3, 0, 0, 1},
            {0, 2, 0, 4}, {1, 4, 0, 2}, {3, 4, 0, 4},
        };
        try {
            good_coloring_to_total(ag, bad);
            FAIL("expected rejection");
        } catch (const PreconditionError& e) {
            REQUIRE(e.name() == "not-good");
        }
    }
    SECTION("oracle-generated instances always transfer (desk-scale sweep)") {
        Rng rng(2);
        int done = 0;
        for (int t = 0; done < 60 && t < 200; ++t) {
            int n = rng.range(2, 9);
            Graph g(n);
            for (int u = 0; u < n; ++u)
                for (int v = u + 1; v < n; ++v)
                    if (rng.chance(0.7)) g.add_edge(u, v);
            auto cm = max_matching_complement(g);
            PairList M = cm.matching;
            // Keep the special system within Delta+2 colors.
            int need = std::max(0, n - g.max_degree() - 2);
            if (int(M.size()) < need) continue;
            while (int(M.size()) > need && rng.chance(0.3)) M.pop_back();
            auto ag = build_augmented(g, M);
            if (ag.combined.degree(ag.x) > g.max_degree() + 2) continue;
            PairList specials = ag.M;
            specials.insert(specials.end(), ag.Ex.begin(), ag.Ex.end());
            auto sol = brute_rainbow_edge_coloring(ag.combined, specials, g.max_degree() + 2);
            if (!sol) continue;  // tiny adversarial case without a good coloring
            std::vector<ColoredEdge> good;
            for (auto& [e, c] : *sol) good.push_back({e.first, e.second, 0, c});
            auto tc = good_coloring_to_total(ag, good);
            REQUIRE(validate_total(g, tc).ok);
            REQUIRE(tc.k <= g.max_degree() + 2);
            ++done;
        }
        REQUIRE(done >= 60);
    }
}

TEST_CASE("case classification") {
    SECTION("regular graph with a large complement matching lands in Case 1") {
        Graph g = circulant(20, 6);  // 12-regular, complement 7-regular
        auto ca = classify_and_pick_matching(g, 0.1, 0.001);
        REQUIRE(ca.which == CaseKind::Case1);
        REQUIRE(ca.plan == ReductionPlan::Direct);
        REQUIRE(int(ca.M.size()) == int(20 / 2 - 0.1 * 0.1 * 20));
        REQUIRE(is_matching_in_complement(g, ca.M));
    }
    SECTION("a vertex far below Delta sends the graph to Case 2") {
        Graph g = circulant(30, 10);  // 20-regular
        // Lower a few degrees so U_xi is nonempty at tiny xi.
        g.remove_edge(0, 1);
        g.remove_edge(2, 3);
        auto ca = classify_and_pick_matching(g, 0.1, 0.001);
        REQUIRE(ca.which == CaseKind::Case2);
        REQUIRE(is_matching_in_complement(g, ca.M));
    }
    SECTION("hypothesis violations are named") {
        try {
            classify_and_pick_matching(cycle(8), 0.1, 0.001);
            FAIL("expected min-degree rejection");
        } catch (const PreconditionError& e) {
            REQUIRE(e.name() == "min-degree-hypothesis");
        }
        try {
            classify_and_pick_matching(complete(8), 0.1, 0.001);
            FAIL("expected Hilton-Hind routing");
        } catch (const PreconditionError& e) {
            REQUIRE(e.name() == "hilton-hind-regime");
        }
    }
    SECTION("equitable pair matching has size n-1-Delta") {
        Rng rng(4);
        for (int t = 0; t < 20; ++t) {
            int n = rng.range(8, 30);
            Graph g(n);
            for (int u = 0; u < n; ++u)
                for (int v = u + 1; v < n; ++v)
                    if (rng.chance(0.75)) g.add_edge(u, v);
            if (2 * g.min_degree() <= n) continue;
            auto m = equitable_pair_matching(g, t);
            REQUIRE(int(m.size()) == n - 1 - g.max_degree());
            REQUIRE(is_matching_in_complement(g, m));
        }
    }
}

TEST_CASE("case 2a regularization") {
    SECTION("already-regular graph: zero layers") {
        Graph g = circulant(20, 6);
        auto r = regularize_case2a(g, 0.1, 0.05);
        REQUIRE(r.layers.empty());
        REQUIRE(r.core == g);
        REQUIRE(r.core_degree == 12);
    }
    SECTION("K7 minus an edge: one forest layer, 4-regular core") {
        Graph g = complete(7);
        g.remove_edge(0, 1);
        // |V_delta| = 2 >= xi n and U empty at xi = 0.2 (xi n = 1.4).
        auto r = regularize_case2a(g, 0.1, 0.2);
        REQUIRE(r.core_degree == 4);  // Delta' - 2k = 6 - 2
        int forests = 0;
        for (auto& l : r.layers) forests += l.kind == Layer::Forest;
        REQUIRE(forests == 1);
        auto prof = degree_profile(r.core, 0.2);
        REQUIRE(prof.regular());
        REQUIRE(prof.Delta == 4);
    }
    SECTION("random near-regular instances regularize with verified degrees") {
        Rng rng(6);
        int done = 0;
        for (int t = 0; done < 12 && t < 200; ++t) {
            int n = 2 * rng.range(22, 35);
            int d = 2 * rng.range(int(0.31 * n), int(0.36 * n));
            Graph g = circulant(n, d / 2);
            // Remove a small matching so |V_delta| is large but spread is 1.
            int j = 2;
            for (int i = 0; i < 2 * j; i += 2) g.remove_edge(i, i + 1);
            double xi = 0.08;
            auto prof = degree_profile(g, xi);
            if (double(prof.V_delta.size()) < xi * n || double(prof.U_xi.size()) >= xi * n)
                continue;
            // Every forest layer costs the core two degrees; keep instances
            // whose Dirac margin can absorb one layer per deficit edge.
            if (2 * (g.min_degree() - 2 * j) <= n + 2) continue;
            auto r = regularize_case2a(g, 0.1, xi, t);
            auto core_prof = degree_profile(r.core, xi);
            REQUIRE(core_prof.regular());
            REQUIRE(core_prof.Delta == r.core_degree);
            // Per-vertex removed degree equals d_G'(v) - (Delta' - 2k).
            for (int v = 0; v < n; ++v) {
                int removed = 0;
                for (auto& l : r.layers) {
                    if (l.kind == Layer::Matching) {
                        for (auto [a, b] : l.matching) removed += (a == v) + (b == v);
                    } else {
                        for (auto& p : l.paths)
                            for (std::size_t i = 0; i + 1 < p.size(); ++i)
                                removed += (p[i] == v) + (p[i + 1] == v);
                    }
                }
                REQUIRE(g.degree(v) - removed == r.core_degree);
            }
            ++done;
        }
        REQUIRE(done >= 12);
    }
}

TEST_CASE("case 2b peeling") {
    SECTION("regular-minus-an-edge terminates after one peel") {
        Graph g = circulant(20, 7);  // 14-regular
        g.remove_edge(0, 7);
        double xi = 0.2;  // xi n = 4 > |V_delta| = 2
        auto r = peel_case2b(g, 0.1, xi);
        REQUIRE(r.matchings.size() == 1);
        REQUIRE(r.kind == PeelResult::VdeltaBig);
        for (auto& m : r.matchings) REQUIRE(is_matching(m, 20));
        auto prof = degree_profile(r.terminal, xi);
        REQUIRE(double(prof.V_delta.size()) >= xi * 20);
    }
    SECTION("regular graphs are rejected") {
        REQUIRE_THROWS_AS(peel_case2b(circulant(20, 7), 0.1, 0.2), PreconditionError);
    }
    SECTION("random dense peels terminate with matching layers and held delta") {
        Rng rng(11);
        int done = 0;
        for (int t = 0; done < 10 && t < 80; ++t) {
            int n = 2 * rng.range(25, 40);
            Graph g = circulant(n, int(0.31 * n));
            // Carve a small degree valley: one delta vertex below a few
            // middle-degree vertices, most at Delta.
            int w = rng.range(2, n - 3);
            g.remove_edge(w, w + 1);
            g.remove_edge(w - 1, w);
            double xi = 0.05;
            auto prof = degree_profile(g, xi);
            if (prof.regular() || double(prof.V_delta.size()) >= xi * n ||
                double(prof.U_xi.size()) >= xi * n)
                continue;
            double eps = 2.0 * g.min_degree() / n - 1.0 - 0.02;
            if (eps <= 0) continue;
            auto r = peel_case2b(g, eps, xi);
            for (auto& m : r.matchings) REQUIRE(is_matching(m, n));
            REQUIRE(2.0 * r.terminal.min_degree() >= (1.0 + eps) * n - 1e-9);
            REQUIRE(int(r.matchings.size()) <= g.max_degree() - g.min_degree() + 1);
            ++done;
        }
        REQUIRE(done >= 10);
    }
}

TEST_CASE("lifting colorings through layers") {
    SECTION("zero layers is the identity") {
        GoodColoring inner{{{0, 1, 0, 1}}, 3};
        auto out = lift_coloring(inner, {}, 1);
        REQUIRE(out.edges == inner.edges);
        REQUIRE(out.palette == 3);
    }
    SECTION("one matching layer adds exactly one color") {
        GoodColoring inner{{{0, 1, 0, 1}}, 3};
        Layer m;
        m.kind = Layer::Matching;
        m.matching = {{2, 3}};
        auto out = lift_coloring(inner, {m}, 2);
        REQUIRE(out.palette == 4);
        REQUIRE(out.edges.back() == ColoredEdge{2, 3, 0, 4});
    }
    SECTION("forest layers alternate two fresh colors") {
        GoodColoring inner{{}, 2};
        Layer f;
        f.kind = Layer::Forest;
        f.paths = {{0, 1, 2, 3}};
        auto out = lift_coloring(inner, {f}, 2);
        REQUIRE(out.palette == 4);
        REQUIRE(out.edges.size() == 3);
        REQUIRE(std::get<3>(out.edges[0]) != std::get<3>(out.edges[1]));
        REQUIRE(std::get<3>(out.edges[0]) == std::get<3>(out.edges[2]));
    }
    SECTION("palette overrun is a named error") {
        GoodColoring inner{{}, 4};
        Layer m;
        m.kind = Layer::Matching;
        m.matching = {{0, 1}};
        REQUIRE_THROWS_AS(lift_coloring(inner, {m}, 2), PreconditionError);
    }
}
