#pragma once

// Edge-coloring theorems as algorithms: Misra-Gries fans for simple graphs at
// Delta+1, the multifan engine for multigraphs at Delta+mu, Konig alternating
// paths for bipartite multigraphs at Delta, and the two rainbow-preserving
// extension lemmas.

#include <memory>
#include <vector>

#include "totcol/bipartite.hpp"
#include "totcol/edge_coloring.hpp"
#include "totcol/error.hpp"
#include "totcol/graph.hpp"
#include "totcol/multifan.hpp"

namespace totcol {

namespace detail {

// Classical Vizing-fan coloring of a simple graph with k >= Delta+1 colors
// (Misra-Gries). Deterministic; always succeeds.
inline void misra_gries(EdgeColoring& c) {
    const Multigraph& g = c.graph();
    for (int e0 = 0; e0 < g.edge_capacity(); ++e0) {
        if (!g.alive(e0) || c.colored(e0)) continue;
        Vertex u = g.edge(e0).u;
        Vertex v0 = g.edge(e0).v;

        // Maximal simple fan from v0: next vertex's edge color is free at the
        // previous fan vertex.
        auto grow_fan = [&](Vertex first) {
            std::vector<Vertex> fan = {first};
            std::vector<int> fan_edge = {e0};
            std::vector<char> used(std::size_t(g.n()), 0);
            used[std::size_t(first)] = 1;
            bool grew = true;
            while (grew) {
                grew = false;
                int want = -1, wid = -1;
                c.missing_set(fan.back()).for_each([&](int b) {
                    if (want >= 0) return;
                    int id = c.at(u, b + 1);
                    if (id >= 0 && !used[std::size_t(g.other_end(id, u))]) {
                        want = b + 1;
                        wid = id;
                    }
                });
                if (want >= 0) {
                    Vertex w = g.other_end(wid, u);
                    used[std::size_t(w)] = 1;
                    fan.push_back(w);
                    fan_edge.push_back(wid);
                    grew = true;
                }
            }
            return std::pair(fan, fan_edge);
        };

        auto rotate_and_finish = [&](const std::vector<Vertex>& fan,
                                     const std::vector<int>& fan_edge, std::size_t j, int d) {
            // Shift colors toward e0, uncolor (u, fan[j]), then color it d.
            (void)fan;
            std::vector<int> cols(j + 1, 0);
            for (std::size_t i = 1; i <= j; ++i) cols[i] = c.color(fan_edge[i]);
            for (std::size_t i = 1; i <= j; ++i) c.unassign(fan_edge[i]);
            for (std::size_t i = 0; i < j; ++i) c.assign(fan_edge[i], cols[i + 1]);
            c.assign(fan_edge[j], d);
        };

        auto [fan, fan_edge] = grow_fan(v0);
        int cu = c.first_missing(u);
        TOTCOL_CHECK(cu > 0, "vizing", "center saturated: k < Delta+1?");

        // Direct finish if some fan vertex shares a missing color with u.
        bool done = false;
        for (std::size_t j = 0; j < fan.size() && !done; ++j) {
            int d = c.first_common_missing(u, fan[j]);
            if (d > 0) {
                rotate_and_finish(fan, fan_edge, j, d);
                done = true;
            }
        }
        if (done) continue;

        int d = c.first_missing(fan.back());
        TOTCOL_CHECK(d > 0, "vizing", "fan vertex saturated: k < Delta+1?");
        // Invert the maximal (cu,d)-path from u, then finish on the surviving
        // prefix at the first vertex with d free.
        c.switch_chain(c.alternating_chain(u, cu, d));
        std::size_t limit = fan.size();
        for (std::size_t i = 1; i < fan.size(); ++i) {
            int col = c.color(fan_edge[i]);
            if (!col || !c.is_missing(fan[i - 1], col)) {
                limit = i;
                break;
            }
        }
        for (std::size_t j = 0; j < limit && !done; ++j) {
            int dd = c.first_common_missing(u, fan[j]);
            if (dd > 0) {
                rotate_and_finish(fan, fan_edge, j, dd);
                done = true;
            }
        }
        TOTCOL_CHECK(done, "vizing", "Misra-Gries invariant failed: no finishing vertex");
    }
}

} // namespace detail

// Proper k-edge-coloring of a multigraph: k >= Delta+1 for simple graphs
// (classical Vizing fans), k >= Delta+mu in general (multifan engine).
inline EdgeColoring vizing_color(const Multigraph& g, int k) {
    int mu = g.max_multiplicity();
    if (mu <= 1) {
        TOTCOL_REQUIRE(k >= g.max_degree() + 1, "palette",
                       "vizing_color needs k >= Delta+1 on simple graphs");
        EdgeColoring c(g, k);
        detail::misra_gries(c);
        return c;
    }
    TOTCOL_REQUIRE(k >= g.max_degree() + mu, "palette",
                   "vizing_color needs k >= Delta+mu on multigraphs");
    EdgeColoring c(g, k);
    ExtendOptions opt;
    opt.mode = ExtendOptions::Generic;
    extend_coloring(c, opt);
    return c;
}

// Coloring bundled with the multigraph host it references; used when the
// caller starts from a simple Graph and has no host of its own.
struct GraphColoring {
    std::unique_ptr<Multigraph> host;
    EdgeColoring coloring;
};

inline GraphColoring vizing_color(const Graph& g, int k) {
    auto host = std::make_unique<Multigraph>(Multigraph::from_graph(g));
    EdgeColoring c = vizing_color(*host, k);
    return {std::move(host), std::move(c)};
}

// Konig: bipartite multigraphs are Delta-edge-colorable, by the alternating
// path flip whose bipartite parity argument guarantees the flip frees a
// common color.
inline EdgeColoring konig_color(const Multigraph& g) {
    Graph support(g.n());
    for (int id : g.edge_ids()) {
        auto& e = g.edge(id);
        if (!support.has_edge(e.u, e.v)) support.add_edge(e.u, e.v);
    }
    auto side = bipartition(support);
    TOTCOL_REQUIRE(side.has_value(), "non-bipartite", "konig_color needs a bipartite multigraph");
    int k = std::max(1, g.max_degree());
    EdgeColoring c(g, k);
    for (int id : g.edge_ids()) {
        auto& e = g.edge(id);
        int common = c.first_common_missing(e.u, e.v);
        if (common > 0) {
            c.assign(id, common);
            continue;
        }
        int a = c.first_missing(e.u);
        int b = c.first_missing(e.v);
        TOTCOL_CHECK(a > 0 && b > 0, "konig", "saturated endpoint with k = Delta");
        // v misses b and sees a; flipping the maximal (a,b)-path from v frees
        // a at v. The path cannot reach u: it would close an odd walk.
        c.switch_chain(c.alternating_chain(e.v, a, b));
        TOTCOL_CHECK(c.is_missing(e.u, a) && c.is_missing(e.v, a), "konig",
                     "alternating flip failed to free a common color");
        c.assign(id, a);
    }
    return c;
}

// --- rainbow-preserving extensions -----------------------------------------

struct RainbowInstance {
    std::vector<int> J;        // edge ids, precolored, never uncolored
    std::vector<int> J0;       // subset of J: pairwise-distinct colors
    Vertex x = -1;             // star center (or -1 when the star is empty)
};

namespace detail {

inline void check_rainbow_preconditions(const Multigraph& g, const RainbowInstance& inst,
                                        const EdgeColoring& c, bool mode_b) {
    std::vector<char> inJ(std::size_t(g.edge_capacity()), 0);
    for (int id : inst.J) inJ[std::size_t(id)] = 1;
    for (int id : inst.J0)
        TOTCOL_REQUIRE(inJ[std::size_t(id)], "J0-subset", "J0 must be a subset of J");

    TOTCOL_REQUIRE(g.max_multiplicity() <= 2, "multiplicity", "mu(G) <= 2 required");
    for (int v = 0; v < g.n(); ++v) {
        if (v == inst.x) continue;
        int doubled = 0;
        for (int u = 0; u < g.n(); ++u)
            if (u != v && g.multiplicity(v, u) >= 2) ++doubled;
        TOTCOL_REQUIRE(doubled <= 1, "double-partner",
                       "vertex " + std::to_string(v) + " has two doubled partners");
    }
    // G - J simple.
    for (int id : g.edge_ids())
        if (!inJ[std::size_t(id)]) {
            int partner = g.parallel_partner(id);
            TOTCOL_REQUIRE(partner < 0 || inJ[std::size_t(partner)], "G-minus-J-simple",
                           "parallel pair survives outside J");
        }
    // J0 = matching + star at x covering all of x's edges; star edges in J.
    std::vector<char> inJ0(std::size_t(g.edge_capacity()), 0);
    for (int id : inst.J0) inJ0[std::size_t(id)] = 1;
    std::vector<char> hit(std::size_t(g.n()), 0);
    for (int id : inst.J0) {
        auto& e = g.edge(id);
        if (inst.x >= 0 && (e.u == inst.x || e.v == inst.x)) continue;  // star part
        TOTCOL_REQUIRE(!hit[std::size_t(e.u)] && !hit[std::size_t(e.v)], "J0-matching",
                       "non-star part of J0 is not a matching");
        hit[std::size_t(e.u)] = hit[std::size_t(e.v)] = 1;
    }
    if (inst.x >= 0) {
        g.for_edges_at(inst.x, [&](int id) {
            TOTCOL_REQUIRE(inJ[std::size_t(id)], "star-in-J",
                           "every edge at x must belong to J");
        });
        for (int id : inst.J0) {
            auto& e = g.edge(id);
            if (e.u == inst.x || e.v == inst.x) {
                Vertex other = e.u == inst.x ? e.v : e.u;
                TOTCOL_REQUIRE(!hit[std::size_t(other)], "J0-star-disjoint",
                               "star leaf also covered by the J0 matching");
            }
        }
    }
    // Input coloring: all J colored, J0 rainbow, nothing else colored.
    std::vector<char> used_color(std::size_t(c.k()) + 1, 0);
    for (int id : g.edge_ids()) {
        if (inJ[std::size_t(id)])
            TOTCOL_REQUIRE(c.colored(id), "J-colored", "J edge enters uncolored");
        else
            TOTCOL_REQUIRE(!c.colored(id), "J-only", "non-J edge enters colored");
    }
    for (int id : inst.J0) {
        int col = c.color(id);
        TOTCOL_REQUIRE(!used_color[std::size_t(col)], "J0-rainbow",
                       "input coloring repeats a color on J0");
        used_color[std::size_t(col)] = 1;
    }
    (void)mode_b;
}

} // namespace detail

// Extends a coloring of g[J] to all of g with k colors, keeping J0 rainbow.
// Statement (a): k >= Delta(g)+4 guarantees termination of the case moves.
inline EdgeColoring extend_rainbow_coloring_a(const Multigraph& g, const RainbowInstance& inst,
                                              const EdgeColoring& coloring_of_J, int k,
                                              ExtendDiag* diag = nullptr,
                                              bool enforce_hypotheses = true) {
    if (enforce_hypotheses)
        TOTCOL_REQUIRE(k >= g.max_degree() + 4, "palette", "statement (a) needs k >= Delta+4");
    detail::check_rainbow_preconditions(g, inst, coloring_of_J, false);
    EdgeColoring c = coloring_of_J;
    c.grow(std::max(k, c.k()));
    ExtendOptions opt;
    opt.mode = ExtendOptions::LemmaA;
    opt.in_J.assign(std::size_t(g.edge_capacity()), 0);
    for (int id : inst.J) opt.in_J[std::size_t(id)] = 1;
    opt.in_J0.assign(std::size_t(g.edge_capacity()), 0);
    for (int id : inst.J0) opt.in_J0[std::size_t(id)] = 1;
    opt.x = inst.x;
    extend_coloring(c, opt, diag);
    return c;
}

// Statement (b): g-x bipartite simple with sides (X,Y), Delta(g[J]-x) <= 1,
// every X-vertex of degree < k, k >= Delta(g).
inline EdgeColoring extend_rainbow_coloring_b(const Multigraph& g, const RainbowInstance& inst,
                                              const EdgeColoring& coloring_of_J, int k,
                                              const std::vector<int>& side,
                                              ExtendDiag* diag = nullptr,
                                              bool enforce_hypotheses = true) {
    if (enforce_hypotheses) {
        TOTCOL_REQUIRE(k >= g.max_degree(), "palette", "statement (b) needs k >= Delta");
        for (int v = 0; v < g.n(); ++v) {
            if (v == inst.x) continue;
            TOTCOL_REQUIRE(side[std::size_t(v)] == 0 || side[std::size_t(v)] == 1, "sides",
                           "every vertex of g-x needs a side");
            if (side[std::size_t(v)] == 0)
                TOTCOL_REQUIRE(g.degree(v) < k, "X-degree",
                               "X-vertex " + std::to_string(v) + " has degree >= k");
        }
        // g - x bipartite simple; J - x a matching.
        for (int id : g.edge_ids()) {
            auto& e = g.edge(id);
            if (e.u == inst.x || e.v == inst.x) continue;
            TOTCOL_REQUIRE(side[std::size_t(e.u)] != side[std::size_t(e.v)], "bipartite",
                           "g - x has an inner-side edge");
            TOTCOL_REQUIRE(g.multiplicity(e.u, e.v) <= 1, "simple", "g - x has a parallel pair");
        }
        std::vector<char> hit(std::size_t(g.n()), 0);
        for (int id : inst.J) {
            auto& e = g.edge(id);
            if (e.u == inst.x || e.v == inst.x) continue;
            TOTCOL_REQUIRE(!hit[std::size_t(e.u)] && !hit[std::size_t(e.v)], "J-minus-x-matching",
                           "Delta(g[J]-x) <= 1 violated");
            hit[std::size_t(e.u)] = hit[std::size_t(e.v)] = 1;
        }
    }
    detail::check_rainbow_preconditions(g, inst, coloring_of_J, true);
    EdgeColoring c = coloring_of_J;
    c.grow(std::max(k, c.k()));
    ExtendOptions opt;
    opt.mode = ExtendOptions::LemmaB;
    opt.in_J.assign(std::size_t(g.edge_capacity()), 0);
    for (int id : inst.J) opt.in_J[std::size_t(id)] = 1;
    opt.in_J0.assign(std::size_t(g.edge_capacity()), 0);
    for (int id : inst.J0) opt.in_J0[std::size_t(id)] = 1;
    opt.x = inst.x;
    opt.side = side;
    extend_coloring(c, opt, diag);
    return c;
}

} // namespace totcol
