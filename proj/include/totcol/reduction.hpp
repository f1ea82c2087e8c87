#pragma once

// The reduction layer: G^M construction, the good-coloring to total-coloring
// transfer, matching selection with the case split, Case 2a regularization,
// Case 2b matching peeling, and color lifting across peeled layers.

#include <algorithm>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "totcol/combinatorial.hpp"
#include "totcol/equalize.hpp"
#include "totcol/error.hpp"
#include "totcol/graph.hpp"
#include "totcol/matching.hpp"
#include "totcol/paths.hpp"
#include "totcol/verify.hpp"
#include "totcol/vizing.hpp"

namespace totcol {

struct AugmentedGraph {
    Graph base;      // G
    PairList M;      // matching in the complement of G
    Vertex x = -1;   // the added vertex, index base.n()
    PairList Ex;     // {x u : u not saturated by M}
    Graph combined;  // G^M on base.n()+1 vertices
};

inline AugmentedGraph build_augmented(const Graph& g, const PairList& M) {
    TOTCOL_REQUIRE(is_matching_in_complement(g, M), "matching-in-complement",
                   "M must be a matching of the complement of G");
    AugmentedGraph ag;
    ag.base = g;
    ag.M = M;
    ag.x = g.n();
    ag.combined = Graph(g.n() + 1);
    for (auto [u, v] : g.edges()) ag.combined.add_edge(u, v);
    std::vector<char> saturated(std::size_t(g.n()), 0);
    for (auto [u, v] : M) {
        ag.combined.add_edge(u, v);
        saturated[std::size_t(u)] = saturated[std::size_t(v)] = 1;
    }
    for (int v = 0; v < g.n(); ++v)
        if (!saturated[std::size_t(v)]) {
            ag.combined.add_edge(v, ag.x);
            ag.Ex.push_back({v, ag.x});
        }
    TOTCOL_CHECK(ag.combined.degree(ag.x) == g.n() - 2 * int(M.size()), "augmented",
                 "d(x) != n - 2|M|");
    return ag;
}

// A good edge-coloring of G^M transfers to a total coloring of G: each
// vertex takes the color of its unique edge in M u E(x).
inline TotalColoring good_coloring_to_total(const AugmentedGraph& ag,
                                            const std::vector<ColoredEdge>& coloring) {
    Verdict good = validate_good(ag.base, ag.M, coloring);
    TOTCOL_REQUIRE(good.ok, "not-good", good.clause + ": " + good.detail);

    std::map<VertexPair, int> color;
    for (auto [u, v, slot, c] : coloring) {
        (void)slot;
        color[ordered(u, v)] = c;
    }
    TotalColoring tc;
    tc.k = ag.base.max_degree() + 2;
    tc.vertex_color.assign(std::size_t(ag.base.n()), 0);
    for (auto [u, v] : ag.M) {
        tc.vertex_color[std::size_t(u)] = color.at(ordered(u, v));
        tc.vertex_color[std::size_t(v)] = color.at(ordered(u, v));
    }
    for (auto [u, xv] : ag.Ex) tc.vertex_color[std::size_t(u)] = color.at(ordered(u, xv));
    for (auto [u, v] : ag.base.edges()) tc.edge_color[{u, v}] = color.at({u, v});

    Verdict total = validate_total(ag.base, tc);
    TOTCOL_CHECK(total.ok, "good-to-total", total.clause + ": " + total.detail);
    return tc;
}

// --- case selection ---------------------------------------------------------

enum class CaseKind { Case1, Case2 };
enum class ReductionPlan { Direct, Case2a, Case2b };

struct CaseAssignment {
    CaseKind which = CaseKind::Case1;
    ReductionPlan plan = ReductionPlan::Direct;
    PairList M;
    double eps = 0, xi = 0;
    // diagnostics
    int U_size = 0, Vdelta_size = 0, middle_size = 0;
    bool regular = false;
    bool used_fallback_matching = false;  // |M| = n-1-Delta instead of the target
};

// Matching of the complement with |M| = n-1-Delta(g), extracted from the
// size-2 classes of an equitable (Delta+1)-coloring.
inline PairList equitable_pair_matching(const Graph& g, std::uint64_t seed = 0) {
    int k = g.max_degree() + 1;
    auto col = equitable_vertex_coloring(g, k, seed);
    std::vector<std::vector<Vertex>> classes(std::size_t(k) + 1);
    for (int v = 0; v < g.n(); ++v) classes[std::size_t(col[std::size_t(v)])].push_back(v);
    PairList out;
    for (int c = 1; c <= k; ++c) {
        TOTCOL_CHECK(classes[std::size_t(c)].size() <= 2, "equitable-pairs",
                     "class of size > 2 though Delta >= n/2");
        if (classes[std::size_t(c)].size() == 2)
            out.push_back({classes[std::size_t(c)][0], classes[std::size_t(c)][1]});
    }
    TOTCOL_CHECK(int(out.size()) == g.n() - 1 - g.max_degree(), "equitable-pairs",
                 "expected exactly n-1-Delta size-2 classes");
    TOTCOL_CHECK(is_matching_in_complement(g, out), "equitable-pairs",
                 "size-2 classes must be complement edges");
    return out;
}

// The theorem's case split. Requires delta >= (1+eps) n/2 and Delta < 3n/4;
// the second failure is routed to the out-of-scope large-Delta regime.
inline CaseAssignment classify_and_pick_matching(const Graph& g, double eps, double xi,
                                                 std::uint64_t seed = 0) {
    int n = g.n();
    TOTCOL_REQUIRE(n >= 2, "order", "classification needs n >= 2");
    TOTCOL_REQUIRE(2.0 * g.min_degree() >= (1.0 + eps) * n, "min-degree-hypothesis",
                   "delta(G) < (1+eps) n/2");
    TOTCOL_REQUIRE(4 * g.max_degree() < 3 * n, "hilton-hind-regime",
                   "Delta(G) >= 3n/4 is outside scope (covered by the large-Delta result)");

    auto prof = degree_profile(g, xi);
    CaseAssignment out;
    out.eps = eps;
    out.xi = xi;
    out.U_size = int(prof.U_xi.size());
    out.Vdelta_size = int(prof.V_delta.size());
    out.middle_size = int(prof.middle.size());
    out.regular = prof.regular();

    int target = int(n / 2.0 - 0.1 * eps * n);
    target = std::min(target, n / 2);

    if (double(prof.U_xi.size()) >= xi * n) {
        out.which = CaseKind::Case2;
        out.plan = ReductionPlan::Direct;
        auto cm = complement_matching(g, xi, target);
        if (!cm.shortfall) {
            out.M = cm.matching;
        } else {
            out.M = equitable_pair_matching(g, seed);
            out.used_fallback_matching = true;
        }
        return out;
    }

    // |U_xi| < xi n: the large-matching lemma promises the full target.
    auto cm = complement_matching(g, xi, target);
    TOTCOL_CHECK(!cm.shortfall, "lemma11-shortfall",
                 "complement matching below floor(n/2 - 0.1 eps n) = " + std::to_string(target) +
                     " despite |U_xi| < xi n (found " + std::to_string(cm.matching.size()) + ")");
    out.M = cm.matching;
    out.which = CaseKind::Case1;

    if (prof.regular()) {
        out.plan = ReductionPlan::Direct;
        return out;
    }
    bool case1_shape = double(prof.V_delta.size()) < xi * n &&
                       (n - int(prof.V_delta.size())) % 2 == 1 && prof.middle.empty();
    if (case1_shape) {
        out.plan = ReductionPlan::Direct;
        return out;
    }
    if (double(prof.V_delta.size()) >= xi * n) {
        out.plan = ReductionPlan::Case2a;
    } else {
        out.plan = ReductionPlan::Case2b;
    }
    return out;
}

// --- Case 2a: regularization -----------------------------------------------

struct Layer {
    enum Kind { Matching, Forest } kind = Matching;
    PairList matching;                       // Kind::Matching
    std::vector<std::vector<Vertex>> paths;  // Kind::Forest (linear forest)
    int fresh_colors() const { return kind == Matching ? 1 : 2; }
};

struct RegularizeResult {
    Graph core;                 // the regular graph G'_k
    std::vector<Layer> layers;  // in peel order: outer-first
    int core_degree = 0;        // Delta' - 2k, verified
};

inline RegularizeResult regularize_case2a(const Graph& g, double eps, double xi,
                                          std::uint64_t seed = 0) {
    int n = g.n();
    auto prof = degree_profile(g, xi);
    TOTCOL_REQUIRE(double(prof.V_delta.size()) >= xi * n, "Vdelta-size",
                   "Case 2a needs |V_delta| >= xi n");
    TOTCOL_REQUIRE(double(prof.U_xi.size()) < xi * n, "U-size", "Case 2a needs |U_xi| < xi n");

    RegularizeResult out;
    Graph cur = g;
    int DeltaPrime = g.max_degree();

    if (g.max_degree() % 2 == 1 && n % 2 == 1) {
        // Near-perfect matching from a Hamilton cycle, unsaturating a
        // minimum-degree vertex; Delta' drops to Delta-1.
        auto cyc = dirac_hamilton_cycle(g);
        Vertex v1 = prof.V_delta.front();
        std::size_t at = std::size_t(std::find(cyc.begin(), cyc.end(), v1) - cyc.begin());
        Layer F;
        F.kind = Layer::Matching;
        for (int i = 1; i + 1 < n; i += 2) {
            Vertex a = cyc[(at + std::size_t(i)) % cyc.size()];
            Vertex b = cyc[(at + std::size_t(i) + 1) % cyc.size()];
            F.matching.push_back({a, b});
            cur.remove_edge(a, b);
        }
        out.layers.push_back(std::move(F));
        DeltaPrime = g.max_degree() - 1;
        TOTCOL_CHECK(cur.max_degree() == DeltaPrime, "case2a-F", "Delta did not drop by one");
    }

    // Multigraph L realizing d_i = Delta' - d_{G'}(v_i).
    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        return cur.degree(a) != cur.degree(b) ? cur.degree(a) < cur.degree(b) : a < b;
    });
    std::vector<int> deficits(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        deficits[std::size_t(i)] = DeltaPrime - cur.degree(order[std::size_t(i)]);
    auto realized = hakimi_realize(deficits);
    TOTCOL_CHECK(std::holds_alternative<Multigraph>(realized), "case2a-hakimi",
                 "deficit sequence infeasible: " +
                     (std::holds_alternative<HakimiInfeasible>(realized)
                          ? std::get<HakimiInfeasible>(realized).condition
                          : std::string("?")));
    Multigraph L = std::get<Multigraph>(std::move(realized));

    if (L.edge_count() > 0) {
        // Fewest layers wins at desk scale: color L with Delta(L)+mu(L)
        // colors rather than ceil(2 xi n) (each forest costs the core two
        // degrees); the asymptotic layer bound is unchanged.
        int k0 = std::max(L.max_degree() + std::max(1, L.max_multiplicity()), 1);
        EdgeColoring lc = vizing_color(L, k0);
        equalize(lc);
        int chunk = std::max(1, int(0.5 * std::sqrt(xi) * n));
        // Split each class into matchings of bounded size, in edge-id order.
        std::vector<PairList> small;
        for (int c = 1; c <= k0; ++c) {
            PairList cls;
            for (int id : L.edge_ids())
                if (lc.color(id) == c)
                    cls.push_back({order[std::size_t(L.edge(id).u)], order[std::size_t(L.edge(id).v)]});
            for (std::size_t i = 0; i < cls.size(); i += std::size_t(chunk))
                small.emplace_back(cls.begin() + long(i),
                                   cls.begin() + long(std::min(cls.size(), i + std::size_t(chunk))));
        }
        // Merge vertex-disjoint pieces under the size cap: every forest layer
        // costs the core two degrees, so fewer layers preserve the margin.
        for (std::size_t a = 0; a < small.size(); ++a)
            for (std::size_t b = a + 1; b < small.size(); ++b) {
                if (small[a].size() + small[b].size() > std::size_t(chunk)) continue;
                PairList merged = small[a];
                merged.insert(merged.end(), small[b].begin(), small[b].end());
                if (!is_matching(merged, n)) continue;
                small[a] = std::move(merged);
                small[b].clear();
            }
        small.erase(std::remove_if(small.begin(), small.end(),
                                   [](const PairList& p) { return p.empty(); }),
                    small.end());
        Rng rng(seed);
        std::vector<PairList> pending(small.rbegin(), small.rend());
        while (!pending.empty()) {
            PairList mi = std::move(pending.back());
            pending.pop_back();
            if (mi.empty()) continue;
            double eps_cur = 2.0 * cur.min_degree() / n - 1.0;
            TOTCOL_CHECK(eps_cur > 0, "case2a-degree",
                         "peel depth destroyed the Dirac margin (xi too large for this n)");
            // Respect the linking lemma's pair budget at the current margin.
            std::size_t budget = std::size_t(std::max(1.0, eps_cur * n / 8.0 + 2.0));
            if (mi.size() > budget) {
                PairList rest(mi.begin() + long(budget), mi.end());
                mi.resize(budget);
                pending.push_back(std::move(rest));
            }
            auto forest = linking_paths(cur, mi, eps_cur, rng.raw());
            Layer lay;
            lay.kind = Layer::Forest;
            lay.paths = forest.paths;
            for (auto& p : lay.paths)
                for (std::size_t j = 0; j + 1 < p.size(); ++j) cur.remove_edge(p[j], p[j + 1]);
            out.layers.push_back(std::move(lay));
        }
        (void)eps;
    }

    int kcount = 0;
    for (auto& l : out.layers)
        if (l.kind == Layer::Forest) ++kcount;
    out.core_degree = DeltaPrime - 2 * kcount;
    auto final_prof = degree_profile(cur, xi);
    TOTCOL_CHECK(final_prof.regular() && final_prof.Delta == out.core_degree, "case2a-regular",
                 "core not regular of degree Delta' - 2k (got [" +
                     std::to_string(final_prof.delta) + "," + std::to_string(final_prof.Delta) +
                     "], want " + std::to_string(out.core_degree) + ")");
    out.core = std::move(cur);
    return out;
}

// --- Case 2b: matching peeling -----------------------------------------------

struct PeelResult {
    Graph terminal;
    std::vector<PairList> matchings;  // in peel order
    enum Kind { VdeltaBig, Case1Shape } kind = VdeltaBig;
};

inline PeelResult peel_case2b(const Graph& g, double eps, double xi) {
    int n = g.n();
    {
        auto prof = degree_profile(g, xi);
        TOTCOL_REQUIRE(double(prof.V_delta.size()) < xi * n, "Vdelta-size",
                       "Case 2b needs |V_delta| < xi n");
        TOTCOL_REQUIRE(double(prof.U_xi.size()) < xi * n, "U-size", "Case 2b needs |U_xi| < xi n");
        TOTCOL_REQUIRE(!prof.regular(), "not-regular", "Case 2b excludes regular graphs");
    }
    PeelResult out;
    Graph cur = g;
    for (int step = 0; step <= n; ++step) {
        auto prof = degree_profile(cur, xi);
        if (double(prof.V_delta.size()) >= xi * n) {
            out.kind = PeelResult::VdeltaBig;
            break;
        }
        bool case1_shape = prof.middle.empty() && (n - int(prof.V_delta.size())) % 2 == 1;
        if (case1_shape) {
            out.kind = PeelResult::Case1Shape;
            break;
        }
        TOTCOL_CHECK(!prof.regular(), "case2b-regular", "regular graph inside the peeling loop");

        // G' = cur - V_delta, Hamilton cycle, every second edge.
        std::vector<char> drop(std::size_t(n), 0);
        for (Vertex v : prof.V_delta) drop[std::size_t(v)] = 1;
        std::vector<Vertex> keep;
        for (int v = 0; v < n; ++v)
            if (!drop[std::size_t(v)]) keep.push_back(v);
        Graph h(int(keep.size()));
        std::vector<int> back(std::size_t(n), -1);
        for (std::size_t i = 0; i < keep.size(); ++i) back[std::size_t(keep[i])] = int(i);
        for (auto [u, v] : cur.edges())
            if (back[std::size_t(u)] >= 0 && back[std::size_t(v)] >= 0)
                h.add_edge(back[std::size_t(u)], back[std::size_t(v)]);
        TOTCOL_REQUIRE(2 * h.min_degree() >= h.n() && h.n() >= 3, "dirac-lost",
                       "Dirac precondition lost during peeling: parameters too aggressive");
        auto cyc = dirac_hamilton_cycle(h);

        std::size_t start = 0;
        if (keep.size() % 2 == 1) {
            // Unsaturate the lowest-index vertex of degree < Delta in cur.
            int unsat = -1;
            for (std::size_t i = 0; i < cyc.size(); ++i) {
                Vertex orig = keep[std::size_t(cyc[i])];
                if (cur.degree(orig) < prof.Delta && (unsat < 0 || orig < keep[std::size_t(cyc[std::size_t(unsat)])]))
                    unsat = int(i);
            }
            if (unsat >= 0) start = std::size_t(unsat);
        }
        PairList m;
        for (std::size_t i = 1; i + 1 < cyc.size() + (keep.size() % 2 == 0 ? 1 : 0); i += 2) {
            Vertex a = keep[std::size_t(cyc[(start + i) % cyc.size()])];
            Vertex b = keep[std::size_t(cyc[(start + i + 1) % cyc.size()])];
            m.push_back({a, b});
            cur.remove_edge(a, b);
        }
        TOTCOL_CHECK(cur.max_degree() == prof.Delta - 1, "case2b-drop",
                     "Delta did not drop after peeling a matching");
        out.matchings.push_back(std::move(m));
        double dmin = cur.min_degree();
        TOTCOL_CHECK(2.0 * dmin >= (1.0 + eps) * n - 1e-9, "case2b-delta",
                     "minimum degree fell below (1+eps) n/2 during peeling");
    }
    out.terminal = std::move(cur);
    return out;
}

// --- lifting -----------------------------------------------------------------

struct GoodColoring {
    std::vector<ColoredEdge> edges;
    int palette = 0;
};

// Adds one peeled layer back with fresh colors: one color for a matching,
// two alternating colors for a linear forest.
inline GoodColoring lift_layer(GoodColoring inner, const Layer& layer) {
    if (layer.kind == Layer::Matching) {
        int c = ++inner.palette;
        for (auto [u, v] : layer.matching) {
            auto [a, b] = ordered(u, v);
            inner.edges.push_back({a, b, 0, c});
        }
    } else {
        int c1 = inner.palette + 1, c2 = inner.palette + 2;
        inner.palette += 2;
        for (auto& p : layer.paths)
            for (std::size_t j = 0; j + 1 < p.size(); ++j) {
                auto [a, b] = ordered(p[j], p[j + 1]);
                inner.edges.push_back({a, b, 0, j % 2 == 0 ? c1 : c2});
            }
    }
    return inner;
}

// Lifts an inner good coloring through the given layers (applied inner-most
// last in the vector, so iteration is reversed) and checks the palette
// arithmetic against the outer graph.
inline GoodColoring lift_coloring(GoodColoring inner, const std::vector<Layer>& layers,
                                  int outer_Delta) {
    GoodColoring cur = std::move(inner);
    for (auto it = layers.rbegin(); it != layers.rend(); ++it) cur = lift_layer(cur, *it);
    TOTCOL_REQUIRE(cur.palette <= outer_Delta + 2, "palette-arithmetic",
                   "lifted palette " + std::to_string(cur.palette) + " exceeds Delta+2 = " +
                       std::to_string(outer_Delta + 2));
    return cur;
}

} // namespace totcol
