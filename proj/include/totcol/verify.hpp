#pragma once

// Unconditional validators. These re-derive everything from raw assignments
// and share no bookkeeping with the code that produced the artifacts.

#include <map>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "totcol/graph.hpp"

namespace totcol {

// A total coloring of a simple graph: colors on vertices and edges.
struct TotalColoring {
    int k = 0;
    std::vector<int> vertex_color;         // vertex -> color in 1..k
    std::map<VertexPair, int> edge_color;  // ordered pair -> color in 1..k
};

struct Verdict {
    bool ok = true;
    std::string clause;  // empty when ok; otherwise names the violated clause
    std::string detail;
    static Verdict pass() { return {}; }
    static Verdict fail(std::string clause, std::string detail) {
        return {false, std::move(clause), std::move(detail)};
    }
};

inline Verdict validate_total(const Graph& g, const TotalColoring& tc) {
    int n = g.n();
    if (int(tc.vertex_color.size()) != n)
        return Verdict::fail("coverage-vertices", "vertex color list has wrong length");
    for (int v = 0; v < n; ++v) {
        int c = tc.vertex_color[std::size_t(v)];
        if (c < 1 || c > tc.k)
            return Verdict::fail("coverage-vertices",
                                 "vertex " + std::to_string(v) + " uncolored or out of palette");
    }
    for (auto [u, v] : g.edges()) {
        auto it = tc.edge_color.find({u, v});
        if (it == tc.edge_color.end())
            return Verdict::fail("coverage-edges", "edge (" + std::to_string(u) + "," +
                                                       std::to_string(v) + ") uncolored");
        if (it->second < 1 || it->second > tc.k)
            return Verdict::fail("coverage-edges", "edge color out of palette 1..k");
    }
    for (auto& [e, c] : tc.edge_color)
        if (!g.has_edge(e.first, e.second))
            return Verdict::fail("coverage-edges", "colored edge not in graph");

    for (auto [u, v] : g.edges())
        if (tc.vertex_color[std::size_t(u)] == tc.vertex_color[std::size_t(v)])
            return Verdict::fail("vertex-vertex",
                                 "adjacent vertices " + std::to_string(u) + "," +
                                     std::to_string(v) + " share a color");
    // Incident edges must differ.
    auto at = std::vector<std::map<int, VertexPair>>(static_cast<std::size_t>(n));
    for (auto& [e, c] : tc.edge_color) {
        for (int w : {e.first, e.second}) {
            auto [it, fresh] = at[std::size_t(w)].insert({c, e});
            if (!fresh)
                return Verdict::fail("edge-edge", "two edges at vertex " + std::to_string(w) +
                                                      " share color " + std::to_string(c));
        }
    }
    for (auto& [e, c] : tc.edge_color)
        for (int w : {e.first, e.second})
            if (tc.vertex_color[std::size_t(w)] == c)
                return Verdict::fail("vertex-edge", "vertex " + std::to_string(w) +
                                                        " matches incident edge color " +
                                                        std::to_string(c));
    return Verdict::pass();
}

// Raw edge-coloring record: (u, v, slot, color).
using ColoredEdge = std::tuple<int, int, int, int>;

// Checks the "good" property of an edge-coloring of G^M: total on E(G^M),
// proper, at most Delta(G)+2 colors, and M together with E(x) rainbow.
// Everything is re-derived from g and M alone; x is vertex g.n().
inline Verdict validate_good(const Graph& g, const PairList& M,
                             const std::vector<ColoredEdge>& coloring) {
    int n = g.n(), x = g.n();
    if (!is_matching_in_complement(g, M))
        return Verdict::fail("matching", "M is not a matching in the complement of G");

    std::set<VertexPair> gm_edges;
    for (auto [u, v] : g.edges()) gm_edges.insert({u, v});
    for (auto [u, v] : M) gm_edges.insert(ordered(u, v));
    std::vector<char> saturated(static_cast<std::size_t>(n), 0);
    for (auto [u, v] : M) saturated[std::size_t(u)] = saturated[std::size_t(v)] = 1;
    std::set<VertexPair> specials;
    for (auto [u, v] : M) specials.insert(ordered(u, v));
    for (int v = 0; v < n; ++v)
        if (!saturated[std::size_t(v)]) {
            gm_edges.insert({v, x});
            specials.insert({v, x});
        }

    std::map<VertexPair, int> color;
    for (auto [u, v, slot, c] : coloring) {
        if (slot != 0) return Verdict::fail("simple", "G^M has no parallel edges (slot != 0)");
        auto e = ordered(u, v);
        if (!gm_edges.count(e)) continue;  // producers may color a supergraph
        if (c < 1) return Verdict::fail("total", "uncolored or invalid color on an edge of G^M");
        if (!color.insert({e, c}).second)
            return Verdict::fail("simple", "duplicate record for one edge");
    }
    for (auto& e : gm_edges)
        if (!color.count(e))
            return Verdict::fail("total", "edge (" + std::to_string(e.first) + "," +
                                              std::to_string(e.second) + ") of G^M uncolored");

    int palette = 0;
    std::set<int> used;
    for (auto& [e, c] : color) used.insert(c);
    for (int c : used) palette = std::max(palette, c);
    int budget = g.max_degree() + 2;
    if (palette > budget)
        return Verdict::fail("palette", "uses color " + std::to_string(palette) + " > Delta+2 = " +
                                            std::to_string(budget));

    std::map<std::pair<int, int>, VertexPair> seen;  // (vertex, color) -> edge
    for (auto& [e, c] : color)
        for (int w : {e.first, e.second}) {
            auto [it, fresh] = seen.insert({{w, c}, e});
            if (!fresh)
                return Verdict::fail("proper", "vertex " + std::to_string(w) +
                                                   " has two edges colored " + std::to_string(c));
        }

    std::map<int, VertexPair> special_colors;
    for (auto& e : specials) {
        int c = color.at(e);
        auto [it, fresh] = special_colors.insert({c, e});
        if (!fresh)
            return Verdict::fail("rainbow",
                                 "edges (" + std::to_string(it->second.first) + "," +
                                     std::to_string(it->second.second) + ") and (" +
                                     std::to_string(e.first) + "," + std::to_string(e.second) +
                                     ") of M u E(x) both colored " + std::to_string(c));
    }
    return Verdict::pass();
}

// Parity lemma check for a total k-edge-coloring given as raw records: for
// every color i, the number of vertices missing i is congruent to |V| mod 2.
// Returns the violating colors (empty = ok).
inline std::vector<int> parity_check(int n, int k, const std::vector<ColoredEdge>& coloring) {
    auto sees = std::vector<std::vector<char>>(static_cast<std::size_t>(n),
                                               std::vector<char>(static_cast<std::size_t>(k) + 1, 0));
    for (auto [u, v, slot, c] : coloring) {
        (void)slot;
        if (c >= 1 && c <= k) {
            sees[std::size_t(u)][std::size_t(c)] = 1;
            sees[std::size_t(v)][std::size_t(c)] = 1;
        }
    }
    std::vector<int> bad;
    for (int c = 1; c <= k; ++c) {
        int missing = 0;
        for (int v = 0; v < n; ++v)
            if (!sees[std::size_t(v)][std::size_t(c)]) ++missing;
        if (missing % 2 != n % 2) bad.push_back(c);
    }
    return bad;
}

} // namespace totcol
