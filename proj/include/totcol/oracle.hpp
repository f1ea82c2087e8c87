#pragma once

// Brute-force oracles and exhaustive enumeration for desk-scale ground truth.
// Nothing here shares code with the constructive algorithms it checks.

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "totcol/error.hpp"
#include "totcol/graph.hpp"
#include "totcol/graph_io.hpp"

namespace totcol {

// --- canonical form --------------------------------------------------------

namespace detail {

// Iterated degree refinement. Returns cells of the stable partition, ordered
// by cell signature; isomorphic graphs get corresponding cell sequences.
inline std::vector<std::vector<int>> refinement_cells(const Graph& g) {
    int n = g.n();
    std::vector<long long> color(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) color[std::size_t(v)] = g.degree(v);
    for (int round = 0; round < n; ++round) {
        auto sig = std::vector<std::pair<std::vector<long long>, int>>(static_cast<std::size_t>(n));
        for (int v = 0; v < n; ++v) {
            std::vector<long long> s;
            s.push_back(color[std::size_t(v)]);
            std::vector<long long> nb;
            g.row(v).for_each([&](int u) { nb.push_back(color[std::size_t(u)]); });
            std::sort(nb.begin(), nb.end());
            s.insert(s.end(), nb.begin(), nb.end());
            sig[std::size_t(v)] = {std::move(s), v};
        }
        auto sorted = sig;
        std::sort(sorted.begin(), sorted.end());
        std::vector<long long> next(static_cast<std::size_t>(n));
        long long rank = 0;
        for (std::size_t i = 0; i < sorted.size(); ++i) {
            if (i > 0 && sorted[i].first != sorted[i - 1].first) ++rank;
            next[std::size_t(sorted[i].second)] = rank;
        }
        if (next == color) break;
        color = std::move(next);
    }
    std::map<long long, std::vector<int>> by_color;
    for (int v = 0; v < n; ++v) by_color[color[std::size_t(v)]].push_back(v);
    std::vector<std::vector<int>> cells;
    for (auto& [c, vs] : by_color) cells.push_back(vs);
    return cells;
}

inline std::uint64_t edge_key_for_order(const Graph& g, const std::vector<int>& order) {
    std::uint64_t key = 0;
    for (std::size_t i = 0; i < order.size(); ++i)
        for (std::size_t j = i + 1; j < order.size(); ++j)
            key = (key << 1) | std::uint64_t(g.has_edge(order[i], order[j]));
    return key;
}

} // namespace detail

// Minimum upper-triangle bitstring over all labelings compatible with the
// refinement partition. Valid for n <= 11 (55 bits).
inline std::uint64_t canonical_key(const Graph& g) {
    TOTCOL_REQUIRE(g.n() <= 11, "size-guard", "canonical_key supports n <= 11");
    if (g.n() <= 1) return 0;
    auto cells = detail::refinement_cells(g);
    std::vector<int> order;
    for (auto& c : cells) order.insert(order.end(), c.begin(), c.end());
    std::uint64_t best = ~std::uint64_t(0);
    // Odometer over within-cell permutations.
    std::vector<std::size_t> starts;
    std::size_t at = 0;
    for (auto& c : cells) {
        starts.push_back(at);
        at += c.size();
    }
    while (true) {
        best = std::min(best, detail::edge_key_for_order(g, order));
        std::size_t ci = 0;
        for (; ci < cells.size(); ++ci) {
            auto b = order.begin() + long(starts[ci]);
            auto e = b + long(cells[ci].size());
            if (std::next_permutation(b, e)) break;
        }
        if (ci == cells.size()) break;
    }
    return best;
}

// Canonical graph6 string: emit the graph relabeled by its canonical order.
inline std::string canonical_graph6(const Graph& g) {
    std::uint64_t key = canonical_key(g);
    Graph h(g.n());
    long long bits = (long long)g.n() * (g.n() - 1) / 2;
    for (int i = 0, b = 0; i < g.n(); ++i)
        for (int j = i + 1; j < g.n(); ++j, ++b)
            if (key >> (bits - 1 - b) & 1) h.add_edge(i, j);
    return emit_graph6(h);
}

// Isomorph-free enumeration of all simple graphs on exactly n vertices,
// built by vertex augmentation with canonical dedup.
inline std::vector<Graph> enumerate_graphs(int n) {
    TOTCOL_REQUIRE(n >= 1 && n <= 8, "size-guard", "enumerate_graphs supports 1 <= n <= 8");
    std::vector<Graph> cur;
    cur.push_back(Graph(1));
    for (int sz = 2; sz <= n; ++sz) {
        std::set<std::uint64_t> seen;
        std::vector<Graph> next;
        for (const Graph& g : cur) {
            for (std::uint32_t nb = 0; nb < (1u << (sz - 1)); ++nb) {
                Graph h(sz);
                for (auto [u, v] : g.edges()) h.add_edge(u, v);
                for (int u = 0; u < sz - 1; ++u)
                    if (nb >> u & 1) h.add_edge(u, sz - 1);
                if (seen.insert(canonical_key(h)).second) next.push_back(std::move(h));
            }
        }
        cur = std::move(next);
    }
    return cur;
}

// --- brute-force matching ---------------------------------------------------

inline int brute_max_matching_size(const Graph& g) {
    TOTCOL_REQUIRE(g.n() <= 20, "size-guard", "brute matching supports n <= 20");
    int n = g.n();
    std::vector<std::uint32_t> nbr(static_cast<std::size_t>(n), 0);
    for (int v = 0; v < n; ++v)
        g.row(v).for_each([&](int u) { nbr[std::size_t(v)] |= 1u << u; });
    std::vector<std::int8_t> memo(std::size_t(1) << n, -1);
    auto rec = [&](auto&& self, std::uint32_t mask) -> int {
        if (memo[mask] >= 0) return memo[mask];
        int best = 0;
        std::uint32_t m = mask;
        while (m) {
            int u = __builtin_ctz(m);
            std::uint32_t cand = nbr[std::size_t(u)] & mask;
            if (cand) {
                best = self(self, mask & ~(1u << u)); // leave u unmatched
                while (cand) {
                    int v = __builtin_ctz(cand);
                    cand &= cand - 1;
                    best = std::max(best, 1 + self(self, mask & ~(1u << u) & ~(1u << v)));
                }
                break;
            }
            m &= m - 1;
        }
        memo[mask] = std::int8_t(best);
        return best;
    };
    return rec(rec, (n == 32 ? ~0u : (1u << n) - 1));
}

// Tutte-Berge value: min over S of (n + |S| - odd(G - S)) / 2.
inline int brute_tutte_berge(const Graph& g) {
    TOTCOL_REQUIRE(g.n() <= 16, "size-guard", "brute Tutte-Berge supports n <= 16");
    int n = g.n();
    int best = n;
    for (std::uint32_t S = 0; S < (1u << n); ++S) {
        std::uint32_t rest = ((n == 32 ? ~0u : (1u << n) - 1)) & ~S;
        int odd = 0;
        std::uint32_t todo = rest;
        while (todo) {
            int r = __builtin_ctz(todo);
            std::uint32_t comp = 1u << r, frontier = comp;
            while (frontier) {
                int v = __builtin_ctz(frontier);
                frontier &= frontier - 1;
                std::uint32_t nb = 0;
                g.row(v).for_each([&](int u) { nb |= 1u << u; });
                std::uint32_t fresh = nb & rest & ~comp;
                comp |= fresh;
                frontier |= fresh;
            }
            if (__builtin_popcount(comp) % 2) ++odd;
            todo &= ~comp;
        }
        best = std::min(best, (n + __builtin_popcount(S) - odd) / 2);
    }
    return best;
}

// --- exact coloring solvers -------------------------------------------------

namespace detail {

// Generic exact list-coloring over a conflict structure by MRV backtracking
// with color-symmetry breaking (an element may open at most one new color).
class ExactColorer {
public:
    // conflicts[i] = indices that must differ from element i.
    ExactColorer(std::vector<std::vector<int>> conflicts, int k)
        : conflicts_(std::move(conflicts)), k_(k), assign_(conflicts_.size(), 0) {}

    // forced[i] = fixed color (1..k) or 0. Pairwise-distinct groups can be
    // pre-encoded as extra conflicts by the caller.
    std::optional<std::vector<int>> solve(const std::vector<int>& forced = {}) {
        std::size_t nel = conflicts_.size();
        allowed_.assign(nel, (k_ >= 64 ? ~std::uint64_t(0) : (std::uint64_t(1) << k_) - 1));
        max_used_ = 0;
        for (std::size_t i = 0; i < forced.size(); ++i)
            if (forced[i]) {
                if (!(allowed_[i] >> (forced[i] - 1) & 1)) return std::nullopt;
                if (!place(int(i), forced[i])) return std::nullopt;
            }
        if (rec()) return assign_;
        return std::nullopt;
    }

private:
    bool place(int i, int c) {
        assign_[std::size_t(i)] = c;
        max_used_ = std::max(max_used_, c);
        for (int j : conflicts_[std::size_t(i)]) {
            if (assign_[std::size_t(j)] == c) return false;
            allowed_[std::size_t(j)] &= ~(std::uint64_t(1) << (c - 1));
        }
        return true;
    }
    void unplace(int i, int c, int old_max) {
        assign_[std::size_t(i)] = 0;
        max_used_ = old_max;
        for (int j : conflicts_[std::size_t(i)]) recompute_allowed(j);
    }
    void recompute_allowed(int j) {
        std::uint64_t a = (k_ >= 64 ? ~std::uint64_t(0) : (std::uint64_t(1) << k_) - 1);
        for (int t : conflicts_[std::size_t(j)])
            if (int c = assign_[std::size_t(t)]; c) a &= ~(std::uint64_t(1) << (c - 1));
        allowed_[std::size_t(j)] = a;
    }

    bool rec() {
        int pick = -1, best = 1 << 30;
        for (std::size_t i = 0; i < conflicts_.size(); ++i) {
            if (assign_[i]) continue;
            int cap = std::min(k_, max_used_ + 1);
            std::uint64_t opts = allowed_[i] & ((cap >= 64) ? ~std::uint64_t(0)
                                                            : (std::uint64_t(1) << cap) - 1);
            int cnt = __builtin_popcountll(opts);
            if (cnt == 0) return false;
            if (cnt < best) {
                best = cnt;
                pick = int(i);
                if (cnt == 1) break;
            }
        }
        if (pick < 0) return true;
        int cap = std::min(k_, max_used_ + 1);
        std::uint64_t opts = allowed_[std::size_t(pick)] &
                             ((cap >= 64) ? ~std::uint64_t(0) : (std::uint64_t(1) << cap) - 1);
        while (opts) {
            int c = __builtin_ctzll(opts) + 1;
            opts &= opts - 1;
            int old_max = max_used_;
            if (place(pick, c) && rec()) return true;
            unplace(pick, c, old_max);
        }
        return false;
    }

    std::vector<std::vector<int>> conflicts_;
    int k_;
    std::vector<int> assign_;
    std::vector<std::uint64_t> allowed_;
    int max_used_ = 0;
};

} // namespace detail

struct BruteTotalColoring {
    int k = 0;
    std::vector<int> vertex_color;             // vertex -> color (1..k)
    std::vector<std::pair<VertexPair, int>> edge_color;
};

// Exact total chromatic number (with a witnessing coloring). Elements are the
// vertices and edges of g; the guard keeps this at desk scale.
inline BruteTotalColoring brute_total_coloring(const Graph& g, int guard_n = 8) {
    TOTCOL_REQUIRE(g.n() <= guard_n, "size-guard",
                   "brute_total_chromatic guard n <= " + std::to_string(guard_n));
    auto edges = g.edges();
    int n = g.n(), m = int(edges.size());
    auto conf = std::vector<std::vector<int>>(std::size_t(n + m));
    auto add_conf = [&](int a, int b) {
        conf[std::size_t(a)].push_back(b);
        conf[std::size_t(b)].push_back(a);
    };
    for (int v = 0; v < n; ++v)
        g.row(v).for_each([&](int u) {
            if (u > v) add_conf(v, u);
        });
    for (int i = 0; i < m; ++i) {
        auto [a, b] = edges[std::size_t(i)];
        add_conf(n + i, a);
        add_conf(n + i, b);
        for (int j = i + 1; j < m; ++j) {
            auto [c, d] = edges[std::size_t(j)];
            if (a == c || a == d || b == c || b == d) add_conf(n + i, n + j);
        }
    }
    int lower = n == 0 ? 0 : g.max_degree() + 1;
    if (n == 1) lower = 1;
    for (int k = lower; k <= n + m; ++k) {
        detail::ExactColorer solver(conf, k);
        if (auto sol = solver.solve()) {
            BruteTotalColoring out;
            out.k = k;
            out.vertex_color.assign(sol->begin(), sol->begin() + n);
            for (int i = 0; i < m; ++i)
                out.edge_color.push_back({edges[std::size_t(i)], (*sol)[std::size_t(n + i)]});
            return out;
        }
    }
    throw ConstructionError("brute-total", "unreachable: no coloring up to n+m colors");
}

inline int brute_total_chromatic(const Graph& g, int guard_n = 8) {
    return brute_total_coloring(g, guard_n).k;
}

// Exact chromatic index of a multigraph.
inline int brute_chromatic_index(const Multigraph& g, int guard_edges = 40) {
    auto ids = g.edge_ids();
    int m = int(ids.size());
    TOTCOL_REQUIRE(m <= guard_edges, "size-guard", "brute_chromatic_index edge guard");
    if (m == 0) return 0;
    auto conf = std::vector<std::vector<int>>(std::size_t(m));
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j) {
            auto& a = g.edge(ids[std::size_t(i)]);
            auto& b = g.edge(ids[std::size_t(j)]);
            if (a.u == b.u || a.u == b.v || a.v == b.u || a.v == b.v) {
                conf[std::size_t(i)].push_back(j);
                conf[std::size_t(j)].push_back(i);
            }
        }
    for (int k = g.max_degree();; ++k) {
        detail::ExactColorer solver(conf, k);
        if (solver.solve()) return k;
    }
}

// Backtracking proper k-edge-coloring of a simple graph in which all edges of
// `rainbow` must receive pairwise-distinct colors. Oracle for good colorings.
inline std::optional<std::map<VertexPair, int>> brute_rainbow_edge_coloring(
    const Graph& g, const PairList& rainbow, int k) {
    auto edges = g.edges();
    int m = int(edges.size());
    std::map<VertexPair, int> index;
    for (int i = 0; i < m; ++i) index[edges[std::size_t(i)]] = i;
    auto conf = std::vector<std::vector<int>>(std::size_t(m));
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j) {
            auto [a, b] = edges[std::size_t(i)];
            auto [c, d] = edges[std::size_t(j)];
            if (a == c || a == d || b == c || b == d) {
                conf[std::size_t(i)].push_back(j);
                conf[std::size_t(j)].push_back(i);
            }
        }
    std::vector<int> rid;
    for (auto pr : rainbow) {
        auto it = index.find(ordered(pr.first, pr.second));
        TOTCOL_REQUIRE(it != index.end(), "rainbow-edges", "rainbow edge not in graph");
        rid.push_back(it->second);
    }
    for (std::size_t i = 0; i < rid.size(); ++i)
        for (std::size_t j = i + 1; j < rid.size(); ++j) {
            conf[std::size_t(rid[i])].push_back(rid[j]);
            conf[std::size_t(rid[j])].push_back(rid[i]);
        }
    detail::ExactColorer solver(conf, k);
    auto sol = solver.solve();
    if (!sol) return std::nullopt;
    std::map<VertexPair, int> out;
    for (int i = 0; i < m; ++i) out[edges[std::size_t(i)]] = (*sol)[std::size_t(i)];
    return out;
}

} // namespace totcol
