#pragma once

// Dense-graph path machinery: Hamilton cycles in the Dirac regime and the
// vertex-disjoint spanning linking paths consumed by the Case 2a reduction.

#include <algorithm>
#include <optional>
#include <vector>

#include "totcol/error.hpp"
#include "totcol/graph.hpp"
#include "totcol/rng.hpp"

namespace totcol {

namespace detail {

inline bool valid_cycle(const Graph& g, const std::vector<Vertex>& cyc) {
    if (int(cyc.size()) != g.n()) return false;
    std::vector<char> seen(std::size_t(g.n()), 0);
    for (Vertex v : cyc) {
        if (v < 0 || v >= g.n() || seen[std::size_t(v)]) return false;
        seen[std::size_t(v)] = 1;
    }
    for (std::size_t i = 0; i < cyc.size(); ++i)
        if (!g.has_edge(cyc[i], cyc[(i + 1) % cyc.size()])) return false;
    return true;
}

} // namespace detail

// Hamilton cycle of a Dirac graph (delta >= n/2, n >= 3), by repeated path
// extension, crossover closing, and cycle reopening. Each stall provably
// lengthens the path under the Dirac bound, so the loop terminates.
inline std::vector<Vertex> dirac_hamilton_cycle(const Graph& g) {
    int n = g.n();
    TOTCOL_REQUIRE(n >= 3, "order", "dirac_hamilton_cycle needs n >= 3");
    TOTCOL_REQUIRE(2 * g.min_degree() >= n, "min-degree", "dirac_hamilton_cycle needs delta >= n/2");

    std::vector<Vertex> path = {0};
    Bitset on_path(n);
    on_path.set(0);

    auto free_neighbor = [&](Vertex v) -> int {
        Bitset free = g.row(v);
        free.subtract(on_path);
        return free.first();
    };

    while (true) {
        bool grew = true;
        while (grew) {
            grew = false;
            if (int u = free_neighbor(path.back()); u >= 0) {
                path.push_back(u);
                on_path.set(u);
                grew = true;
            }
            if (int u = free_neighbor(path.front()); u >= 0) {
                path.insert(path.begin(), u);
                on_path.set(u);
                grew = true;
            }
        }
        // Close the maximal path into a cycle. All neighbors of both ends lie
        // on the path, and d(front)+d(back) >= n > |path|-1 gives a crossover.
        Vertex a = path.front(), b = path.back();
        int k = int(path.size()) - 1;
        std::vector<Vertex> cycle;
        if (g.has_edge(a, b)) {
            cycle = path;
        } else {
            int cross = -1;
            for (int i = 0; i < k; ++i)
                if (g.has_edge(a, path[std::size_t(i) + 1]) && g.has_edge(b, path[std::size_t(i)])) {
                    cross = i;
                    break;
                }
            TOTCOL_CHECK(cross >= 0, "dirac-crossover",
                         "no crossover on a maximal path; Dirac hypothesis violated?");
            cycle.assign(path.begin(), path.begin() + cross + 1);
            for (int i = k; i > cross; --i) cycle.push_back(path[std::size_t(i)]);
        }
        if (int(cycle.size()) == n) {
            TOTCOL_CHECK(detail::valid_cycle(g, cycle), "dirac-validate",
                         "constructed sequence is not a Hamilton cycle");
            return cycle;
        }
        // Reopen: some outside vertex sees the cycle (the graph is connected).
        int attach = -1, outside = -1;
        for (std::size_t i = 0; i < cycle.size() && attach < 0; ++i) {
            Bitset out = g.row(cycle[i]);
            out.subtract(on_path);
            if (int w = out.first(); w >= 0) {
                attach = int(i);
                outside = w;
            }
        }
        TOTCOL_CHECK(attach >= 0, "dirac-reopen", "cycle has no outside neighbor; disconnected graph");
        path.clear();
        path.push_back(outside);
        for (std::size_t j = 0; j < cycle.size(); ++j)
            path.push_back(cycle[(std::size_t(attach) + j) % cycle.size()]);
        on_path.set(outside);
    }
}

struct LinkingForest {
    std::vector<std::vector<Vertex>> paths;  // path i joins pairs[i]
};

inline bool linking_forest_valid(const Graph& g, const PairList& pairs, const LinkingForest& f) {
    if (f.paths.size() != pairs.size()) return false;
    std::vector<char> seen(std::size_t(g.n()), 0);
    long long covered = 0;
    for (std::size_t i = 0; i < f.paths.size(); ++i) {
        const auto& p = f.paths[i];
        if (p.empty()) return false;
        if (p.front() != pairs[i].first || p.back() != pairs[i].second) return false;
        for (Vertex v : p) {
            if (v < 0 || v >= g.n() || seen[std::size_t(v)]) return false;
            seen[std::size_t(v)] = 1;
            ++covered;
        }
        for (std::size_t j = 0; j + 1 < p.size(); ++j)
            if (!g.has_edge(p[j], p[j + 1])) return false;
    }
    return covered == g.n();
}

namespace detail {

// One construction attempt: short pair-joining paths biased through
// high-degree vertices, then absorb every uncovered vertex by insertion
// between consecutive path vertices adjacent to it (single or pairwise).
inline std::optional<LinkingForest> linking_attempt(const Graph& g, const PairList& pairs,
                                                    Rng& rng, bool perturb) {
    int n = g.n();
    Bitset used(n);
    for (auto [a, b] : pairs) {
        used.set(a);
        used.set(b);
    }
    std::vector<int> scan_order(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) scan_order[std::size_t(i)] = i;
    std::sort(scan_order.begin(), scan_order.end(), [&](int a, int b) {
        return g.degree(a) != g.degree(b) ? g.degree(a) > g.degree(b) : a < b;
    });
    if (perturb) rng.shuffle(scan_order);

    LinkingForest out;
    for (auto [a, b] : pairs) {
        std::vector<int> prev(std::size_t(n), -2);
        std::vector<int> frontier = {a};
        prev[std::size_t(a)] = -1;
        bool found = g.has_edge(a, b);
        if (found) prev[std::size_t(b)] = a;
        for (std::size_t qi = 0; qi < frontier.size() && !found; ++qi) {
            int v = frontier[qi];
            for (int u : scan_order) {
                if (!g.has_edge(v, u) || prev[std::size_t(u)] != -2) continue;
                if (u == b) {
                    prev[std::size_t(b)] = v;
                    found = true;
                    break;
                }
                if (used.test(u)) continue;
                prev[std::size_t(u)] = v;
                frontier.push_back(u);
            }
        }
        if (!found) return std::nullopt;
        std::vector<Vertex> path;
        for (int v = b; v != -1; v = prev[std::size_t(v)]) path.push_back(v);
        std::reverse(path.begin(), path.end());
        for (Vertex v : path) used.set(v);
        out.paths.push_back(std::move(path));
    }

    std::vector<Vertex> uncovered;
    for (int v = 0; v < n; ++v)
        if (!used.test(v)) uncovered.push_back(v);
    if (perturb) rng.shuffle(uncovered);

    auto insert_single = [&](Vertex v) {
        for (auto& p : out.paths)
            for (std::size_t j = 0; j + 1 < p.size(); ++j)
                if (g.has_edge(p[j], v) && g.has_edge(v, p[j + 1])) {
                    p.insert(p.begin() + long(j) + 1, v);
                    return true;
                }
        return false;
    };

    while (!uncovered.empty()) {
        std::vector<Vertex> still;
        for (Vertex v : uncovered)
            if (!insert_single(v)) still.push_back(v);
        if (still.size() == uncovered.size()) {
            // Pairwise insertion: v,w between a slot with p_j ~ v ~ w ~ p_j+1.
            bool advanced = false;
            for (std::size_t a = 0; a < still.size() && !advanced; ++a)
                for (std::size_t b = 0; b < still.size() && !advanced; ++b) {
                    if (a == b || !g.has_edge(still[a], still[b])) continue;
                    for (auto& p : out.paths) {
                        for (std::size_t j = 0; j + 1 < p.size(); ++j)
                            if (g.has_edge(p[j], still[a]) && g.has_edge(still[b], p[j + 1])) {
                                p.insert(p.begin() + long(j) + 1, still[b]);
                                p.insert(p.begin() + long(j) + 1, still[a]);
                                advanced = true;
                                break;
                            }
                        if (advanced) break;
                    }
                    if (advanced) {
                        still.erase(still.begin() + long(std::max(a, b)));
                        still.erase(still.begin() + long(std::min(a, b)));
                    }
                }
            if (!advanced) return std::nullopt;  // stalled
        }
        uncovered = std::move(still);
    }
    return out;
}

// Exhaustive fallback for tiny instances.
struct LinkingExact {
    const Graph& g;
    const PairList& pairs;
    std::vector<char> interior_used;
    LinkingForest acc;

    bool run() {
        interior_used.assign(std::size_t(g.n()), 0);
        std::vector<Vertex> cur = {pairs[0].first};
        return dfs(0, cur);
    }

    bool is_endpoint(Vertex u) const {
        for (auto [a, b] : pairs)
            if (a == u || b == u) return true;
        return false;
    }

    bool dfs(std::size_t pi, std::vector<Vertex>& cur) {
        Vertex at = cur.back(), goal = pairs[pi].second;
        if (at == goal) {
            acc.paths.push_back(cur);
            if (pi + 1 == pairs.size()) {
                std::size_t covered = 0;
                for (auto& p : acc.paths) covered += p.size();
                if (covered == std::size_t(g.n())) return true;
            } else {
                std::vector<Vertex> next = {pairs[pi + 1].first};
                if (dfs(pi + 1, next)) return true;
            }
            acc.paths.pop_back();
            return false;
        }
        for (int u = 0; u < g.n(); ++u) {
            if (!g.has_edge(at, u)) continue;
            if (u == goal) {
                cur.push_back(u);
                if (dfs(pi, cur)) return true;
                cur.pop_back();
                continue;
            }
            if (is_endpoint(u) || interior_used[std::size_t(u)]) continue;
            interior_used[std::size_t(u)] = 1;
            cur.push_back(u);
            if (dfs(pi, cur)) return true;
            cur.pop_back();
            interior_used[std::size_t(u)] = 0;
        }
        return false;
    }
};

} // namespace detail

// Vertex-disjoint paths joining each pair, together spanning V(G). Heuristic
// with bounded restarts; exact backtracking fallback for n <= 12; failures
// are reported, never silently wrong.
inline LinkingForest linking_paths(const Graph& g, const PairList& pairs, double eps,
                                   std::uint64_t seed = 0) {
    int n = g.n();
    TOTCOL_REQUIRE(!pairs.empty(), "pairs-empty",
                   "at least one pair required: spanning paths need endpoints");
    TOTCOL_REQUIRE(is_matching(pairs, n), "pairs-disjoint",
                   "pair endpoints must be distinct and pairwise disjoint");
    TOTCOL_REQUIRE(2.0 * g.min_degree() >= (1.0 + eps) * n, "min-degree",
                   "linking_paths needs delta >= (1+eps) n/2");
    TOTCOL_REQUIRE(8.0 * double(pairs.size()) <= eps * n + 16.0, "pair-budget",
                   "linking_paths needs |pairs| <= eps n / 8 (two pairs of slack at desk scale)");

    Rng rng(seed);
    for (int attempt = 0; attempt < 24; ++attempt) {
        Rng sub = rng.fork();
        if (auto f = detail::linking_attempt(g, pairs, sub, attempt > 0)) {
            TOTCOL_CHECK(linking_forest_valid(g, pairs, *f), "linking-validate",
                         "constructed forest failed validation");
            return *f;
        }
    }
    if (n <= 12) {
        detail::LinkingExact exact{g, pairs, {}, {}};
        if (exact.run()) {
            TOTCOL_CHECK(linking_forest_valid(g, pairs, exact.acc), "linking-validate",
                         "exact forest failed validation");
            return exact.acc;
        }
        throw ConstructionError("linking-paths", "no spanning linking forest exists (exact search)");
    }
    throw ConstructionError("linking-paths",
                            "heuristic exhausted after 24 restarts (n=" + std::to_string(n) +
                                ", pairs=" + std::to_string(pairs.size()) + ")");
}

} // namespace totcol
