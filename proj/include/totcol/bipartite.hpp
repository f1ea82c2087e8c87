#pragma once

// Bipartite machinery: Hopcroft-Karp maximum matching, perfect matchings with
// Hall-violator certificates, and bipartition detection.

#include <functional>
#include <limits>
#include <optional>
#include <vector>

#include "totcol/error.hpp"
#include "totcol/graph.hpp"

namespace totcol {

// 2-coloring of a graph, or nullopt if an odd cycle exists. side[v] in {0,1}.
inline std::optional<std::vector<int>> bipartition(const Graph& g) {
    std::vector<int> side(std::size_t(g.n()), -1);
    for (int s = 0; s < g.n(); ++s) {
        if (side[std::size_t(s)] >= 0) continue;
        side[std::size_t(s)] = 0;
        std::vector<int> stack = {s};
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            bool odd = false;
            g.row(v).for_each([&](int u) {
                if (side[std::size_t(u)] < 0) {
                    side[std::size_t(u)] = 1 - side[std::size_t(v)];
                    stack.push_back(u);
                } else if (side[std::size_t(u)] == side[std::size_t(v)]) {
                    odd = true;
                }
            });
            if (odd) return std::nullopt;
        }
    }
    return side;
}

struct BipartiteMatching {
    PairList matching;               // pairs (x, y) with x in X, y in Y
    bool perfect = false;
    std::vector<Vertex> hall_violator;  // S subset of X with |N(S)| < |S|, when not perfect
};

// Hopcroft-Karp on an explicit bipartition. Vertices outside X and Y are
// ignored. When no perfect matching exists the Hall violator is extracted
// from the final alternating reachability.
inline BipartiteMatching bipartite_perfect_matching(const Graph& g, const std::vector<Vertex>& X,
                                                    const std::vector<Vertex>& Y) {
    TOTCOL_REQUIRE(X.size() == Y.size(), "unbalanced-sides",
                   "|X| = " + std::to_string(X.size()) + " != |Y| = " + std::to_string(Y.size()));
    int nx = int(X.size()), ny = int(Y.size());
    std::vector<int> xid(std::size_t(g.n()), -1), yid(std::size_t(g.n()), -1);
    for (int i = 0; i < nx; ++i) xid[std::size_t(X[std::size_t(i)])] = i;
    for (int j = 0; j < ny; ++j) yid[std::size_t(Y[std::size_t(j)])] = j;
    std::vector<std::vector<int>> adj(static_cast<std::size_t>(nx));
    for (int i = 0; i < nx; ++i)
        g.row(X[std::size_t(i)]).for_each([&](int u) {
            if (yid[std::size_t(u)] >= 0) adj[std::size_t(i)].push_back(yid[std::size_t(u)]);
        });

    const int INF = std::numeric_limits<int>::max();
    std::vector<int> mx(static_cast<std::size_t>(nx), -1), my(static_cast<std::size_t>(ny), -1);
    std::vector<int> dist(static_cast<std::size_t>(nx));

    auto bfs = [&]() {
        std::vector<int> q;
        for (int i = 0; i < nx; ++i) {
            dist[std::size_t(i)] = mx[std::size_t(i)] < 0 ? 0 : INF;
            if (mx[std::size_t(i)] < 0) q.push_back(i);
        }
        bool reachable = false;
        for (std::size_t h = 0; h < q.size(); ++h) {
            int i = q[h];
            for (int j : adj[std::size_t(i)]) {
                int i2 = my[std::size_t(j)];
                if (i2 < 0) {
                    reachable = true;
                } else if (dist[std::size_t(i2)] == INF) {
                    dist[std::size_t(i2)] = dist[std::size_t(i)] + 1;
                    q.push_back(i2);
                }
            }
        }
        return reachable;
    };
    std::vector<char> vis;
    auto dfs = [&](auto&& self, int i) -> bool {
        vis[std::size_t(i)] = 1;
        for (int j : adj[std::size_t(i)]) {
            int i2 = my[std::size_t(j)];
            if (i2 < 0 || (!vis[std::size_t(i2)] && dist[std::size_t(i2)] == dist[std::size_t(i)] + 1 &&
                           self(self, i2))) {
                mx[std::size_t(i)] = j;
                my[std::size_t(j)] = i;
                return true;
            }
        }
        return false;
    };
    while (bfs()) {
        vis.assign(std::size_t(nx), 0);
        for (int i = 0; i < nx; ++i)
            if (mx[std::size_t(i)] < 0 && !vis[std::size_t(i)]) dfs(dfs, i);
    }

    BipartiteMatching out;
    for (int i = 0; i < nx; ++i)
        if (mx[std::size_t(i)] >= 0)
            out.matching.emplace_back(X[std::size_t(i)], Y[std::size_t(mx[std::size_t(i)])]);
    out.perfect = int(out.matching.size()) == nx;
    if (!out.perfect) {
        // Alternating reachability from unmatched X: S = reached X-vertices.
        std::vector<char> rx(std::size_t(nx), 0), ry(std::size_t(ny), 0);
        std::vector<int> q;
        for (int i = 0; i < nx; ++i)
            if (mx[std::size_t(i)] < 0) {
                rx[std::size_t(i)] = 1;
                q.push_back(i);
            }
        for (std::size_t h = 0; h < q.size(); ++h) {
            int i = q[h];
            for (int j : adj[std::size_t(i)]) {
                if (ry[std::size_t(j)]) continue;
                ry[std::size_t(j)] = 1;
                int i2 = my[std::size_t(j)];
                if (i2 >= 0 && !rx[std::size_t(i2)]) {
                    rx[std::size_t(i2)] = 1;
                    q.push_back(i2);
                }
            }
        }
        for (int i = 0; i < nx; ++i)
            if (rx[std::size_t(i)]) out.hall_violator.push_back(X[std::size_t(i)]);
    }
    return out;
}

// Maximum bipartite matching between possibly unbalanced sides (Kuhn).
inline PairList bipartite_max_matching(const Graph& g, const std::vector<Vertex>& X,
                                       const std::vector<Vertex>& Y) {
    int ny = int(Y.size());
    std::vector<int> yid(std::size_t(g.n()), -1);
    for (int j = 0; j < ny; ++j) yid[std::size_t(Y[std::size_t(j)])] = j;
    std::vector<int> myi(std::size_t(ny), -1);
    std::vector<char> seen;
    std::function<bool(int)> kuhn = [&](int xi) -> bool {
        bool found = false;
        g.row(X[std::size_t(xi)]).for_each([&](int u) {
            if (found) return;
            int j = yid[std::size_t(u)];
            if (j < 0 || seen[std::size_t(j)]) return;
            seen[std::size_t(j)] = 1;
            if (myi[std::size_t(j)] < 0 || kuhn(myi[std::size_t(j)])) {
                myi[std::size_t(j)] = xi;
                found = true;
            }
        });
        return found;
    };
    for (int xi = 0; xi < int(X.size()); ++xi) {
        seen.assign(std::size_t(ny), 0);
        kuhn(xi);
    }
    PairList out;
    for (int j = 0; j < ny; ++j)
        if (myi[std::size_t(j)] >= 0)
            out.emplace_back(X[std::size_t(myi[std::size_t(j)])], Y[std::size_t(j)]);
    return out;
}

} // namespace totcol
