#pragma once

// Classical constructions: Hakimi multigraph realization of a degree
// sequence, equitable vertex coloring, and the degree-balanced pair-
// respecting bipartition.

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "totcol/error.hpp"
#include "totcol/graph.hpp"
#include "totcol/rng.hpp"

namespace totcol {

struct HakimiInfeasible {
    std::string condition;  // "odd-sum" or "dominant-degree"
};

// Realizes a non-increasing degree sequence as a loopless multigraph on
// vertices 0..n-1 (vertex i gets degrees[i]), or names the violated
// condition. Construction: repeatedly join the two largest residual degrees.
inline std::variant<Multigraph, HakimiInfeasible> hakimi_realize(const std::vector<int>& degrees) {
    int n = int(degrees.size());
    for (int i = 0; i + 1 < n; ++i)
        TOTCOL_REQUIRE(degrees[std::size_t(i)] >= degrees[std::size_t(i) + 1], "sorted",
                       "degree sequence must be non-increasing");
    for (int d : degrees) TOTCOL_REQUIRE(d >= 0, "non-negative", "negative degree");

    long long sum = std::accumulate(degrees.begin(), degrees.end(), 0LL);
    if (sum % 2 != 0) return HakimiInfeasible{"odd-sum"};
    if (n > 0 && 2LL * degrees[0] > sum) return HakimiInfeasible{"dominant-degree"};

    Multigraph g(std::max(n, 1));
    if (n == 0 || sum == 0) return g;
    std::vector<std::pair<int, int>> residual;  // (degree left, vertex)
    for (int i = 0; i < n; ++i)
        if (degrees[std::size_t(i)] > 0) residual.push_back({degrees[std::size_t(i)], i});
    auto top2 = [&]() {
        std::partial_sort(residual.begin(), residual.begin() + std::min<std::size_t>(2, residual.size()),
                          residual.end(), [](auto a, auto b) {
                              return a.first != b.first ? a.first > b.first : a.second < b.second;
                          });
    };
    while (true) {
        residual.erase(std::remove_if(residual.begin(), residual.end(),
                                      [](auto p) { return p.first == 0; }),
                       residual.end());
        if (residual.empty()) break;
        TOTCOL_CHECK(residual.size() >= 2, "hakimi", "odd residual: conditions should forbid this");
        top2();
        g.add_edge(residual[0].second, residual[1].second);
        --residual[0].first;
        --residual[1].first;
    }
    for (int i = 0; i < n; ++i)
        TOTCOL_CHECK(g.degree(i) == degrees[std::size_t(i)], "hakimi",
                     "realized degree mismatch at vertex " + std::to_string(i));
    return g;
}

// Equitable proper k-coloring (class sizes within one) for k >= Delta+1.
// Greedy seed, then potential-descent Kempe component switches between class
// pairs; bounded restarts with perturbed orders.
inline std::vector<int> equitable_vertex_coloring(const Graph& g, int k, std::uint64_t seed = 0) {
    TOTCOL_REQUIRE(k >= g.max_degree() + 1, "palette",
                   "equitable_vertex_coloring needs k >= Delta+1");
    int n = g.n();
    Rng rng(seed);

    auto attempt = [&](bool perturb) -> std::optional<std::vector<int>> {
        std::vector<int> order(static_cast<std::size_t>(n));
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(),
                  [&](int a, int b) { return g.degree(a) != g.degree(b) ? g.degree(a) > g.degree(b)
                                                                        : a < b; });
        if (perturb) rng.shuffle(order);
        std::vector<int> color(std::size_t(n), 0);
        std::vector<int> count(std::size_t(k) + 1, 0);
        for (int v : order) {
            std::vector<char> bad(std::size_t(k) + 1, 0);
            g.row(v).for_each([&](int u) {
                if (color[std::size_t(u)]) bad[std::size_t(color[std::size_t(u)])] = 1;
            });
            int best = 0;
            for (int c = 1; c <= k; ++c)
                if (!bad[std::size_t(c)] && (best == 0 || count[std::size_t(c)] < count[std::size_t(best)]))
                    best = c;
            if (!best) return std::nullopt;  // cannot happen with k >= Delta+1
            color[std::size_t(v)] = best;
            ++count[std::size_t(best)];
        }
        // Potential descent: switch a Kempe component of classes (a,b) when
        // it strictly reduces sum of squared class sizes.
        for (long long guard = 0; guard < 4LL * n * k + 64; ++guard) {
            int hi = 1, lo = 1;
            for (int c = 1; c <= k; ++c) {
                if (count[std::size_t(c)] > count[std::size_t(hi)]) hi = c;
                if (count[std::size_t(c)] < count[std::size_t(lo)]) lo = c;
            }
            if (count[std::size_t(hi)] - count[std::size_t(lo)] <= 1) return color;
            bool moved = false;
            for (int a = 1; a <= k && !moved; ++a)
                for (int b = 1; b <= k && !moved; ++b) {
                    int gap = count[std::size_t(a)] - count[std::size_t(b)];
                    if (gap < 2) continue;
                    // Components of the induced (a,b) subgraph.
                    std::vector<char> seen(std::size_t(n), 0);
                    for (int s = 0; s < n && !moved; ++s) {
                        if (seen[std::size_t(s)] || (color[std::size_t(s)] != a && color[std::size_t(s)] != b))
                            continue;
                        std::vector<int> comp = {s};
                        seen[std::size_t(s)] = 1;
                        int excess = 0;
                        for (std::size_t h = 0; h < comp.size(); ++h) {
                            int v = comp[h];
                            excess += color[std::size_t(v)] == a ? 1 : -1;
                            g.row(v).for_each([&](int u) {
                                if (!seen[std::size_t(u)] &&
                                    (color[std::size_t(u)] == a || color[std::size_t(u)] == b)) {
                                    seen[std::size_t(u)] = 1;
                                    comp.push_back(u);
                                }
                            });
                        }
                        if (excess >= 1 && excess < gap) {
                            for (int v : comp)
                                color[std::size_t(v)] = color[std::size_t(v)] == a ? b : a;
                            count[std::size_t(a)] -= excess;
                            count[std::size_t(b)] += excess;
                            moved = true;
                        }
                    }
                }
            if (!moved) return std::nullopt;  // stuck; retry with perturbation
        }
        return std::nullopt;
    };

    for (int restart = 0; restart < 50; ++restart)
        if (auto got = attempt(restart > 0)) {
            // Unconditional validation.
            for (auto [u, v] : g.edges())
                TOTCOL_CHECK((*got)[std::size_t(u)] != (*got)[std::size_t(v)], "equitable",
                             "improper class assignment");
            std::vector<int> count(std::size_t(k) + 1, 0);
            for (int v = 0; v < n; ++v) ++count[std::size_t((*got)[std::size_t(v)])];
            int hi = 0, lo = 1 << 30;
            for (int c = 1; c <= k; ++c) {
                hi = std::max(hi, count[std::size_t(c)]);
                lo = std::min(lo, count[std::size_t(c)]);
            }
            TOTCOL_CHECK(hi - lo <= 1, "equitable", "class sizes differ by more than one");
            return *got;
        }
    throw ConstructionError("equitable-coloring", "descent stuck after 50 restarts");
}

struct Partition {
    std::vector<Vertex> A, B;
    PairList pair_constraint;
};

inline bool partition_valid(const Graph& g, const PairList& pairs, const Partition& p,
                            double bound) {
    int n = g.n();
    if (int(p.A.size() + p.B.size()) != n || p.A.size() != p.B.size()) return false;
    std::vector<int> side(std::size_t(n), -1);
    for (Vertex v : p.A) side[std::size_t(v)] = 0;
    for (Vertex v : p.B) side[std::size_t(v)] = 1;
    for (int v = 0; v < n; ++v)
        if (side[std::size_t(v)] < 0) return false;
    for (auto [x, y] : pairs)
        if (side[std::size_t(x)] == side[std::size_t(y)]) return false;
    for (int v = 0; v < n; ++v) {
        int da = 0, db = 0;
        g.row(v).for_each([&](int u) { (side[std::size_t(u)] == 0 ? da : db)++; });
        if (std::abs(da - db) > bound) return false;
    }
    return true;
}

// Pair-respecting bipartition with per-vertex degree balance within
// (n/2)^(2/3): random orientation of the pairs, then swap repair descending
// the total excess; restarts on plateau. `tighten` (default 1.0) lets callers
// ask for a stricter working bound while the validator keeps the lemma's.
inline Partition balanced_partition(const Graph& g, const PairList& pairs, std::uint64_t seed = 0,
                                    double tighten = 1.0, int restarts = 50) {
    int n = g.n();
    TOTCOL_REQUIRE(n % 2 == 0, "even-order", "balanced_partition needs an even vertex count");
    TOTCOL_REQUIRE(is_matching(pairs, n), "pairs-disjoint", "pair list must be disjoint");

    // Complete the pairing: every vertex belongs to exactly one pair, so any
    // orientation already satisfies |A| = |B| and the pair constraint.
    PairList all_pairs = pairs;
    {
        std::vector<char> used(std::size_t(n), 0);
        for (auto [x, y] : pairs) used[std::size_t(x)] = used[std::size_t(y)] = 1;
        std::vector<Vertex> rest;
        for (int v = 0; v < n; ++v)
            if (!used[std::size_t(v)]) rest.push_back(v);
        for (std::size_t i = 0; i + 1 < rest.size(); i += 2)
            all_pairs.push_back({rest[i], rest[i + 1]});
    }
    double lemma_bound = std::pow(n / 2.0, 2.0 / 3.0);
    double target = std::max(1.0, lemma_bound * tighten);
    Rng rng(seed);

    std::vector<int> side(std::size_t(n), 0);
    std::vector<int> diff(std::size_t(n), 0);  // d_A(v) - d_B(v)
    auto exc = [&](double d) { return std::max(0.0, std::abs(d) - target); };

    for (int restart = 0; restart < restarts; ++restart) {
        for (auto [x, y] : all_pairs) {
            bool flip = rng.chance(0.5);
            side[std::size_t(x)] = flip ? 1 : 0;
            side[std::size_t(y)] = flip ? 0 : 1;
        }
        for (int v = 0; v < n; ++v) {
            int da = 0, db = 0;
            g.row(v).for_each([&](int u) { (side[std::size_t(u)] == 0 ? da : db)++; });
            diff[std::size_t(v)] = da - db;
        }
        double cur = 0;
        for (int v = 0; v < n; ++v) cur += exc(diff[std::size_t(v)]);

        long long plateau_guard = 16LL * n + 64;
        while (cur > 1e-12 && plateau_guard-- > 0) {
            // Swapping pair (x,y) changes diff(u) by sx*[u~x] + sy*[u~y].
            double best_delta = -1e-9;
            int best_pair = -1;
            for (std::size_t pi = 0; pi < all_pairs.size(); ++pi) {
                auto [x, y] = all_pairs[pi];
                int sx = side[std::size_t(x)] == 0 ? -2 : 2;
                int sy = side[std::size_t(y)] == 0 ? -2 : 2;
                double delta = 0;
                g.row(x).for_each([&](int u) {
                    int d2 = diff[std::size_t(u)] + sx + (g.has_edge(y, u) ? sy : 0);
                    delta += exc(d2) - exc(diff[std::size_t(u)]);
                });
                g.row(y).for_each([&](int u) {
                    if (g.has_edge(x, u)) return;  // handled above
                    delta += exc(diff[std::size_t(u)] + sy) - exc(diff[std::size_t(u)]);
                });
                if (delta < best_delta) {
                    best_delta = delta;
                    best_pair = int(pi);
                }
            }
            if (best_pair < 0) break;  // plateau; restart
            auto [x, y] = all_pairs[std::size_t(best_pair)];
            int sx = side[std::size_t(x)] == 0 ? -2 : 2;
            int sy = side[std::size_t(y)] == 0 ? -2 : 2;
            g.row(x).for_each([&](int u) { diff[std::size_t(u)] += sx; });
            g.row(y).for_each([&](int u) { diff[std::size_t(u)] += sy; });
            std::swap(side[std::size_t(x)], side[std::size_t(y)]);
            cur += best_delta;
            if (cur < 1e-9) {
                cur = 0;
                for (int v = 0; v < n; ++v) cur += exc(diff[std::size_t(v)]);
            }
        }
        if (cur <= 1e-12) {
            Partition out;
            out.pair_constraint = pairs;
            for (int v = 0; v < n; ++v) (side[std::size_t(v)] == 0 ? out.A : out.B).push_back(v);
            if (partition_valid(g, pairs, out, lemma_bound)) return out;
        }
    }
    throw ConstructionError("balanced-partition",
                            "no compliant partition after " + std::to_string(restarts) +
                                " restarts (n=" + std::to_string(n) + ")");
}

} // namespace totcol
