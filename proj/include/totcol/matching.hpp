#pragma once

// Maximum matching in general graphs via Edmonds' blossom algorithm, with a
// Tutte-Berge witness extracted from the final alternating forest, plus the
// complement-matching selection used by the reduction.

#include <cmath>
#include <functional>
#include <queue>
#include <vector>

#include "totcol/error.hpp"
#include "totcol/graph.hpp"

namespace totcol {

struct MatchingResult {
    PairList matching;
    std::vector<Vertex> witness;  // set S achieving the Tutte-Berge minimum
};

namespace detail {

// Blossom matcher over an adjacency callback, so the complement of a dense
// graph is never materialized (its blossom queries test non-adjacency on the
// host's bitset rows directly).
class BlossomMatcher {
public:
    using AdjFn = std::function<void(int, const std::function<void(int)>&)>;

    BlossomMatcher(int n, AdjFn adj) : n_(n), adj_(std::move(adj)), match_(std::size_t(n), -1) {}

    void run() {
        // Greedy seed keeps the number of phases down.
        for (int v = 0; v < n_; ++v)
            if (match_[std::size_t(v)] < 0)
                adj_(v, [&](int u) {
                    if (match_[std::size_t(v)] < 0 && match_[std::size_t(u)] < 0 && u != v) {
                        match_[std::size_t(v)] = u;
                        match_[std::size_t(u)] = v;
                    }
                });
        for (int v = 0; v < n_; ++v)
            if (match_[std::size_t(v)] < 0) find_path(v);
    }

    const std::vector<int>& mate() const { return match_; }

    // Gallai-Edmonds style labeling at maximality: D = even-reachable from
    // exposed vertices, S = the odd (inner) set. Requires run() first.
    std::vector<Vertex> tutte_berge_witness() {
        label_.assign(std::size_t(n_), UNREACHED);
        p_.assign(std::size_t(n_), -1);
        base_.resize(std::size_t(n_));
        for (int i = 0; i < n_; ++i) base_[std::size_t(i)] = i;
        std::queue<int> q;
        for (int v = 0; v < n_; ++v)
            if (match_[std::size_t(v)] < 0) {
                label_[std::size_t(v)] = EVEN;
                q.push(v);
            }
        while (!q.empty()) {
            int v = q.front();
            q.pop();
            adj_(v, [&](int to) {
                if (base_[std::size_t(v)] == base_[std::size_t(to)] || match_[std::size_t(v)] == to)
                    return;
                if (label_[std::size_t(to)] == EVEN) {
                    // Two even vertices meeting across trees would be an
                    // augmenting path, impossible at maximality.
                    int cur = lca(v, to);
                    blossom_.assign(std::size_t(n_), 0);
                    mark_path(v, cur, to);
                    mark_path(to, cur, v);
                    for (int i = 0; i < n_; ++i)
                        if (blossom_[std::size_t(base_[std::size_t(i)])]) {
                            base_[std::size_t(i)] = cur;
                            if (label_[std::size_t(i)] != EVEN) {
                                label_[std::size_t(i)] = EVEN;
                                q.push(i);
                            }
                        }
                } else if (label_[std::size_t(to)] == UNREACHED) {
                    label_[std::size_t(to)] = ODD;
                    p_[std::size_t(to)] = v;
                    int w = match_[std::size_t(to)];
                    TOTCOL_CHECK(w >= 0, "blossom-witness",
                                 "augmenting path found at claimed maximality");
                    if (label_[std::size_t(w)] != EVEN) {
                        label_[std::size_t(w)] = EVEN;
                        q.push(w);
                    }
                }
            });
        }
        std::vector<Vertex> S;
        for (int v = 0; v < n_; ++v)
            if (label_[std::size_t(v)] == ODD) S.push_back(v);
        return S;
    }

private:
    enum Label { UNREACHED = 0, EVEN = 1, ODD = 2 };

    int lca(int a, int b) {
        std::vector<char> seen(std::size_t(n_), 0);
        for (;;) {
            a = base_[std::size_t(a)];
            seen[std::size_t(a)] = 1;
            if (match_[std::size_t(a)] < 0) break;
            a = p_[std::size_t(match_[std::size_t(a)])];
        }
        for (;;) {
            b = base_[std::size_t(b)];
            if (seen[std::size_t(b)]) return b;
            b = p_[std::size_t(match_[std::size_t(b)])];
        }
    }

    void mark_path(int v, int b, int child) {
        while (base_[std::size_t(v)] != b) {
            blossom_[std::size_t(base_[std::size_t(v)])] = 1;
            blossom_[std::size_t(base_[std::size_t(match_[std::size_t(v)])])] = 1;
            p_[std::size_t(v)] = child;
            child = match_[std::size_t(v)];
            v = p_[std::size_t(child)];
        }
    }

    bool find_path(int root) {
        label_.assign(std::size_t(n_), UNREACHED);
        p_.assign(std::size_t(n_), -1);
        base_.resize(std::size_t(n_));
        for (int i = 0; i < n_; ++i) base_[std::size_t(i)] = i;
        label_[std::size_t(root)] = EVEN;
        std::queue<int> q;
        q.push(root);
        while (!q.empty()) {
            int v = q.front();
            q.pop();
            bool augmented = false;
            adj_(v, [&](int to) {
                if (augmented) return;
                if (base_[std::size_t(v)] == base_[std::size_t(to)] || match_[std::size_t(v)] == to)
                    return;
                if (to == root ||
                    (match_[std::size_t(to)] >= 0 && p_[std::size_t(match_[std::size_t(to)])] >= 0) ||
                    label_[std::size_t(to)] == EVEN) {
                    int cur = lca(v, to);
                    blossom_.assign(std::size_t(n_), 0);
                    mark_path(v, cur, to);
                    mark_path(to, cur, v);
                    for (int i = 0; i < n_; ++i)
                        if (blossom_[std::size_t(base_[std::size_t(i)])]) {
                            base_[std::size_t(i)] = cur;
                            if (label_[std::size_t(i)] != EVEN) {
                                label_[std::size_t(i)] = EVEN;
                                q.push(i);
                            }
                        }
                } else if (p_[std::size_t(to)] < 0) {
                    p_[std::size_t(to)] = v;
                    if (match_[std::size_t(to)] < 0) {
                        augment_through(to);
                        augmented = true;
                    } else {
                        label_[std::size_t(to)] = ODD;
                        int w = match_[std::size_t(to)];
                        label_[std::size_t(w)] = EVEN;
                        q.push(w);
                    }
                }
            });
            if (augmented) return true;
        }
        return false;
    }

    void augment_through(int v) {
        while (v >= 0) {
            int pv = p_[std::size_t(v)];
            int ppv = match_[std::size_t(pv)];
            match_[std::size_t(v)] = pv;
            match_[std::size_t(pv)] = v;
            v = ppv;
        }
    }

    int n_;
    AdjFn adj_;
    std::vector<int> match_, p_, base_;
    std::vector<char> label_, blossom_;
};

inline MatchingResult run_blossom(int n, BlossomMatcher::AdjFn adj) {
    BlossomMatcher bm(n, std::move(adj));
    bm.run();
    MatchingResult out;
    for (int v = 0; v < n; ++v)
        if (int u = bm.mate()[std::size_t(v)]; u > v) out.matching.emplace_back(v, u);
    out.witness = bm.tutte_berge_witness();
    return out;
}

} // namespace detail

inline MatchingResult max_matching(const Graph& g) {
    return detail::run_blossom(g.n(), [&](int v, const std::function<void(int)>& f) {
        g.row(v).for_each(f);
    });
}

inline MatchingResult max_matching(const Multigraph& g) {
    // Parallel edges never help a matching; work on the support.
    Graph s(g.n());
    for (int id : g.edge_ids()) {
        auto& e = g.edge(id);
        if (!s.has_edge(e.u, e.v)) s.add_edge(e.u, e.v);
    }
    return max_matching(s);
}

// Maximum matching of complement(g) without materializing the complement.
inline MatchingResult max_matching_complement(const Graph& g) {
    return detail::run_blossom(g.n(), [&](int v, const std::function<void(int)>& f) {
        for (int u = 0; u < g.n(); ++u)
            if (u != v && !g.has_edge(u, v)) f(u);
    });
}

// Number of odd components of g - S.
inline int odd_components_minus(const Graph& g, const std::vector<Vertex>& S) {
    std::vector<char> removed(std::size_t(g.n()), 0);
    for (int v : S) removed[std::size_t(v)] = 1;
    std::vector<char> seen(std::size_t(g.n()), 0);
    int odd = 0;
    for (int v = 0; v < g.n(); ++v) {
        if (removed[std::size_t(v)] || seen[std::size_t(v)]) continue;
        int size = 0;
        std::vector<int> stack = {v};
        seen[std::size_t(v)] = 1;
        while (!stack.empty()) {
            int w = stack.back();
            stack.pop_back();
            ++size;
            g.row(w).for_each([&](int u) {
                if (!removed[std::size_t(u)] && !seen[std::size_t(u)]) {
                    seen[std::size_t(u)] = 1;
                    stack.push_back(u);
                }
            });
        }
        if (size % 2) ++odd;
    }
    return odd;
}

inline bool tutte_berge_certifies(const Graph& g, const MatchingResult& r) {
    return 2 * int(r.matching.size()) ==
           g.n() + int(r.witness.size()) - odd_components_minus(g, r.witness);
}

struct ComplementMatchingResult {
    PairList matching;
    bool shortfall = false;  // maximum matching of the complement fell short
    int target = 0;
    double guaranteed_bound = 0;  // n/2 - 1.5 xi n
};

// The reduction's matching selection: a matching of complement(g) of the
// requested size, certified by blossom on non-adjacency queries. Hypothesis
// enforcement can be lifted for best-effort callers; the shortfall flag is a
// value either way.
inline ComplementMatchingResult complement_matching(const Graph& g, double xi, int target,
                                                    bool enforce_hypotheses = true) {
    int n = g.n();
    if (enforce_hypotheses) {
        TOTCOL_REQUIRE(2 * g.min_degree() >= n, "min-degree",
                       "complement_matching needs delta >= n/2");
        TOTCOL_REQUIRE(4 * g.max_degree() < 3 * n, "max-degree",
                       "complement_matching needs Delta < 3n/4");
    }
    TOTCOL_REQUIRE(target <= n / 2, "target", "target exceeds floor(n/2)");
    ComplementMatchingResult out;
    out.target = target;
    out.guaranteed_bound = n / 2.0 - 1.5 * xi * n;
    MatchingResult max = max_matching_complement(g);
    if (int(max.matching.size()) < target) {
        out.matching = max.matching;
        out.shortfall = true;
        return out;
    }
    std::sort(max.matching.begin(), max.matching.end());
    max.matching.resize(std::size_t(target));
    out.matching = std::move(max.matching);
    return out;
}

} // namespace totcol
