#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "totcol/bitset.hpp"
#include "totcol/error.hpp"

namespace totcol {

using Vertex = int;
using VertexPair = std::pair<Vertex, Vertex>;
using PairList = std::vector<VertexPair>;

inline VertexPair ordered(Vertex u, Vertex v) { return u < v ? VertexPair{u, v} : VertexPair{v, u}; }

// Simple graph on vertices 0..n-1. Adjacency is kept as bitset rows (the
// dense-graph fast path); immutable after construction in all algorithm code.
class Graph {
public:
    Graph() = default;
    explicit Graph(int n) : n_(n), adj_(n, Bitset(n)), deg_(n, 0) {}

    int n() const { return n_; }

    bool has_edge(Vertex u, Vertex v) const { return u != v && adj_[u].test(v); }

    void add_edge(Vertex u, Vertex v) {
        TOTCOL_REQUIRE(u != v, "no-loops", "loop at vertex " + std::to_string(u));
        TOTCOL_REQUIRE(u >= 0 && v >= 0 && u < n_ && v < n_, "vertex-range",
                       std::to_string(u) + "," + std::to_string(v));
        if (adj_[u].test(v)) return;
        adj_[u].set(v);
        adj_[v].set(u);
        ++deg_[u];
        ++deg_[v];
        ++m_;
    }

    void remove_edge(Vertex u, Vertex v) {
        if (u == v || !adj_[u].test(v)) return;
        adj_[u].reset(v);
        adj_[v].reset(u);
        --deg_[u];
        --deg_[v];
        --m_;
    }

    int degree(Vertex v) const { return deg_[v]; }
    const Bitset& row(Vertex v) const { return adj_[v]; }
    long long edge_count() const { return m_; }

    int min_degree() const { return n_ ? *std::min_element(deg_.begin(), deg_.end()) : 0; }
    int max_degree() const { return n_ ? *std::max_element(deg_.begin(), deg_.end()) : 0; }

    // Edges in lexicographic order (the canonical emission order).
    PairList edges() const {
        PairList out;
        out.reserve(std::size_t(m_));
        for (Vertex u = 0; u < n_; ++u)
            adj_[u].for_each([&](int v) {
                if (v > u) out.emplace_back(u, v);
            });
        return out;
    }

    friend bool operator==(const Graph& a, const Graph& b) = default;

private:
    int n_ = 0;
    std::vector<Bitset> adj_;
    std::vector<int> deg_;
    long long m_ = 0;
};

inline Graph complement(const Graph& g) {
    Graph h(g.n());
    for (Vertex u = 0; u < g.n(); ++u)
        for (Vertex v = u + 1; v < g.n(); ++v)
            if (!g.has_edge(u, v)) h.add_edge(u, v);
    return h;
}

// Degree landscape of a graph: delta/Delta, the extreme-degree classes, the
// low-degree set U_xi = {u : Delta - d(u) >= xi*n} and the middle-degree set.
struct DegreeProfile {
    int delta = 0;
    int Delta = 0;
    std::vector<Vertex> V_delta;
    std::vector<Vertex> V_Delta;
    std::vector<Vertex> U_xi;
    std::vector<Vertex> middle;
    bool regular() const { return delta == Delta; }
};

inline DegreeProfile degree_profile(const Graph& g, double xi) {
    TOTCOL_REQUIRE(g.n() > 0, "non-empty", "degree_profile of empty graph");
    DegreeProfile p;
    p.delta = g.min_degree();
    p.Delta = g.max_degree();
    for (Vertex v = 0; v < g.n(); ++v) {
        int d = g.degree(v);
        if (d == p.delta) p.V_delta.push_back(v);
        if (d == p.Delta) p.V_Delta.push_back(v);
        if (d > p.delta && d < p.Delta) p.middle.push_back(v);
        if (double(p.Delta - d) >= xi * g.n()) p.U_xi.push_back(v);
    }
    return p;
}

// Multigraph with stable per-edge identities. Edge ids index into an append-
// only record table; parallel edges are distinguished by (u, v, slot).
class Multigraph {
public:
    struct Edge {
        Vertex u, v;
        int slot;
        bool alive;
    };

    Multigraph() = default;
    explicit Multigraph(int n) : n_(n), inc_(n), deg_(n, 0), mult_(n, std::vector<std::uint16_t>(n, 0)),
                                 slots_(n, std::vector<std::uint16_t>(n, 0)) {}

    int n() const { return n_; }
    int edge_capacity() const { return int(edges_.size()); }

    int add_edge(Vertex u, Vertex v) {
        TOTCOL_REQUIRE(u != v, "no-loops", "loop at vertex " + std::to_string(u));
        TOTCOL_REQUIRE(u >= 0 && v >= 0 && u < n_ && v < n_, "vertex-range",
                       std::to_string(u) + "," + std::to_string(v));
        auto [a, b] = ordered(u, v);
        int slot = slots_[a][b]++;
        int id = int(edges_.size());
        edges_.push_back({a, b, slot, true});
        inc_[a].push_back(id);
        inc_[b].push_back(id);
        ++mult_[a][b];
        ++mult_[b][a];
        ++deg_[a];
        ++deg_[b];
        ++m_;
        return id;
    }

    void remove_edge(int id) {
        Edge& e = edges_.at(std::size_t(id));
        TOTCOL_REQUIRE(e.alive, "edge-alive", "edge " + std::to_string(id) + " already removed");
        e.alive = false;
        --mult_[e.u][e.v];
        --mult_[e.v][e.u];
        --deg_[e.u];
        --deg_[e.v];
        --m_;
    }

    bool alive(int id) const { return edges_[std::size_t(id)].alive; }
    const Edge& edge(int id) const { return edges_[std::size_t(id)]; }
    Vertex other_end(int id, Vertex w) const {
        const Edge& e = edges_[std::size_t(id)];
        return e.u == w ? e.v : e.u;
    }

    int multiplicity(Vertex u, Vertex v) const { return mult_[u][v]; }
    int degree(Vertex v) const { return deg_[v]; }
    long long edge_count() const { return m_; }

    int max_degree() const { return n_ ? *std::max_element(deg_.begin(), deg_.end()) : 0; }

    // mu(G): maximum pairwise multiplicity.
    int max_multiplicity() const {
        int mu = 0;
        for (Vertex u = 0; u < n_; ++u)
            for (Vertex v = u + 1; v < n_; ++v) mu = std::max(mu, int(mult_[u][v]));
        return mu;
    }
    // mu_G(v): maximum multiplicity of a pair at v.
    int vertex_multiplicity(Vertex v) const {
        int mu = 0;
        for (Vertex u = 0; u < n_; ++u)
            if (u != v) mu = std::max(mu, int(mult_[v][u]));
        return mu;
    }

    // Live incident edge ids in insertion order.
    template <class F>
    void for_edges_at(Vertex v, F f) const {
        for (int id : inc_[v])
            if (edges_[std::size_t(id)].alive) f(id);
    }

    std::vector<int> edges_at(Vertex v) const {
        std::vector<int> out;
        for_edges_at(v, [&](int id) { out.push_back(id); });
        return out;
    }

    // All live edge ids, ascending.
    std::vector<int> edge_ids() const {
        std::vector<int> out;
        out.reserve(std::size_t(m_));
        for (int id = 0; id < int(edges_.size()); ++id)
            if (edges_[std::size_t(id)].alive) out.push_back(id);
        return out;
    }

    // A parallel live partner of edge id, or -1.
    int parallel_partner(int id) const {
        const Edge& e = edges_[std::size_t(id)];
        if (mult_[e.u][e.v] < 2) return -1;
        for (int j : inc_[e.u]) {
            const Edge& f = edges_[std::size_t(j)];
            if (j != id && f.alive && f.u == e.u && f.v == e.v) return j;
        }
        return -1;
    }

    static Multigraph from_graph(const Graph& g) {
        Multigraph h(g.n());
        for (auto [u, v] : g.edges()) h.add_edge(u, v);
        return h;
    }

private:
    int n_ = 0;
    std::vector<Edge> edges_;
    std::vector<std::vector<int>> inc_;
    std::vector<int> deg_;
    std::vector<std::vector<std::uint16_t>> mult_;
    std::vector<std::vector<std::uint16_t>> slots_;
    long long m_ = 0;
};

// A set of edge ids of one host multigraph.
struct EdgeSet {
    std::vector<int> ids;
    bool contains(int id) const { return std::find(ids.begin(), ids.end(), id) != ids.end(); }
    std::size_t size() const { return ids.size(); }
};

// Checks that `m` is a matching (pairwise vertex-disjoint, valid vertices).
inline bool is_matching(const PairList& m, int n) {
    std::vector<char> used(std::size_t(n), 0);
    for (auto [u, v] : m) {
        if (u < 0 || v < 0 || u >= n || v >= n || u == v) return false;
        if (used[std::size_t(u)] || used[std::size_t(v)]) return false;
        used[std::size_t(u)] = used[std::size_t(v)] = 1;
    }
    return true;
}

inline bool is_matching_in_complement(const Graph& g, const PairList& m) {
    if (!is_matching(m, g.n())) return false;
    for (auto [u, v] : m)
        if (g.has_edge(u, v)) return false;
    return true;
}

} // namespace totcol
