#pragma once

// Partial edge colorings with incremental missing-color bookkeeping and
// Kempe-chain switching. The per-vertex (color -> edge) index makes chain
// walking O(length); missing sets are bitsets over the palette.

#include <algorithm>
#include <string>
#include <vector>

#include "totcol/bitset.hpp"
#include "totcol/error.hpp"
#include "totcol/graph.hpp"
#include "totcol/verify.hpp"

namespace totcol {

class EdgeColoring {
public:
    EdgeColoring() = default;
    EdgeColoring(const Multigraph& g, int k) : g_(&g), k_(k) {
        TOTCOL_REQUIRE(k >= 0, "palette", "negative palette size");
        color_.assign(std::size_t(g.edge_capacity()), 0);
        at_.assign(std::size_t(g.n()), std::vector<int>(std::size_t(k) + 1, 0));
        missing_.assign(std::size_t(g.n()), Bitset(k));
        for (int v = 0; v < g.n(); ++v)
            for (int c = 1; c <= k; ++c) missing_[std::size_t(v)].set(c - 1);
    }

    const Multigraph& graph() const { return *g_; }
    int k() const { return k_; }

    // Reflect palette growth and/or edges added to the host after creation.
    void grow(int new_k) {
        TOTCOL_REQUIRE(new_k >= k_, "palette", "palette can only grow");
        if (new_k > k_) {
            for (int v = 0; v < g_->n(); ++v) {
                Bitset m(new_k);
                missing_[std::size_t(v)].for_each([&](int b) { m.set(b); });
                for (int c = k_ + 1; c <= new_k; ++c) m.set(c - 1);
                missing_[std::size_t(v)] = std::move(m);
                at_[std::size_t(v)].resize(std::size_t(new_k) + 1, 0);
            }
            k_ = new_k;
        }
        sync_edges();
    }

    void sync_edges() { color_.resize(std::size_t(g_->edge_capacity()), 0); }

    int color(int eid) const { return color_[std::size_t(eid)]; }
    bool colored(int eid) const { return color_[std::size_t(eid)] != 0; }

    // Edge id carrying color c at v, or -1.
    int at(Vertex v, int c) const { return at_[std::size_t(v)][std::size_t(c)] - 1; }
    bool is_missing(Vertex v, int c) const { return missing_[std::size_t(v)].test(c - 1); }
    const Bitset& missing_set(Vertex v) const { return missing_[std::size_t(v)]; }
    int missing_count(Vertex v) const { return missing_[std::size_t(v)].count(); }
    int first_missing(Vertex v) const { return missing_[std::size_t(v)].first() + 1; }
    int first_common_missing(Vertex u, Vertex v) const {
        return missing_[std::size_t(u)].first_common(missing_[std::size_t(v)]) + 1;
    }

    void assign(int eid, int c) {
        TOTCOL_CHECK(c >= 1 && c <= k_, "coloring", "color out of palette");
        TOTCOL_CHECK(color_[std::size_t(eid)] == 0, "coloring",
                     "edge " + std::to_string(eid) + " already colored");
        auto& e = g_->edge(eid);
        TOTCOL_CHECK(e.alive, "coloring", "assign on removed edge");
        TOTCOL_CHECK(is_missing(e.u, c) && is_missing(e.v, c), "coloring",
                     "color " + std::to_string(c) + " not free at both endpoints of edge " +
                         std::to_string(eid));
        color_[std::size_t(eid)] = c;
        for (Vertex w : {e.u, e.v}) {
            at_[std::size_t(w)][std::size_t(c)] = eid + 1;
            missing_[std::size_t(w)].reset(c - 1);
        }
        ++colored_;
    }

    void unassign(int eid) {
        int c = color_[std::size_t(eid)];
        TOTCOL_CHECK(c != 0, "coloring", "unassign on uncolored edge");
        auto& e = g_->edge(eid);
        color_[std::size_t(eid)] = 0;
        for (Vertex w : {e.u, e.v}) {
            at_[std::size_t(w)][std::size_t(c)] = 0;
            missing_[std::size_t(w)].set(c - 1);
        }
        --colored_;
    }

    long long colored_count() const { return colored_; }

    // --- Kempe chains -------------------------------------------------------

    struct Chain {
        int ca = 0, cb = 0;
        std::vector<int> eids;
        std::vector<Vertex> verts;  // eids.size()+1 vertices for a path
        bool cycle = false;
        bool contains_vertex(Vertex v) const {
            return std::find(verts.begin(), verts.end(), v) != verts.end();
        }
        bool contains_edge(int eid) const {
            return std::find(eids.begin(), eids.end(), eid) != eids.end();
        }
        Vertex endpoint_a() const { return verts.front(); }
        Vertex endpoint_b() const { return verts.back(); }
    };

    // Maximal (a,b)-alternating path or cycle through v.
    Chain alternating_chain(Vertex v, int a, int b) const {
        Chain out;
        out.ca = a;
        out.cb = b;
        auto walk = [&](int start_color, std::vector<int>& eids, std::vector<Vertex>& verts) {
            Vertex cur = v;
            int c = start_color;
            while (true) {
                int e = at(cur, c);
                if (e < 0) return false;
                Vertex nxt = g_->other_end(e, cur);
                eids.push_back(e);
                verts.push_back(nxt);
                if (nxt == v) return true;  // closed a cycle
                cur = nxt;
                c = (c == a) ? b : a;
            }
        };
        std::vector<int> fe, be;
        std::vector<Vertex> fv, bv;
        bool closed = walk(a, fe, fv);
        out.verts.push_back(v);
        if (closed) {
            out.cycle = true;
            out.eids = fe;
            out.verts.insert(out.verts.end(), fv.begin(), fv.end());
            return out;
        }
        walk(b, be, bv);
        // Path = reverse(backward) + v + forward.
        std::reverse(be.begin(), be.end());
        std::reverse(bv.begin(), bv.end());
        out.verts = bv;
        out.verts.push_back(v);
        out.verts.insert(out.verts.end(), fv.begin(), fv.end());
        out.eids = be;
        out.eids.insert(out.eids.end(), fe.begin(), fe.end());
        return out;
    }

    // Swap the two colors along a maximal chain. Properness is preserved and
    // missing sets change only at the chain's endpoints.
    void switch_chain(const Chain& ch) {
        if (ch.eids.empty()) return;
        std::vector<int> old(ch.eids.size());
        for (std::size_t i = 0; i < ch.eids.size(); ++i) {
            old[i] = color(ch.eids[i]);
            TOTCOL_CHECK(old[i] == ch.ca || old[i] == ch.cb, "kempe",
                         "chain edge not colored with the chain's colors");
            unassign(ch.eids[i]);
        }
        for (std::size_t i = 0; i < ch.eids.size(); ++i)
            assign(ch.eids[i], old[i] == ch.ca ? ch.cb : ch.ca);
    }

    // --- validation aids ----------------------------------------------------

    Verdict check_proper() const {
        for (int v = 0; v < g_->n(); ++v) {
            std::vector<char> seen(std::size_t(k_) + 1, 0);
            bool bad = false;
            int bad_color = 0;
            g_->for_edges_at(v, [&](int id) {
                int c = color(id);
                if (!c) return;
                if (c > k_ || seen[std::size_t(c)]) {
                    bad = true;
                    bad_color = c;
                }
                if (c <= k_) seen[std::size_t(c)] = 1;
            });
            if (bad)
                return Verdict::fail("proper", "vertex " + std::to_string(v) +
                                                   " repeats color " + std::to_string(bad_color));
        }
        return Verdict::pass();
    }

    // Recompute missing sets from raw assignments and compare (debug aid).
    bool missing_sets_coherent() const {
        for (int v = 0; v < g_->n(); ++v) {
            Bitset fresh(k_);
            for (int c = 1; c <= k_; ++c) fresh.set(c - 1);
            bool dup = false;
            g_->for_edges_at(v, [&](int id) {
                if (int c = color(id); c) {
                    if (!fresh.test(c - 1)) dup = true;
                    fresh.reset(c - 1);
                }
            });
            if (dup || !(fresh == missing_[std::size_t(v)])) return false;
            for (int c = 1; c <= k_; ++c) {
                int e = at(v, c);
                if (e >= 0) {
                    auto& ed = g_->edge(e);
                    if (color(e) != c || (ed.u != v && ed.v != v)) return false;
                }
            }
        }
        return true;
    }

    std::vector<ColoredEdge> export_colored() const {
        std::vector<ColoredEdge> out;
        for (int id = 0; id < g_->edge_capacity(); ++id)
            if (g_->alive(id) && colored(id)) {
                auto& e = g_->edge(id);
                out.push_back({e.u, e.v, e.slot, color(id)});
            }
        return out;
    }

    std::vector<int> uncolored_ids() const {
        std::vector<int> out;
        for (int id = 0; id < g_->edge_capacity(); ++id)
            if (g_->alive(id) && !colored(id)) out.push_back(id);
        return out;
    }

    // Class size per color (1..k), index 0 unused.
    std::vector<int> class_sizes() const {
        std::vector<int> sz(std::size_t(k_) + 1, 0);
        for (int id = 0; id < g_->edge_capacity(); ++id)
            if (g_->alive(id) && colored(id)) ++sz[std::size_t(color(id))];
        return sz;
    }

private:
    const Multigraph* g_ = nullptr;
    int k_ = 0;
    std::vector<int> color_;
    std::vector<std::vector<int>> at_;
    std::vector<Bitset> missing_;
    long long colored_ = 0;
};

// Parity audit of a (possibly partial) coloring over the host's vertex set:
// for every color, #vertices missing it must be congruent to n mod 2. For
// proper colorings this certifies every class is a matching.
inline std::vector<int> parity_audit(const EdgeColoring& c) {
    std::vector<int> bad;
    int n = c.graph().n();
    for (int col = 1; col <= c.k(); ++col) {
        int miss = 0;
        for (int v = 0; v < n; ++v)
            if (c.is_missing(v, col)) ++miss;
        if (miss % 2 != n % 2) bad.push_back(col);
    }
    return bad;
}

} // namespace totcol
