#pragma once

// Multifans, linear sequences, shifts, and the fan/Kempe augmentation engine
// behind the rainbow-preserving coloring extensions. The engine performs the
// hit/shift step when a fan vertex shares a missing color with the center,
// and otherwise switches one alternating path chosen so that a hit appears,
// asserting progress every round.

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "totcol/edge_coloring.hpp"
#include "totcol/error.hpp"
#include "totcol/graph.hpp"

namespace totcol {

// Fan at `center`: position 0 is the uncolored edge e0 with far vertex s0;
// positions i >= 1 carry colored edges whose color is missing at the witness
// position witness[i] < i. Witness chains are linear sequences.
struct Multifan {
    Vertex center = -1;
    std::vector<int> edges;     // edges[0] = e0 uncolored; edges[i] colored
    std::vector<Vertex> verts;  // verts[i] = far endpoint s_i
    std::vector<int> witness;   // witness[0] = -1; witness[i] in [0, i)

    std::size_t size() const { return edges.size(); }

    // Linear sequence of positions ending at `pos`, starting at 0.
    std::vector<int> chain_to(int pos) const {
        std::vector<int> seq;
        for (int p = pos; p >= 0; p = witness[std::size_t(p)]) seq.push_back(p);
        std::reverse(seq.begin(), seq.end());
        return seq;
    }
};

// Grows a maximal multifan at `center` from uncolored edge e0, never using
// forbidden edges, so every linear sequence of the result avoids them. The
// scan is deterministic in incidence order.
inline Multifan build_multifan(const EdgeColoring& c, Vertex center, int e0,
                               const std::vector<char>& forbidden_edge) {
    const Multigraph& g = c.graph();
    TOTCOL_REQUIRE(!c.colored(e0), "fan-e0", "fan seed edge must be uncolored");
    Multifan f;
    f.center = center;
    f.edges = {e0};
    f.verts = {g.other_end(e0, center)};
    f.witness = {-1};

    Bitset demanded = c.missing_set(f.verts[0]);
    std::vector<char> in_fan(std::size_t(g.edge_capacity()), 0);
    in_fan[std::size_t(e0)] = 1;

    bool grew = true;
    while (grew) {
        grew = false;
        g.for_edges_at(center, [&](int id) {
            if (in_fan[std::size_t(id)]) return;
            if (!forbidden_edge.empty() && forbidden_edge[std::size_t(id)]) return;
            int col = c.color(id);
            if (!col || !demanded.test(col - 1)) return;
            // Lowest fan position whose missing set demands this color.
            int w = -1;
            for (std::size_t j = 0; j < f.size(); ++j)
                if (c.is_missing(f.verts[j], col)) {
                    w = int(j);
                    break;
                }
            if (w < 0) return;
            in_fan[std::size_t(id)] = 1;
            f.edges.push_back(id);
            f.verts.push_back(g.other_end(id, center));
            f.witness.push_back(w);
            demanded |= c.missing_set(f.verts.back());
            grew = true;
        });
    }
    return f;
}

// Re-derives witnesses of an existing fan under the current coloring and
// returns the longest valid prefix length (>= 1; position 0 is always valid
// while e0 stays uncolored).
inline std::size_t revalidate_fan(const EdgeColoring& c, Multifan& f) {
    if (c.colored(f.edges[0])) return 0;
    for (std::size_t i = 1; i < f.size(); ++i) {
        int col = c.color(f.edges[i]);
        int w = -1;
        if (col)
            for (std::size_t j = 0; j < i; ++j)
                if (c.is_missing(f.verts[j], col)) {
                    w = int(j);
                    break;
                }
        if (w < 0) {
            f.edges.resize(i);
            f.verts.resize(i);
            f.witness.resize(i);
            return i;
        }
        f.witness[i] = w;
    }
    return f.size();
}

// Shift along the linear sequence ending at position `pos`: every edge on the
// chain takes its successor's color; e0 becomes colored, edges[pos] becomes
// uncolored. h = 0 is the identity.
inline void shift_to(EdgeColoring& c, const Multifan& f, int pos) {
    if (pos == 0) return;
    auto seq = f.chain_to(pos);
    TOTCOL_CHECK(seq.front() == 0, "shift", "linear sequence must start at position 0");
    std::vector<int> cols(seq.size(), 0);
    for (std::size_t i = 1; i < seq.size(); ++i) cols[i] = c.color(f.edges[std::size_t(seq[i])]);
    for (std::size_t i = 1; i < seq.size(); ++i) c.unassign(f.edges[std::size_t(seq[i])]);
    for (std::size_t i = 0; i + 1 < seq.size(); ++i)
        c.assign(f.edges[std::size_t(seq[i])], cols[i + 1]);
}

// Spec-level shift taking an explicit linear sequence of fan positions
// (chain[0] must be 0) and a stop index h within it.
inline void shift(EdgeColoring& c, const Multifan& f, const std::vector<int>& chain, int h) {
    TOTCOL_REQUIRE(!chain.empty() && chain[0] == 0, "shift-chain",
                   "linear sequence must begin at the uncolored position");
    TOTCOL_REQUIRE(h >= 0 && h < int(chain.size()), "shift-range", "h outside the sequence");
    for (std::size_t i = 1; i < chain.size(); ++i) {
        int col = c.color(f.edges[std::size_t(chain[i])]);
        TOTCOL_REQUIRE(col && c.is_missing(f.verts[std::size_t(chain[i - 1])], col), "shift-chain",
                       "not a linear sequence: color not missing at predecessor");
    }
    if (h == 0) return;
    std::vector<int> cols(std::size_t(h) + 1, 0);
    for (int i = 1; i <= h; ++i) cols[std::size_t(i)] = c.color(f.edges[std::size_t(chain[std::size_t(i)])]);
    for (int i = 1; i <= h; ++i) c.unassign(f.edges[std::size_t(chain[std::size_t(i)])]);
    for (int i = 0; i < h; ++i) c.assign(f.edges[std::size_t(chain[std::size_t(i)])], cols[std::size_t(i) + 1]);
}

// --- augmentation engine ----------------------------------------------------

struct ExtendOptions {
    enum Mode { Generic, LemmaA, LemmaB } mode = Generic;
    std::vector<char> in_J;   // per edge id: precolored, never uncolored
    std::vector<char> in_J0;  // subset of J that must stay rainbow
    Vertex x = -1;            // star center: all its edges must be in J
    std::vector<int> side;    // LemmaB: side[v] in {0 (X), 1 (Y)}; -1 for x
    long long round_cap = 0;  // 0 = default n*k + slack
};

struct ExtendDiag {
    long long rounds = 0;
    long long switches = 0;
    long long shifts = 0;
    std::string failure;
};

namespace detail {

// One full augmentation: color one more edge. Returns false only when the
// engine ran out of case-analysis moves (diagnosed by the caller).
inline bool extend_one(EdgeColoring& c, int e0, const ExtendOptions& opt, ExtendDiag& diag) {
    const Multigraph& g = c.graph();
    auto& e = g.edge(e0);
    Vertex u = e.u, v = e.v;
    if (opt.mode == ExtendOptions::LemmaB) {
        // Center the fan at the Y-side endpoint; w0 lands in X.
        if (opt.side[std::size_t(u)] == 0) std::swap(u, v);
    } else if (c.missing_count(v) < c.missing_count(u)) {
        // Centering where more fан growth is available is a heuristic only.
        std::swap(u, v);
    }

    long long inner_cap = 2LL * c.k() + 8;
    for (long long inner = 0; inner < inner_cap; ++inner) {
        Multifan fan = build_multifan(c, u, e0, opt.in_J);

        // Hit: a fan vertex shares a missing color with the center.
        for (std::size_t pos = 0; pos < fan.size(); ++pos) {
            int gamma = c.first_common_missing(u, fan.verts[pos]);
            if (gamma <= 0) continue;
            shift_to(c, fan, int(pos));
            ++diag.shifts;
            c.assign(fan.edges[pos], gamma);
            return true;
        }

        // No hit: pick gamma missing at as many distinct fan vertices as
        // possible, alpha missing at the center, and switch an eligible
        // maximal (alpha,gamma)-path so that a hit appears.
        std::map<int, std::vector<Vertex>> by_color;  // color -> fan vertices missing it
        {
            std::vector<char> seen_vertex(std::size_t(g.n()), 0);
            for (std::size_t i = 0; i < fan.size(); ++i) {
                Vertex w = fan.verts[i];
                if (seen_vertex[std::size_t(w)]) continue;
                seen_vertex[std::size_t(w)] = 1;
                c.missing_set(w).for_each([&](int b) { by_color[b + 1].push_back(w); });
            }
        }
        int gamma = 0;
        std::size_t best = 0;
        for (auto& [col, verts] : by_color)
            if (verts.size() > best) {
                best = verts.size();
                gamma = col;
            }
        if (gamma == 0) {
            diag.failure = "fan-no-missing-color";
            return false;
        }
        int alpha = c.first_missing(u);
        if (alpha <= 0) {
            diag.failure = "center-saturated";  // d(u) >= k: palette too small
            return false;
        }

        std::vector<Vertex> starts = {u};
        for (Vertex y : by_color[gamma]) {
            starts.push_back(y);
            if (starts.size() >= 5) break;  // u plus up to four gamma-missing
        }
        // Collect distinct maximal paths from the candidate endpoints.
        std::vector<EdgeColoring::Chain> paths;
        std::vector<char> seen_endpoint(std::size_t(g.n()), 0);
        for (Vertex s : starts) {
            if (seen_endpoint[std::size_t(s)]) continue;
            auto ch = c.alternating_chain(s, alpha, gamma);
            if (ch.eids.empty() || ch.cycle) continue;
            seen_endpoint[std::size_t(ch.endpoint_a())] = 1;
            seen_endpoint[std::size_t(ch.endpoint_b())] = 1;
            paths.push_back(std::move(ch));
        }
        auto eligible = [&](const EdgeColoring::Chain& ch) {
            if (!opt.in_J0.empty())
                for (int id : ch.eids)
                    if (opt.in_J0[std::size_t(id)]) return false;
            if (opt.mode == ExtendOptions::LemmaB) {
                if (opt.x >= 0 && ch.contains_vertex(opt.x)) return false;
                int fan_ends = 0;
                for (Vertex w : {ch.endpoint_a(), ch.endpoint_b()}) {
                    if (w == u) ++fan_ends;
                    for (Vertex fw : fan.verts)
                        if (fw == w) {
                            ++fan_ends;
                            break;
                        }
                }
                if (fan_ends > 1) return false;
            }
            return true;
        };
        // Prefer a path not anchored at the center: switching it hands alpha
        // to a fan vertex while the center keeps missing alpha, forcing a hit.
        const EdgeColoring::Chain* pick_path = nullptr;
        for (auto& ch : paths)
            if (ch.endpoint_a() != u && ch.endpoint_b() != u && eligible(ch)) {
                pick_path = &ch;
                break;
            }
        if (!pick_path)
            for (auto& ch : paths)
                if (eligible(ch)) {
                    pick_path = &ch;
                    break;
                }
        if (!pick_path) {
            diag.failure = "no-eligible-kempe-path";
            return false;
        }
        c.switch_chain(*pick_path);
        ++diag.switches;

        // A hit should now exist on the surviving prefix of the old fan; the
        // loop re-checks there first, then rebuilds from scratch.
        if (revalidate_fan(c, fan) > 0) {
            for (std::size_t pos = 0; pos < fan.size(); ++pos) {
                int g2 = c.first_common_missing(u, fan.verts[pos]);
                if (g2 <= 0) continue;
                shift_to(c, fan, int(pos));
                ++diag.shifts;
                c.assign(fan.edges[pos], g2);
                return true;
            }
        }
    }
    diag.failure = "inner-cap";
    return false;
}

} // namespace detail

// Colors every uncolored non-J edge of the host, maintaining: J edges stay
// colored (colors may change), J0 stays rainbow, properness throughout.
// Progress is asserted per round; the cap is n*k rounds.
inline void extend_coloring(EdgeColoring& c, const ExtendOptions& opt, ExtendDiag* diag_out = nullptr) {
    const Multigraph& g = c.graph();
    if (!opt.in_J.empty())
        for (int id = 0; id < g.edge_capacity(); ++id)
            TOTCOL_REQUIRE(!(g.alive(id) && opt.in_J[std::size_t(id)] && !c.colored(id)),
                           "J-precolored", "every edge of J must enter colored");
    ExtendDiag diag;
    long long cap = opt.round_cap ? opt.round_cap
                                  : 16 + (long long)g.n() * std::max(1, c.k());
    int rotate = 0;
    for (;;) {
        auto todo = c.uncolored_ids();
        todo.erase(std::remove_if(todo.begin(), todo.end(),
                                  [&](int id) {
                                      return !opt.in_J.empty() && opt.in_J[std::size_t(id)];
                                  }),
                   todo.end());
        if (todo.empty()) break;
        TOTCOL_CHECK(++diag.rounds <= cap, "extend-cap",
                     "augmentation cap hit with " + std::to_string(todo.size()) +
                         " edges uncolored (" + diag.failure + ")");
        int pick = todo[std::size_t(rotate) % todo.size()];
        long long before = c.colored_count();
        bool okay = detail::extend_one(c, pick, opt, diag);
        if (!okay || c.colored_count() <= before) {
            // Vary the target edge before giving up.
            ++rotate;
            if (rotate > int(todo.size()) + 4)
                throw ConstructionError("extend-stall",
                                        "no progress on any uncolored edge: " + diag.failure);
            continue;
        }
        rotate = 0;
    }
    if (diag_out) *diag_out = diag;
}

} // namespace totcol
