#pragma once

// Class-size balancing of proper edge colorings: plain equalization to within
// one edge, and the rainbow-preserving variant whose switches never touch a
// component containing a distinguished edge.

#include <algorithm>
#include <vector>

#include "totcol/edge_coloring.hpp"
#include "totcol/error.hpp"

namespace totcol {

namespace detail {

// Path components of the (hi,lo) 2-colored subgraph with one more hi edge
// than lo. Switching one moves a single edge from class hi to class lo.
// skip_edges marks edges whose component must not be switched.
inline bool rebalance_pair(EdgeColoring& c, int hi, int lo, const std::vector<char>& skip_edges) {
    const Multigraph& g = c.graph();
    // Endpoints of path components see exactly one of the two colors.
    for (int v = 0; v < g.n(); ++v) {
        bool has_hi = c.at(v, hi) >= 0, has_lo = c.at(v, lo) >= 0;
        if (!has_hi || has_lo) continue;  // start only from hi-side endpoints
        auto ch = c.alternating_chain(v, hi, lo);
        if (ch.cycle || ch.eids.empty()) continue;
        int surplus = 0;
        bool skip = false;
        for (int id : ch.eids) {
            surplus += c.color(id) == hi ? 1 : -1;
            if (!skip_edges.empty() && skip_edges[std::size_t(id)]) skip = true;
        }
        if (skip || surplus != 1) continue;
        c.switch_chain(ch);
        return true;
    }
    return false;
}

inline std::pair<int, int> extreme_classes(const std::vector<int>& sz) {
    int hi = 1, lo = 1;
    for (int i = 1; i < int(sz.size()); ++i) {
        if (sz[std::size_t(i)] > sz[std::size_t(hi)]) hi = i;
        if (sz[std::size_t(i)] < sz[std::size_t(lo)]) lo = i;
    }
    return {hi, lo};
}

} // namespace detail

// McDiarmid equalization: every class ends with floor(|E|/k) or ceil(|E|/k)
// edges. Requires a proper coloring that is total on the live edges.
inline void equalize(EdgeColoring& c) {
    TOTCOL_REQUIRE(c.uncolored_ids().empty(), "total-coloring",
                   "equalize needs a coloring that is total on E");
    std::vector<char> no_skip;
    for (;;) {
        auto sz = c.class_sizes();
        auto [hi, lo] = detail::extreme_classes(sz);
        if (sz[std::size_t(hi)] - sz[std::size_t(lo)] <= 1) return;
        TOTCOL_CHECK(detail::rebalance_pair(c, hi, lo, no_skip), "equalize",
                     "no surplus path between extreme classes");
    }
}

// Rainbow-preserving equalization: classes end pairwise within 2 edges (so
// missing-vertex counts differ by at most 4 <= 5), and every edge of F keeps
// its color class distinct from the rest of F.
inline void equalize_with_rainbow(EdgeColoring& c, const std::vector<int>& F) {
    TOTCOL_REQUIRE(c.uncolored_ids().empty(), "total-coloring",
                   "equalize_with_rainbow needs a coloring that is total on E");
    std::vector<char> protect(std::size_t(c.graph().edge_capacity()), 0);
    {
        std::vector<char> used(std::size_t(c.k()) + 1, 0);
        for (int id : F) {
            int col = c.color(id);
            TOTCOL_REQUIRE(col && !used[std::size_t(col)], "F-rainbow",
                           "input coloring must have F rainbow");
            used[std::size_t(col)] = 1;
            protect[std::size_t(id)] = 1;
        }
    }
    for (;;) {
        auto sz = c.class_sizes();
        // Repeatedly fix the worst pair whose gap is at least 3 and which
        // admits an F-free surplus path; at gap >= 3 one always exists since
        // at most two components contain an F edge.
        bool improved = false;
        auto [hi, lo] = detail::extreme_classes(sz);
        if (sz[std::size_t(hi)] - sz[std::size_t(lo)] <= 2) return;
        for (int a = 1; a <= c.k() && !improved; ++a)
            for (int b = 1; b <= c.k() && !improved; ++b) {
                if (sz[std::size_t(a)] - sz[std::size_t(b)] < 3) continue;
                if (detail::rebalance_pair(c, a, b, protect)) improved = true;
            }
        TOTCOL_CHECK(improved, "equalize-rainbow",
                     "no F-free surplus path though classes differ by >= 3");
    }
}

} // namespace totcol
