#include <catch2/catch_amalgamated.hpp>

#include "totcol/equalize.hpp"
#include "totcol/rng.hpp"
#include "totcol/vizing.hpp"

using namespace totcol;

namespace {

// Verifies the output contract shared by both statements: total, proper,
// J0 rainbow, palette <= k.
void check_contract(const Multigraph& g, const EdgeColoring& c, const RainbowInstance& inst,
                    int k) {
    REQUIRE(c.uncolored_ids().empty());
    REQUIRE(c.check_proper().ok);
    REQUIRE(c.missing_sets_coherent());
    REQUIRE(c.k() <= std::max(k, 1));
    std::vector<char> used(std::size_t(c.k()) + 1, 0);
    for (int id : inst.J0) {
        int col = c.color(id);
        REQUIRE(col >= 1);
        REQUIRE(!used[std::size_t(col)]);
        used[std::size_t(col)] = 1;
    }
    (void)g;
}

// Random instance for statement (a): a base simple graph, a star center x
// whose edges all go to J0, a J0 matching away from x, and doubled non-x
// edges placed in J \ J0.
struct InstanceA {
    Multigraph g;
    RainbowInstance inst;
    int k0 = 0;
};

void build_instance_a(int n, double p, Rng& rng, InstanceA& out) {
    out.g = Multigraph(n);
    Multigraph& g = out.g;
    std::vector<std::vector<int>> ids(std::size_t(n), std::vector<int>(std::size_t(n), -1));
    for (int u = 1; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (rng.chance(p)) ids[std::size_t(u)][std::size_t(v)] = g.add_edge(u, v);
    // x = 0 with a random star.
    int x = 0;
    std::vector<int> star;
    for (int v = 1; v < n; ++v)
        if (rng.chance(0.35)) star.push_back(g.add_edge(x, v));
    // J0 matching among non-star-leaf vertices.
    std::vector<char> taken(std::size_t(n), 0);
    for (int id : star) taken[std::size_t(g.other_end(id, x))] = 1;
    std::vector<int> jm;
    for (int u = 1; u < n; ++u) {
        if (taken[std::size_t(u)]) continue;
        for (int v = u + 1; v < n; ++v) {
            if (taken[std::size_t(v)] || ids[std::size_t(u)][std::size_t(v)] < 0) continue;
            if (!rng.chance(0.3)) continue;
            jm.push_back(ids[std::size_t(u)][std::size_t(v)]);
            taken[std::size_t(u)] = taken[std::size_t(v)] = 1;
            break;
        }
    }
    // Doubled edges: at most one doubled partner per vertex; copies go to J.
    std::vector<int> doubles;
    std::vector<char> doubled(std::size_t(n), 0);
    for (int u = 1; u < n; ++u) {
        if (doubled[std::size_t(u)] || !rng.chance(0.25)) continue;
        for (int v = u + 1; v < n; ++v)
            if (!doubled[std::size_t(v)] && ids[std::size_t(u)][std::size_t(v)] >= 0) {
                doubles.push_back(g.add_edge(u, v));
                doubled[std::size_t(u)] = doubled[std::size_t(v)] = 1;
                break;
            }
    }
    out.inst.x = star.empty() ? -1 : x;
    out.inst.J0 = star;
    out.inst.J0.insert(out.inst.J0.end(), jm.begin(), jm.end());
    out.inst.J = out.inst.J0;
    out.inst.J.insert(out.inst.J.end(), doubles.begin(), doubles.end());
    if (!star.empty() || !jm.empty() || !doubles.empty()) {
        // nothing further
    }
    out.k0 = std::max(int(out.inst.J0.size()), g.max_degree());
}

// Pre-colors g[J] with J0 rainbow using a greedy proper assignment.
EdgeColoring precolor_J(const Multigraph& g, const RainbowInstance& inst, int k0) {
    EdgeColoring c(g, k0);
    int next = 1;
    for (int id : inst.J0) c.assign(id, next++);
    for (int id : inst.J) {
        if (c.colored(id)) continue;
        auto& e = g.edge(id);
        int col = c.first_common_missing(e.u, e.v);
        TOTCOL_CHECK(col > 0, "test-gen", "greedy J precoloring stuck");
        c.assign(id, col);
    }
    return c;
}

} // namespace

TEST_CASE("statement (a): trivial all-J instances return unchanged") {
    // g = J = J0 = a star at x with t edges.
    int t = 5;
    Multigraph g(t + 1);
    RainbowInstance inst;
    inst.x = 0;
    for (int v = 1; v <= t; ++v) inst.J0.push_back(g.add_edge(0, v));
    inst.J = inst.J0;
    int k = std::max(t, g.max_degree() + 4);
    EdgeColoring pre = precolor_J(g, inst, k);
    auto before = pre.export_colored();
    auto c = extend_rainbow_coloring_a(g, inst, pre, k);
    REQUIRE(c.export_colored() == before);
}

TEST_CASE("statement (a): K5 plus pendant star") {
    Multigraph g(7);
    RainbowInstance inst;
    inst.x = 0;
    inst.J0.push_back(g.add_edge(0, 1));
    inst.J0.push_back(g.add_edge(0, 2));
    for (int u = 1; u <= 5; ++u)
        for (int v = u + 1; v <= 5; ++v) g.add_edge(u, v);
    for (int v = 1; v <= 5; ++v) g.add_edge(v, 6);
    inst.J = inst.J0;
    int k = g.max_degree() + 4;
    EdgeColoring pre = precolor_J(g, inst, k);
    auto c = extend_rainbow_coloring_a(g, inst, pre, k);
    check_contract(g, c, inst, k);
}

TEST_CASE("statement (a): precondition violations are named") {
    Multigraph g(4);
    RainbowInstance inst;
    inst.x = 0;
    inst.J0.push_back(g.add_edge(0, 1));
    inst.J = inst.J0;
    g.add_edge(1, 2);
    g.add_edge(2, 3);
    EdgeColoring pre = precolor_J(g, inst, 4);
    SECTION("palette too small") {
        try {
            extend_rainbow_coloring_a(g, inst, pre, g.max_degree() + 3);
            FAIL("expected palette violation");
        } catch (const PreconditionError& e) {
            REQUIRE(e.name() == "palette");
        }
    }
    SECTION("star edge outside J") {
        Multigraph h(4);
        RainbowInstance bad;
        bad.x = 0;
        bad.J0.push_back(h.add_edge(0, 1));
        h.add_edge(0, 2);  // star edge not in J
        h.add_edge(1, 3);
        bad.J = bad.J0;
        EdgeColoring hpre = precolor_J(h, bad, 6);
        try {
            extend_rainbow_coloring_a(h, bad, hpre, h.max_degree() + 4);
            FAIL("expected star-in-J violation");
        } catch (const PreconditionError& e) {
            REQUIRE(e.name() == "star-in-J");
        }
    }
}

TEST_CASE("statement (a): random sweep meets the contract") {
    Rng rng(2024);
    int done = 0;
    for (int t = 0; done < 120 && t < 400; ++t) {
        InstanceA ia;
        int n = rng.range(5, 24);
        build_instance_a(n, 0.55, rng, ia);
        if (ia.g.edge_count() == 0) continue;
        int k = ia.g.max_degree() + 4;
        if (ia.k0 > k) continue;  // rainbow cannot even seed
        EdgeColoring pre = precolor_J(ia.g, ia.inst, k);
        ExtendDiag diag;
        auto c = extend_rainbow_coloring_a(ia.g, ia.inst, pre, k, &diag);
        check_contract(ia.g, c, ia.inst, k);
        ++done;
    }
    REQUIRE(done >= 120);
}

TEST_CASE("statement (b): bipartite plus apex") {
    Rng rng(77);
    int done = 0;
    for (int t = 0; done < 120 && t < 400; ++t) {
        int nx = rng.range(2, 9), ny = rng.range(2, 9);
        int n = nx + ny + 1;
        int x = n - 1;
        Multigraph g(n);
        std::vector<int> side(std::size_t(n), -1);
        for (int i = 0; i < nx; ++i) side[std::size_t(i)] = 0;
        for (int j = 0; j < ny; ++j) side[std::size_t(nx + j)] = 1;
        for (int i = 0; i < nx; ++i)
            for (int j = 0; j < ny; ++j)
                if (rng.chance(0.6)) g.add_edge(i, nx + j);
        RainbowInstance inst;
        inst.x = x;
        std::vector<int> star;
        for (int v = 0; v < n - 1 && int(star.size()) < ny; ++v)
            if (rng.chance(0.4)) star.push_back(g.add_edge(x, v));
        if (star.empty()) star.push_back(g.add_edge(x, 0));
        inst.J0 = star;
        // J0 matching part inside the bipartite graph, avoiding star leaves.
        std::vector<char> taken(std::size_t(n), 0);
        for (int id : star) taken[std::size_t(g.other_end(id, x))] = 1;
        for (int id : g.edge_ids()) {
            auto& e = g.edge(id);
            if (e.u == x || e.v == x) continue;
            if (taken[std::size_t(e.u)] || taken[std::size_t(e.v)]) continue;
            if (!rng.chance(0.2)) continue;
            inst.J0.push_back(id);
            taken[std::size_t(e.u)] = taken[std::size_t(e.v)] = 1;
        }
        inst.J = inst.J0;
        // k = max(Delta, degrees of X + 1) so every X-vertex has degree < k.
        int k = g.max_degree();
        bool ok_deg = true;
        for (int v = 0; v < n - 1; ++v)
            if (side[std::size_t(v)] == 0 && g.degree(v) >= k) ok_deg = false;
        if (!ok_deg || int(inst.J0.size()) > k) continue;
        inst.x = x;
        EdgeColoring pre = precolor_J(g, inst, k);
        auto c = extend_rainbow_coloring_b(g, inst, pre, k, side);
        check_contract(g, c, inst, k);
        ++done;
    }
    REQUIRE(done >= 120);
}

TEST_CASE("statement (b): C4 plus apex star, k = Delta") {
    // g - x = C4 with sides {0,2} and {1,3}; J0 = star at x.
    Multigraph g(5);
    int x = 4;
    g.add_edge(0, 1);
    g.add_edge(1, 2);
    g.add_edge(2, 3);
    g.add_edge(3, 0);
    RainbowInstance inst;
    inst.x = x;
    inst.J0 = {g.add_edge(x, 1), g.add_edge(x, 3)};
    inst.J = inst.J0;
    std::vector<int> side = {0, 1, 0, 1, -1};
    int k = g.max_degree();
    EdgeColoring pre = precolor_J(g, inst, k);
    auto c = extend_rainbow_coloring_b(g, inst, pre, k, side);
    check_contract(g, c, inst, k);
}

TEST_CASE("statement (b): already-total input returned unchanged") {
    Multigraph g(3);
    RainbowInstance inst;
    inst.x = 2;
    inst.J0 = {g.add_edge(2, 0), g.add_edge(2, 1)};
    inst.J = inst.J0;
    std::vector<int> side = {0, 1, -1};
    EdgeColoring pre = precolor_J(g, inst, 2);
    auto before = pre.export_colored();
    auto c = extend_rainbow_coloring_b(g, inst, pre, 2, side);
    REQUIRE(c.export_colored() == before);
}
