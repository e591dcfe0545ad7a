#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "pine/errors.hpp"
#include "pine/graph.hpp"

namespace pine {

// ---- cliques / stable sets --------------------------------------------------

namespace detail {

// Branch and bound for a clique of size >= target; first hit wins, lowest ids preferred.
inline bool clique_search(const Graph& g, int target, VertexSet& cand, std::vector<int>& cur,
                          VertexSet& best, Budget& budget) {
    if (static_cast<int>(cur.size()) >= target) {
        best = VertexSet::of_range(g.vertex_count(), cur);
        return true;
    }
    if (static_cast<int>(cur.size()) + cand.count() < target) return false;
    budget.tick("clique search");
    for (int v = cand.first(); v != -1; v = cand.next(v)) {
        VertexSet next = cand & g.neighbours(v);
        cur.push_back(v);
        if (clique_search(g, target, next, cur, best, budget)) return true;
        cur.pop_back();
        cand.reset(v);  // v excluded from later branches at this level
    }
    return false;
}

}  // namespace detail

// Clique of exactly `size` vertices, if one exists.
inline std::optional<VertexSet> find_clique_of_size(const Graph& g, int size, Budget& budget) {
    if (size <= 0) return VertexSet(g.vertex_count());
    VertexSet cand = VertexSet::full(g.vertex_count());
    std::vector<int> cur;
    VertexSet best(g.vertex_count());
    if (detail::clique_search(g, size, cand, cur, best, budget)) return best;
    return std::nullopt;
}

inline Graph complement_graph(const Graph& g) {
    const int n = g.vertex_count();
    Graph c(n);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (!g.adjacent(u, v)) c.add_edge(u, v);
    return c;
}

inline std::optional<VertexSet> find_stable_of_size(const Graph& g, int size, Budget& budget) {
    return find_clique_of_size(complement_graph(g), size, budget);
}

struct CliqueResult {
    int value = 0;
    VertexSet witness;
};

// Exact clique number with witness.
inline CliqueResult clique_number(const Graph& g, Budget& budget) {
    CliqueResult r;
    r.witness = VertexSet(g.vertex_count());
    int k = 0;
    while (true) {
        auto c = find_clique_of_size(g, k + 1, budget);
        if (!c) break;
        ++k;
        r.witness = *c;
    }
    r.value = k;
    return r;
}

inline CliqueResult clique_number(const Graph& g) {
    Budget b;
    return clique_number(g, b);
}

// ---- exact chromatic number --------------------------------------------------

struct ChromaticResult {
    int value = 0;
    std::vector<int> colouring;  // colours 1..value per vertex
    uint64_t nodes = 0;          // expansions spent across the refuted k-1 search and the hit
    bool exhaustive_lower = true;  // the (value-1)-colouring search was refuted exhaustively
};

inline bool verify_colouring(const Graph& g, const std::vector<int>& col, int k) {
    if (static_cast<int>(col.size()) != g.vertex_count()) return false;
    for (int v = 0; v < g.vertex_count(); ++v)
        if (col[v] < 1 || col[v] > k) return false;
    for (auto [u, v] : g.edges())
        if (col[u] == col[v]) return false;
    return true;
}

namespace detail {

// DSATUR-ordered backtracking k-colourability. Deterministic: saturation desc,
// degree desc, least id. New colours introduced in increasing order only.
struct KColour {
    const Graph& g;
    int k;
    Budget& budget;
    std::vector<int> col;        // 0 = uncoloured
    std::vector<VertexSet> used; // used[v] = colours (as bit ids 0..k-1) on neighbours

    KColour(const Graph& g_, int k_, Budget& b) : g(g_), k(k_), budget(b), col(g_.vertex_count(), 0) {
        used.assign(g.vertex_count(), VertexSet(k_));
    }

    int pick() const {
        int best = -1, bsat = -1, bdeg = -1;
        for (int v = 0; v < g.vertex_count(); ++v) {
            if (col[v]) continue;
            int sat = used[v].count();
            int deg = g.degree(v);
            if (sat > bsat || (sat == bsat && (deg > bdeg || (deg == bdeg && (best == -1 || v < best))))) {
                best = v;
                bsat = sat;
                bdeg = deg;
            }
        }
        return best;
    }

    bool run(int coloured, int maxused) {
        if (coloured == g.vertex_count()) return true;
        budget.tick("k-colouring search");
        int v = pick();
        int limit = std::min(k, maxused + 1);  // colour symmetry: at most one fresh colour
        for (int c = 0; c < limit; ++c) {
            if (used[v].test(c)) continue;
            col[v] = c + 1;
            std::vector<int> touched;
            g.neighbours(v).for_each([&](int w) {
                if (!col[w] && !used[w].test(c)) {
                    used[w].set(c);
                    touched.push_back(w);
                }
            });
            if (run(coloured + 1, std::max(maxused, c + 1))) return true;
            for (int w : touched) used[w].reset(c);
            col[v] = 0;
        }
        return false;
    }
};

}  // namespace detail

inline std::optional<std::vector<int>> k_colourable(const Graph& g, int k, Budget& budget) {
    if (g.vertex_count() == 0) return std::vector<int>{};
    if (k <= 0) return std::nullopt;
    detail::KColour search(g, k, budget);
    if (search.run(0, 0)) return search.col;
    return std::nullopt;
}

// Exact chi by iterative deepening on k from the clique lower bound.
inline ChromaticResult chromatic_number(const Graph& g, Budget& budget) {
    ChromaticResult r;
    if (g.vertex_count() == 0) return r;
    int lb = clique_number(g, budget).value;
    uint64_t before = budget.used();
    for (int k = std::max(1, lb);; ++k) {
        auto col = k_colourable(g, k, budget);
        if (col) {
            r.value = k;
            r.colouring = *col;
            r.nodes = budget.used() - before;
            return r;
        }
    }
}

inline int chi(const Graph& g, Budget& budget) { return chromatic_number(g, budget).value; }

inline int chi(const Graph& g) {
    Budget b;
    return chi(g, b);
}

// chi of the subgraph induced on a vertex subset.
inline int chi_of_set(const Graph& g, const VertexSet& s, Budget& budget) {
    return chromatic_number(induced_subgraph(g, s).graph, budget).value;
}

// max over v of chi(N^rho[v]); zero for the null graph.
inline int chi_rho(const Graph& g, int rho, Budget& budget) {
    int best = 0;
    for (int v = 0; v < g.vertex_count(); ++v)
        best = std::max(best, chi_of_set(g, ball(g, v, rho), budget));
    return best;
}

inline int chi_rho(const Graph& g, int rho) {
    Budget b;
    return chi_rho(g, rho, b);
}

// ---- Ramsey splitter ---------------------------------------------------------

struct RamseySplit {
    enum class Kind { clique, stable, too_small };
    Kind kind = Kind::too_small;
    VertexSet witness;
};

// Clique of size kappa, else stable set of size s, else "too small".
// Never "too small" once |V| reaches binom(kappa+s-2, kappa-1).
inline RamseySplit ramsey_split(const Graph& g, int kappa, int s, Budget& budget) {
    RamseySplit r;
    r.witness = VertexSet(g.vertex_count());
    if (auto c = find_clique_of_size(g, kappa, budget)) {
        r.kind = RamseySplit::Kind::clique;
        r.witness = *c;
        return r;
    }
    if (auto st = find_stable_of_size(g, s, budget)) {
        r.kind = RamseySplit::Kind::stable;
        r.witness = *st;
        return r;
    }
    r.kind = RamseySplit::Kind::too_small;
    return r;
}

inline RamseySplit ramsey_split(const Graph& g, int kappa, int s) {
    Budget b;
    return ramsey_split(g, kappa, s, b);
}

}  // namespace pine
