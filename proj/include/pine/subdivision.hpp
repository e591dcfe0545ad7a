#pragma once

#include <algorithm>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "pine/errors.hpp"
#include "pine/graph.hpp"

namespace pine {

// ---- specs ------------------------------------------------------------------

// Host multigraph plus the minimum path length replacing each edge.
struct SubdivisionSpec {
    Multigraph host;
    std::vector<int> min_length;  // one per host edge, >= 1

    void validate() const {
        if (min_length.size() != host.edges.size())
            throw std::invalid_argument("SubdivisionSpec: one min_length per edge required");
        for (size_t i = 0; i < host.edges.size(); ++i) {
            if (min_length[i] < 1) throw std::invalid_argument("SubdivisionSpec: min_length must be >= 1");
            auto [u, v] = host.edges[i];
            if (host.multiplicity(u, v) >= 2 && min_length[i] < 2)
                throw std::invalid_argument("SubdivisionSpec: parallel edges need min_length >= 2");
        }
    }
};

// Subdivisions of K_nu with every path of length >= 2, i.e. of K_nu with each
// edge subdivided at least once.
inline SubdivisionSpec knu1_spec(int nu) {
    if (nu < 1) throw std::invalid_argument("knu1_spec: nu must be >= 1");
    std::vector<std::pair<int, int>> edges;
    for (int u = 0; u < nu; ++u)
        for (int v = u + 1; v < nu; ++v) edges.emplace_back(u, v);
    SubdivisionSpec s{Multigraph(nu, std::move(edges)), {}};
    s.min_length.assign(s.host.edges.size(), 2);
    return s;
}

// Concrete subdivision: branch vertices keep their ids, subdivision vertices appended
// in edge order.
inline Graph subdivide(const SubdivisionSpec& spec, const std::vector<int>& lengths) {
    spec.validate();
    if (lengths.size() != spec.host.edges.size())
        throw std::invalid_argument("subdivide: one length per edge required");
    int extra = 0;
    for (size_t i = 0; i < lengths.size(); ++i) {
        if (lengths[i] < spec.min_length[i]) throw std::invalid_argument("subdivide: length below spec minimum");
        auto [u, v] = spec.host.edges[i];
        if (lengths[i] < 2 && spec.host.multiplicity(u, v) >= 2)
            throw std::invalid_argument("subdivide: a parallel edge needs length >= 2");
        extra += lengths[i] - 1;
    }
    Graph g(spec.host.n + extra);
    int next = spec.host.n;
    for (size_t i = 0; i < spec.host.edges.size(); ++i) {
        auto [u, v] = spec.host.edges[i];
        int prev = u;
        for (int t = 1; t < lengths[i]; ++t) {
            g.add_edge(prev, next);
            prev = next++;
        }
        g.add_edge(prev, v);
    }
    return g;
}

// K_nu with every edge subdivided exactly once.
inline Graph build_k_nu_1(int nu) {
    auto spec = knu1_spec(nu);
    return subdivide(spec, std::vector<int>(spec.host.edges.size(), 2));
}

// ---- certificates -------------------------------------------------------------

struct SubdivisionEmbedding {
    std::vector<int> branch;             // image of each host vertex
    std::vector<std::vector<int>> paths; // per host edge, endpoints included, aligned with edge order
};

struct Verification {
    bool ok = true;
    std::vector<std::string> violations;

    void fail(const std::string& tag) {
        ok = false;
        violations.push_back(tag);
    }
};

inline Verification verify_subdivision_embedding(const Graph& g, const SubdivisionSpec& spec,
                                                 const SubdivisionEmbedding& emb) {
    Verification out;
    const int hn = spec.host.n;
    if (static_cast<int>(emb.branch.size()) != hn) {
        out.fail("branch: wrong arity");
        return out;
    }
    for (int b : emb.branch)
        if (b < 0 || b >= g.vertex_count()) {
            out.fail("branch: invalid vertex id");
            return out;
        }
    for (int i = 0; i < hn; ++i)
        for (int j = i + 1; j < hn; ++j)
            if (emb.branch[i] == emb.branch[j]) out.fail("branch: not injective");

    if (emb.paths.size() != spec.host.edges.size()) {
        out.fail("paths: wrong count");
        return out;
    }

    VertexSet interiors(g.vertex_count());
    VertexSet branchset(g.vertex_count());
    for (int b : emb.branch) branchset.set(b);

    for (size_t i = 0; i < emb.paths.size(); ++i) {
        const auto& p = emb.paths[i];
        auto [u, v] = spec.host.edges[i];
        if (p.size() < 2 || p.front() != emb.branch[u] || p.back() != emb.branch[v]) {
            out.fail("path " + std::to_string(i) + ": endpoints do not match edge");
            continue;
        }
        if (static_cast<int>(p.size()) - 1 < spec.min_length[i])
            out.fail("path " + std::to_string(i) + ": length below spec minimum");
        bool walk_ok = true;
        for (size_t t = 0; t + 1 < p.size(); ++t)
            if (p[t] < 0 || p[t] >= g.vertex_count() || !g.adjacent(p[t], p[t + 1])) walk_ok = false;
        if (!walk_ok) {
            out.fail("path " + std::to_string(i) + ": not a walk in the host graph");
            continue;
        }
        std::vector<int> sorted(p);
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            out.fail("path " + std::to_string(i) + ": repeated vertex");
        for (size_t t = 1; t + 1 < p.size(); ++t) {
            if (branchset.test(p[t])) out.fail("path " + std::to_string(i) + ": interior hits a branch vertex");
            if (interiors.test(p[t])) out.fail("disjointness: interiors of two paths meet");
        }
        for (size_t t = 1; t + 1 < p.size(); ++t) interiors.set(p[t]);
    }
    if (!out.ok) return out;

    // union must induce exactly the subdivision: every host-graph edge inside it
    // is a path edge or a forced branch adjacency of a length-1 path
    VertexSet vset = interiors | branchset;
    std::vector<std::vector<int>> adj_expected(g.vertex_count());
    for (const auto& p : emb.paths)
        for (size_t t = 0; t + 1 < p.size(); ++t) {
            adj_expected[p[t]].push_back(p[t + 1]);
            adj_expected[p[t + 1]].push_back(p[t]);
        }
    bool induced = true;
    vset.for_each([&](int a) {
        VertexSet nb = g.neighbours(a) & vset;
        nb.for_each([&](int b) {
            if (a < b) {
                bool expected = std::find(adj_expected[a].begin(), adj_expected[a].end(), b) != adj_expected[a].end();
                if (!expected) induced = false;
            }
        });
    });
    if (!induced) out.fail("inducedness: union carries an edge outside the subdivision");
    return out;
}

// ---- induced subdivision search -------------------------------------------------

enum class SearchStatus { found, none, exhausted };

template <typename T>
struct SearchResult {
    SearchStatus status = SearchStatus::none;
    std::optional<T> value;
};

namespace detail {

struct SubdivSearch {
    const Graph& g;
    const SubdivisionSpec& spec;
    Budget& budget;
    std::vector<int> branch;           // host vertex -> g vertex
    VertexSet used;                    // all vertices claimed so far
    VertexSet interior_closed;         // interiors of completed paths
    std::vector<std::vector<int>> paths;
    std::vector<int> host_order;       // branch assignment order, degree-descending
    std::vector<int> cand_order;       // g vertices, degree-descending then id

    SubdivSearch(const Graph& g_, const SubdivisionSpec& s, Budget& b)
        : g(g_), spec(s), budget(b), branch(s.host.n, -1), used(g_.vertex_count()),
          interior_closed(g_.vertex_count()), paths(s.host.edges.size()) {
        host_order.resize(spec.host.n);
        std::iota(host_order.begin(), host_order.end(), 0);
        std::vector<int> hdeg(spec.host.n, 0);
        for (auto [u, v] : spec.host.edges) {
            ++hdeg[u];
            ++hdeg[v];
        }
        std::stable_sort(host_order.begin(), host_order.end(),
                         [&](int a, int b) { return hdeg[a] > hdeg[b]; });
        cand_order.resize(g.vertex_count());
        std::iota(cand_order.begin(), cand_order.end(), 0);
        std::stable_sort(cand_order.begin(), cand_order.end(),
                         [&](int a, int b) { return g.degree(a) > g.degree(b); });
    }

    // may g-vertices a, b be the images of host vertices hu, hv?
    bool branch_pair_ok(int hu, int a, int hv, int b) const {
        if (!g.adjacent(a, b)) return true;
        // adjacent images demand a unique length-1 copy of the host edge
        if (spec.host.multiplicity(hu, hv) != 1) return false;
        for (size_t i = 0; i < spec.host.edges.size(); ++i) {
            auto [x, y] = spec.host.edges[i];
            if ((x == hu && y == hv) || (x == hv && y == hu)) return spec.min_length[i] == 1;
        }
        return false;
    }

    bool assign_branches(size_t idx) {
        if (idx == host_order.size()) return route_edges(0);
        budget.tick("subdivision search");
        int hu = host_order[idx];
        for (int a : cand_order) {
            if (used.test(a)) continue;
            bool ok = true;
            for (size_t j = 0; j < idx && ok; ++j)
                if (!branch_pair_ok(hu, a, host_order[j], branch[host_order[j]])) ok = false;
            if (!ok) continue;
            branch[hu] = a;
            used.set(a);
            if (assign_branches(idx + 1)) return true;
            used.reset(a);
            branch[hu] = -1;
        }
        return false;
    }

    bool route_edges(size_t ei) {
        if (ei == spec.host.edges.size()) return true;
        auto [hu, hv] = spec.host.edges[ei];
        int a = branch[hu], b = branch[hv];
        if (g.adjacent(a, b)) {
            // forced direct edge (validated by branch_pair_ok)
            paths[ei] = {a, b};
            if (route_edges(ei + 1)) return true;
            paths[ei].clear();
            return false;
        }
        std::vector<int> path{a};
        return extend(ei, path, b);
    }

    // interiors must avoid: used vertices, adjacency to branch vertices other than
    // the two ends, adjacency to closed interiors, chords into the current path
    bool interior_ok(int w, int ei, const std::vector<int>& path, int target) const {
        if (used.test(w)) return false;
        VertexSet nb = g.neighbours(w);
        if (nb.intersects(interior_closed)) return false;
        auto [hu, hv] = spec.host.edges[ei];
        for (int hx = 0; hx < spec.host.n; ++hx) {
            if (hx == hu || hx == hv) continue;
            if (branch[hx] >= 0 && nb.test(branch[hx])) return false;
        }
        for (size_t t = 0; t + 1 < path.size(); ++t)
            if (nb.test(path[t])) return false;  // only the current end may touch w
        (void)target;
        return true;
    }

    bool extend(size_t ei, std::vector<int>& path, int target) {
        budget.tick("subdivision search");
        int cur = path.back();
        int len = static_cast<int>(path.size()) - 1;
        VertexSet nb = g.neighbours(cur);
        bool can_close = nb.test(target) && len + 1 >= spec.min_length[ei] && len + 1 >= 2;
        if (can_close) {
            path.push_back(target);
            paths[ei] = path;
            for (size_t t = 1; t + 1 < path.size(); ++t) {
                used.set(path[t]);
                interior_closed.set(path[t]);
            }
            if (route_edges(ei + 1)) return true;
            for (size_t t = 1; t + 1 < path.size(); ++t) {
                used.reset(path[t]);
                interior_closed.reset(path[t]);
            }
            paths[ei].clear();
            path.pop_back();
        }
        if (len + 1 >= g.vertex_count()) return false;
        for (int w = nb.first(); w != -1; w = nb.next(w)) {
            if (w == target) continue;
            if (!interior_ok(w, ei, path, target)) continue;
            bool touches_target = g.adjacent(w, target);
            if (touches_target && len + 2 < spec.min_length[ei]) continue;  // forced close too early
            path.push_back(w);
            used.set(w);
            bool hit;
            if (touches_target) {
                // w adjacent to the far end: the path must close now or w chords it
                path.push_back(target);
                paths[ei] = path;
                interior_closed.set(w);
                for (size_t t = 1; t + 1 < path.size(); ++t) interior_closed.set(path[t]);
                hit = route_edges(ei + 1);
                for (size_t t = 1; t + 1 < path.size(); ++t) interior_closed.reset(path[t]);
                if (!hit) {
                    paths[ei].clear();
                    path.pop_back();
                }
            } else {
                hit = extend(ei, path, target);
            }
            if (hit) return true;
            used.reset(w);
            path.pop_back();
        }
        return false;
    }
};

}  // namespace detail

inline SearchResult<SubdivisionEmbedding> find_induced_subdivision(const Graph& g, const SubdivisionSpec& spec,
                                                                   Budget& budget) {
    spec.validate();
    SearchResult<SubdivisionEmbedding> res;
    if (spec.host.n > g.vertex_count()) {
        res.status = SearchStatus::none;
        return res;
    }
    detail::SubdivSearch search(g, spec, budget);
    try {
        if (search.assign_branches(0)) {
            res.status = SearchStatus::found;
            res.value = SubdivisionEmbedding{search.branch, search.paths};
        } else {
            res.status = SearchStatus::none;
        }
    } catch (const budget_exhausted_error&) {
        res.status = SearchStatus::exhausted;
    }
    return res;
}

inline SearchResult<SubdivisionEmbedding> find_induced_subdivision(const Graph& g, const SubdivisionSpec& spec) {
    Budget b;
    return find_induced_subdivision(g, spec, b);
}

// ---- immersions ------------------------------------------------------------------

// Complete-graph immersion certificate: branch[i] for vertex i of K_n; paths in
// lexicographic edge order (0,1),(0,2),...,(n-2,n-1).
struct ImmersionEmbedding {
    int n = 0;
    std::vector<int> branch;
    std::vector<std::vector<int>> paths;

    static int edge_index(int n, int i, int j) {
        if (i > j) std::swap(i, j);
        return i * (2 * n - i - 1) / 2 + (j - i - 1);
    }
};

inline Verification verify_immersion(const Graph& g, const ImmersionEmbedding& emb) {
    Verification out;
    const int n = emb.n;
    if (static_cast<int>(emb.branch.size()) != n || static_cast<int>(emb.paths.size()) != n * (n - 1) / 2) {
        out.fail("shape: wrong arity");
        return out;
    }
    for (int b : emb.branch)
        if (b < 0 || b >= g.vertex_count()) {
            out.fail("branch: invalid vertex id");
            return out;
        }
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (emb.branch[i] == emb.branch[j]) out.fail("branch: not injective");

    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) edges.emplace_back(i, j);

    // induced paths of length >= 2
    for (size_t e = 0; e < edges.size(); ++e) {
        const auto& p = emb.paths[e];
        auto [i, j] = edges[e];
        if (p.size() < 3 || p.front() != emb.branch[i] || p.back() != emb.branch[j]) {
            out.fail("path " + std::to_string(e) + ": must join its ends with length >= 2");
            continue;
        }
        bool walk = true;
        for (size_t t = 0; t + 1 < p.size(); ++t)
            if (!g.adjacent(p[t], p[t + 1])) walk = false;
        if (!walk) {
            out.fail("path " + std::to_string(e) + ": not a walk");
            continue;
        }
        for (size_t s = 0; s < p.size(); ++s)
            for (size_t t = s + 1; t < p.size(); ++t) {
                if (p[s] == p[t]) out.fail("path " + std::to_string(e) + ": repeated vertex");
                if (t > s + 1 && g.adjacent(p[s], p[t]))
                    out.fail("path " + std::to_string(e) + ": not induced");
            }
    }
    if (!out.ok) return out;

    for (size_t e = 0; e < edges.size(); ++e)
        for (size_t f = e + 1; f < edges.size(); ++f) {
            auto [i1, j1] = edges[e];
            auto [i2, j2] = edges[f];
            int common = -1;
            if (i1 == i2 || i1 == j2) common = i1;
            else if (j1 == i2 || j1 == j2) common = j1;
            const auto& pe = emb.paths[e];
            const auto& pf = emb.paths[f];
            if (common < 0) {
                for (int a : pe)
                    for (int b : pf) {
                        if (a == b) out.fail("paths " + std::to_string(e) + "," + std::to_string(f) + ": disjoint edges share a vertex");
                        else if (g.adjacent(a, b))
                            out.fail("paths " + std::to_string(e) + "," + std::to_string(f) + ": edge between disjoint-edge paths");
                    }
            } else {
                int cv = emb.branch[common];
                int cross = 0;
                bool bad_position = false;
                int ne = (pe.front() == cv) ? pe[1] : pe[pe.size() - 2];
                int nf = (pf.front() == cv) ? pf[1] : pf[pf.size() - 2];
                for (int a : pe)
                    for (int b : pf) {
                        if (a == cv || b == cv) continue;
                        if (a == b) out.fail("paths " + std::to_string(e) + "," + std::to_string(f) + ": share a vertex besides the common end");
                        else if (g.adjacent(a, b)) {
                            ++cross;
                            if (!((a == ne && b == nf) || (a == nf && b == ne))) bad_position = true;
                        }
                    }
                if (cross > 1) out.fail("paths " + std::to_string(e) + "," + std::to_string(f) + ": more than one cross edge at shared end");
                if (cross == 1 && bad_position)
                    out.fail("paths " + std::to_string(e) + "," + std::to_string(f) + ": cross edge not between the end's two neighbours");
            }
        }
    return out;
}

namespace detail {

struct ImmersionSearch {
    const Graph& g;
    int n;
    Budget& budget;
    std::vector<int> branch;
    std::vector<std::vector<int>> paths;
    std::vector<std::pair<int, int>> edges;
    VertexSet used;  // branch vertices and all completed path vertices

    ImmersionSearch(const Graph& g_, int n_, Budget& b)
        : g(g_), n(n_), budget(b), used(g_.vertex_count()) {
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) edges.emplace_back(i, j);
        paths.resize(edges.size());
    }

    bool pick_branch(int idx, int from) {
        if (idx == n) return route(0);
        budget.tick("immersion search");
        for (int v = from; v < g.vertex_count(); ++v) {
            bool ok = true;
            for (int j = 0; j < idx && ok; ++j)
                if (g.adjacent(branch[j], v)) ok = false;  // branch pairs end up nonadjacent
            if (!ok) continue;
            branch.push_back(v);
            used.set(v);
            if (pick_branch(idx + 1, v + 1)) return true;
            used.reset(v);
            branch.pop_back();
        }
        return false;
    }

    // completed-path compatibility for immersion rules
    bool path_pair_ok(size_t e, size_t f) const {
        auto [i1, j1] = edges[e];
        auto [i2, j2] = edges[f];
        int common = -1;
        if (i1 == i2 || i1 == j2) common = i1;
        else if (j1 == i2 || j1 == j2) common = j1;
        const auto& pe = paths[e];
        const auto& pf = paths[f];
        if (common < 0) {
            for (int a : pe)
                for (int b : pf)
                    if (a == b || g.adjacent(a, b)) return false;
            return true;
        }
        int cv = branch[common];
        int ne = (pe.front() == cv) ? pe[1] : pe[pe.size() - 2];
        int nf = (pf.front() == cv) ? pf[1] : pf[pf.size() - 2];
        int cross = 0;
        for (int a : pe)
            for (int b : pf) {
                if (a == cv || b == cv) continue;
                if (a == b) return false;
                if (g.adjacent(a, b)) {
                    ++cross;
                    if (!((a == ne && b == nf) || (a == nf && b == ne))) return false;
                }
            }
        return cross <= 1;
    }

    bool route(size_t ei) {
        if (ei == edges.size()) return true;
        auto [i, j] = edges[ei];
        std::vector<int> path{branch[i]};
        return extend(ei, path, branch[j]);
    }

    bool accept_and_continue(size_t ei, std::vector<int>& path) {
        paths[ei] = path;
        for (size_t f = 0; f < ei; ++f)
            if (!path_pair_ok(ei, f)) {
                paths[ei].clear();
                return false;
            }
        for (size_t t = 1; t + 1 < path.size(); ++t) used.set(path[t]);
        if (route(ei + 1)) return true;
        for (size_t t = 1; t + 1 < path.size(); ++t) used.reset(path[t]);
        paths[ei].clear();
        return false;
    }

    bool extend(size_t ei, std::vector<int>& path, int target) {
        budget.tick("immersion search");
        int cur = path.back();
        VertexSet nb = g.neighbours(cur);
        if (nb.test(target) && path.size() >= 2) {
            path.push_back(target);
            if (accept_and_continue(ei, path)) return true;
            path.pop_back();
        }
        if (static_cast<int>(path.size()) >= g.vertex_count()) return false;
        for (int w = nb.first(); w != -1; w = nb.next(w)) {
            if (w == target || used.test(w)) continue;
            bool chord = false;  // keep the path itself induced
            for (size_t t = 0; t + 1 < path.size(); ++t)
                if (g.adjacent(w, path[t])) chord = true;
            if (chord || g.adjacent(w, target)) {
                if (g.adjacent(w, target) && !chord) {
                    path.push_back(w);
                    path.push_back(target);
                    if (accept_and_continue(ei, path)) return true;
                    path.pop_back();
                    path.pop_back();
                }
                continue;
            }
            path.push_back(w);
            if (extend(ei, path, target)) return true;
            path.pop_back();
        }
        return false;
    }
};

}  // namespace detail

inline SearchResult<ImmersionEmbedding> find_immersion(const Graph& g, int n, Budget& budget) {
    if (n < 1) throw std::invalid_argument("find_immersion: n must be >= 1");
    SearchResult<ImmersionEmbedding> res;
    detail::ImmersionSearch search(g, n, budget);
    try {
        if (search.pick_branch(0, 0)) {
            res.status = SearchStatus::found;
            res.value = ImmersionEmbedding{n, search.branch, search.paths};
        } else {
            res.status = SearchStatus::none;
        }
    } catch (const budget_exhausted_error&) {
        res.status = SearchStatus::exhausted;
    }
    return res;
}

inline SearchResult<ImmersionEmbedding> find_immersion(const Graph& g, int n) {
    Budget b;
    return find_immersion(g, n, b);
}

}  // namespace pine
