#pragma once

#include <algorithm>
#include <optional>
#include <utility>
#include <vector>

#include "pine/bitset.hpp"
#include "pine/errors.hpp"

namespace pine {

// Finite simple undirected graph on dense ids 0..n-1.
// Adjacency rows are bitmasks; construction may add edges, afterwards treat as immutable.
class Graph {
public:
    Graph() = default;
    explicit Graph(int n) : n_(n), adj_(n, VertexSet(n)) {
        if (n < 0) throw std::invalid_argument("Graph: negative order");
    }

    static Graph from_edges(int n, const std::vector<std::pair<int, int>>& edges) {
        Graph g(n);
        for (auto [u, v] : edges) g.add_edge(u, v);
        return g;
    }

    int vertex_count() const { return n_; }
    int edge_count() const { return m_; }

    void add_edge(int u, int v) {
        check(u);
        check(v);
        if (u == v) throw std::invalid_argument("Graph: self-loop");
        if (adj_[u].test(v)) return;
        adj_[u].set(v);
        adj_[v].set(u);
        ++m_;
    }

    void remove_edge(int u, int v) {
        check(u);
        check(v);
        if (!adj_[u].test(v)) return;
        adj_[u].reset(v);
        adj_[v].reset(u);
        --m_;
    }

    bool adjacent(int u, int v) const {
        check(u);
        check(v);
        return adj_[u].test(v);
    }

    const VertexSet& neighbours(int v) const {
        check(v);
        return adj_[v];
    }

    int degree(int v) const { return neighbours(v).count(); }

    bool has_neighbour_in(int v, const VertexSet& s) const { return neighbours(v).intersects(s); }

    // Edges as sorted (u<v) pairs, lexicographic.
    std::vector<std::pair<int, int>> edges() const {
        std::vector<std::pair<int, int>> out;
        out.reserve(m_);
        for (int u = 0; u < n_; ++u)
            adj_[u].for_each([&](int v) {
                if (u < v) out.emplace_back(u, v);
            });
        return out;
    }

    void check(int v) const {
        if (v < 0 || v >= n_) throw std::out_of_range("Graph: vertex id out of range");
    }

private:
    int n_ = 0;
    int m_ = 0;
    std::vector<VertexSet> adj_;
};

// Loopless multigraph; parallel edges are repeated entries in the edge list.
struct Multigraph {
    int n = 0;
    std::vector<std::pair<int, int>> edges;

    Multigraph() = default;
    Multigraph(int n_, std::vector<std::pair<int, int>> edges_) : n(n_), edges(std::move(edges_)) {
        for (auto [u, v] : edges) {
            if (u < 0 || u >= n || v < 0 || v >= n) throw std::out_of_range("Multigraph: vertex id out of range");
            if (u == v) throw std::invalid_argument("Multigraph: loop");
        }
    }

    // Number of parallel copies of the unordered pair {u,v}.
    int multiplicity(int u, int v) const {
        int c = 0;
        for (auto [a, b] : edges)
            if ((a == u && b == v) || (a == v && b == u)) ++c;
        return c;
    }
};

// Replace each edge by the declared number of parallel copies.
inline Multigraph fatten(const Multigraph& m, const std::vector<int>& multiplicity) {
    if (multiplicity.size() != m.edges.size())
        throw std::invalid_argument("fatten: one multiplicity per edge required");
    std::vector<std::pair<int, int>> out;
    for (size_t i = 0; i < m.edges.size(); ++i) {
        if (multiplicity[i] < 1) throw std::invalid_argument("fatten: multiplicity must be >= 1");
        for (int c = 0; c < multiplicity[i]; ++c) out.push_back(m.edges[i]);
    }
    return Multigraph(m.n, std::move(out));
}

// ---- distances ------------------------------------------------------------

// BFS distances from a source set; -1 where unreachable.
inline std::vector<int> bfs_distances(const Graph& g, const VertexSet& sources) {
    const int n = g.vertex_count();
    std::vector<int> dist(n, -1);
    VertexSet frontier = sources;
    VertexSet seen = sources;
    int d = 0;
    while (!frontier.empty()) {
        frontier.for_each([&](int v) { dist[v] = d; });
        VertexSet next(n);
        frontier.for_each([&](int v) { next |= g.neighbours(v); });
        next.subtract(seen);
        seen |= next;
        frontier = next;
        ++d;
    }
    return dist;
}

inline std::vector<int> bfs_distances(const Graph& g, int source) {
    return bfs_distances(g, VertexSet::of(g.vertex_count(), {source}));
}

// BFS distances within the induced subgraph on `allowed`; -1 outside or unreachable.
inline std::vector<int> bfs_distances_within(const Graph& g, const VertexSet& allowed, const VertexSet& sources) {
    const int n = g.vertex_count();
    std::vector<int> dist(n, -1);
    VertexSet frontier = sources & allowed;
    VertexSet seen = frontier;
    int d = 0;
    while (!frontier.empty()) {
        frontier.for_each([&](int v) { dist[v] = d; });
        VertexSet next(n);
        frontier.for_each([&](int v) { next |= g.neighbours(v); });
        next &= allowed;
        next.subtract(seen);
        seen |= next;
        frontier = next;
        ++d;
    }
    return dist;
}

// Shortest-path length, or nullopt when u, v lie in different components.
inline std::optional<int> distance(const Graph& g, int u, int v) {
    g.check(u);
    g.check(v);
    if (u == v) return 0;
    auto dist = bfs_distances(g, u);
    if (dist[v] < 0) return std::nullopt;
    return dist[v];
}

// min over a x b of distance; inputs must be nonempty.
inline std::optional<int> set_distance(const Graph& g, const VertexSet& a, const VertexSet& b) {
    if (a.empty() || b.empty()) throw std::invalid_argument("set_distance: empty input set");
    if (a.intersects(b)) return 0;
    auto dist = bfs_distances(g, a);
    int best = -1;
    b.for_each([&](int v) {
        if (dist[v] >= 0 && (best < 0 || dist[v] < best)) best = dist[v];
    });
    if (best < 0) return std::nullopt;
    return best;
}

// All vertices at distance <= rho from v (includes v).
inline VertexSet ball(const Graph& g, int v, int rho) {
    g.check(v);
    auto dist = bfs_distances(g, v);
    VertexSet out(g.vertex_count());
    for (int u = 0; u < g.vertex_count(); ++u)
        if (dist[u] >= 0 && dist[u] <= rho) out.set(u);
    return out;
}

inline VertexSet ball(const Graph& g, const VertexSet& sources, int rho) {
    auto dist = bfs_distances(g, sources);
    VertexSet out(g.vertex_count());
    for (int u = 0; u < g.vertex_count(); ++u)
        if (dist[u] >= 0 && dist[u] <= rho) out.set(u);
    return out;
}

// ---- subgraphs ------------------------------------------------------------

struct InducedSubgraph {
    Graph graph;
    std::vector<int> to_host;    // local id -> host id, ascending
    std::vector<int> from_host;  // host id -> local id or -1

    int host_id(int local) const { return to_host[local]; }
    int local_id(int host) const { return from_host[host]; }
};

inline InducedSubgraph induced_subgraph(const Graph& g, const VertexSet& s) {
    InducedSubgraph out;
    out.to_host = s.to_vector();
    out.from_host.assign(g.vertex_count(), -1);
    for (int i = 0; i < static_cast<int>(out.to_host.size()); ++i) out.from_host[out.to_host[i]] = i;
    out.graph = Graph(static_cast<int>(out.to_host.size()));
    for (int i = 0; i < static_cast<int>(out.to_host.size()); ++i) {
        VertexSet nb = g.neighbours(out.to_host[i]) & s;
        nb.for_each([&](int hv) {
            int j = out.from_host[hv];
            if (i < j) out.graph.add_edge(i, j);
        });
    }
    return out;
}

// Maximal connected vertex classes; empty list for the null graph.
inline std::vector<VertexSet> components(const Graph& g) {
    const int n = g.vertex_count();
    std::vector<VertexSet> out;
    VertexSet seen(n);
    for (int v = 0; v < n; ++v) {
        if (seen.test(v)) continue;
        auto dist = bfs_distances(g, v);
        VertexSet comp(n);
        for (int u = 0; u < n; ++u)
            if (dist[u] >= 0) comp.set(u);
        seen |= comp;
        out.push_back(comp);
    }
    return out;
}

// Components of the induced subgraph on `s`, as host-id sets.
inline std::vector<VertexSet> components_within(const Graph& g, const VertexSet& s) {
    const int n = g.vertex_count();
    std::vector<VertexSet> out;
    VertexSet seen(n);
    s.for_each([&](int v) {
        if (seen.test(v)) return;
        auto dist = bfs_distances_within(g, s, VertexSet::of(n, {v}));
        VertexSet comp(n);
        for (int u = 0; u < n; ++u)
            if (dist[u] >= 0) comp.set(u);
        seen |= comp;
        out.push_back(comp);
    });
    return out;
}

inline bool is_connected_subset(const Graph& g, const VertexSet& s) {
    if (s.empty()) return false;
    auto dist = bfs_distances_within(g, s, VertexSet::of(g.vertex_count(), {s.first()}));
    bool ok = true;
    s.for_each([&](int v) {
        if (dist[v] < 0) ok = false;
    });
    return ok;
}

inline bool is_connected(const Graph& g) {
    if (g.vertex_count() == 0) return true;
    return is_connected_subset(g, VertexSet::full(g.vertex_count()));
}

inline bool is_acyclic(const Graph& g) {
    int n = g.vertex_count();
    for (const auto& comp : components(g)) {
        auto sub = induced_subgraph(g, comp);
        if (sub.graph.edge_count() != sub.graph.vertex_count() - 1) return false;
    }
    (void)n;
    return true;
}

// Lexicographically least shortest path between `from` (a set) and target `to`,
// restricted to `allowed` (which must contain the path; `to` and from-vertices included).
// Empty result when unreachable.
inline std::vector<int> lex_shortest_path(const Graph& g, const VertexSet& allowed, const VertexSet& from, int to) {
    const int n = g.vertex_count();
    auto dist = bfs_distances_within(g, allowed, VertexSet::of(n, {to}));
    int best = -1;
    from.for_each([&](int v) {
        if (dist[v] < 0) return;
        if (best == -1 || dist[v] < dist[best] || (dist[v] == dist[best] && v < best)) best = v;
    });
    if (best < 0) return {};
    std::vector<int> path{best};
    int cur = best;
    while (cur != to) {
        int step = -1;
        VertexSet nb = g.neighbours(cur) & allowed;
        nb.for_each([&](int w) {
            if (dist[w] == dist[cur] - 1 && step == -1) step = w;
        });
        path.push_back(step);
        cur = step;
    }
    return path;
}

inline std::vector<int> lex_shortest_path(const Graph& g, const VertexSet& allowed, int from, int to) {
    return lex_shortest_path(g, allowed, VertexSet::of(g.vertex_count(), {from}), to);
}

// ---- rooted trees ----------------------------------------------------------

// Rooted tree over a connected acyclic Graph. "Ancestor" includes the vertex itself.
class RootedTree {
public:
    RootedTree() = default;

    RootedTree(Graph tree, int root) : tree_(std::move(tree)), root_(root) {
        const int n = tree_.vertex_count();
        tree_.check(root);
        if (tree_.edge_count() != n - 1 || !is_connected(tree_))
            throw std::invalid_argument("RootedTree: not a tree");
        parent_.assign(n, -1);
        depth_.assign(n, 0);
        children_.assign(n, {});
        tin_.assign(n, 0);
        tout_.assign(n, 0);
        // iterative DFS, children in ascending id order
        std::vector<int> stack{root_};
        std::vector<bool> seen(n, false);
        seen[root_] = true;
        int timer = 0;
        std::vector<std::pair<int, int>> frames;  // (vertex, child index)
        frames.emplace_back(root_, -2);
        while (!frames.empty()) {
            auto& [v, state] = frames.back();
            if (state == -2) {
                tin_[v] = timer++;
                tree_.neighbours(v).for_each([&](int w) {
                    if (!seen[w]) {
                        seen[w] = true;
                        parent_[w] = v;
                        depth_[w] = depth_[v] + 1;
                        children_[v].push_back(w);
                    }
                });
                state = 0;
            }
            if (state < static_cast<int>(children_[v].size())) {
                int c = children_[v][state++];
                frames.emplace_back(c, -2);
            } else {
                tout_[v] = timer++;
                frames.pop_back();
            }
        }
    }

    const Graph& graph() const { return tree_; }
    int vertex_count() const { return tree_.vertex_count(); }
    int root() const { return root_; }
    int parent(int v) const { tree_.check(v); return parent_[v]; }
    int depth(int v) const { tree_.check(v); return depth_[v]; }
    const std::vector<int>& children(int v) const { tree_.check(v); return children_[v]; }

    // v lies on the path from u to the root (inclusive).
    bool is_ancestor(int v, int u) const {
        tree_.check(v);
        tree_.check(u);
        return tin_[v] <= tin_[u] && tout_[u] <= tout_[v];
    }
    bool is_strict_ancestor(int v, int u) const { return v != u && is_ancestor(v, u); }
    bool incomparable(int u, int v) const { return !is_ancestor(u, v) && !is_ancestor(v, u); }

    // L(T): vertices with no children; {root} when the tree is a single vertex.
    VertexSet leaves() const {
        VertexSet out(tree_.vertex_count());
        for (int v = 0; v < tree_.vertex_count(); ++v)
            if (children_[v].empty()) out.set(v);
        return out;
    }

    int height() const {
        int h = 0;
        for (int v = 0; v < tree_.vertex_count(); ++v) h = std::max(h, depth_[v]);
        return h;
    }

    // Tree path between u and v, endpoints included.
    std::vector<int> path(int u, int v) const {
        std::vector<int> up, down;
        int a = u, b = v;
        while (depth_[a] > depth_[b]) { up.push_back(a); a = parent_[a]; }
        while (depth_[b] > depth_[a]) { down.push_back(b); b = parent_[b]; }
        while (a != b) {
            up.push_back(a);
            down.push_back(b);
            a = parent_[a];
            b = parent_[b];
        }
        up.push_back(a);
        up.insert(up.end(), down.rbegin(), down.rend());
        return up;
    }

private:
    Graph tree_;
    int root_ = 0;
    std::vector<int> parent_, depth_, tin_, tout_;
    std::vector<std::vector<int>> children_;
};

}  // namespace pine
