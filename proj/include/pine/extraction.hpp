#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "pine/constants.hpp"
#include "pine/graph.hpp"
#include "pine/invariants.hpp"
#include "pine/subdivision.hpp"

namespace pine {

// ---- shortest-path stars -------------------------------------------------------

struct Star {
    int center = -1;
    std::vector<int> targets;             // chosen targets, one per spoke
    std::vector<std::vector<int>> spokes; // paths center..target
};

inline Verification verify_star(const Graph& g, const Star& st) {
    Verification out;
    if (st.targets.size() != st.spokes.size()) {
        out.fail("shape: target/spoke count mismatch");
        return out;
    }
    int common_len = -1;
    for (size_t i = 0; i < st.spokes.size(); ++i) {
        const auto& q = st.spokes[i];
        if (q.empty() || q.front() != st.center || q.back() != st.targets[i]) {
            out.fail("spoke " + std::to_string(i) + ": endpoints wrong");
            continue;
        }
        for (size_t t = 0; t + 1 < q.size(); ++t)
            if (!g.adjacent(q[t], q[t + 1])) out.fail("spoke " + std::to_string(i) + ": not a walk");
        auto dist = distance(g, st.center, st.targets[i]);
        if (!dist || static_cast<int>(q.size()) - 1 != *dist)
            out.fail("spoke " + std::to_string(i) + ": not a shortest path");
        if (common_len == -1) common_len = static_cast<int>(q.size()) - 1;
        else if (common_len != static_cast<int>(q.size()) - 1)
            out.fail("spoke " + std::to_string(i) + ": lengths differ");
    }
    if (!out.ok) return out;
    for (size_t i = 0; i < st.spokes.size(); ++i)
        for (size_t j = i + 1; j < st.spokes.size(); ++j)
            for (int a : st.spokes[i]) {
                if (a == st.center) continue;
                for (int b : st.spokes[j]) {
                    if (b == st.center) continue;
                    if (a == b) out.fail("spokes share a vertex besides the center");
                    else if (g.adjacent(a, b)) out.fail("edge between spokes away from the center");
                }
            }
    return out;
}

struct StarResult {
    std::optional<Star> star;
    std::string failure;
};

namespace detail {

// one level of the star construction: same-length spokes rooted at v
inline std::optional<Star> star_direct(const Graph& g, int v, const std::vector<int>& targets, int d, int s,
                                       Budget& budget) {
    const int k = static_cast<int>(targets.size());
    if (s == 0) return Star{v, {}, {}};
    if (d == 0) {
        if (s == 1)
            for (int x : targets)
                if (x == v) return Star{v, {v}, {{v}}};
        return std::nullopt;
    }
    std::vector<std::vector<int>> dist_from_target(k);
    std::vector<std::vector<int>> paths(k);
    for (int i = 0; i < k; ++i) {
        dist_from_target[i] = bfs_distances(g, targets[i]);
        paths[i] = lex_shortest_path(g, VertexSet::full(g.vertex_count()), v, targets[i]);
    }
    // conflict: some vertex of P_i lies within distance < d of x_j
    std::vector<VertexSet> conflict(k, VertexSet(k));
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) {
            if (i == j) continue;
            for (int w : paths[i])
                if (dist_from_target[j][w] >= 0 && dist_from_target[j][w] < d) {
                    conflict[i].set(j);
                    conflict[j].set(i);
                    break;
                }
        }
    std::vector<int> picked;
    VertexSet blocked(k);
    for (int i = 0; i < k; ++i) {
        if (blocked.test(i)) continue;
        picked.push_back(i);
        blocked |= conflict[i];
    }
    if (static_cast<int>(picked.size()) < s) return std::nullopt;
    if (picked.size() >= 2) {
        for (size_t a = 0; a < picked.size(); ++a)
            if (static_cast<int>(paths[picked[a]].size()) - 1 != d)
                throw std::logic_error("star_direct: spoke lengths must all equal d");
    }
    if (s == 1) {
        int i = picked.front();
        return Star{v, {targets[i]}, {paths[i]}};
    }
    // neighbours of v along the picked spokes must be pairwise nonadjacent
    std::vector<int> second;
    for (int i : picked) second.push_back(paths[i][1]);
    Graph h(static_cast<int>(second.size()));
    for (int a = 0; a < h.vertex_count(); ++a)
        for (int b = a + 1; b < h.vertex_count(); ++b)
            if (g.adjacent(second[a], second[b])) h.add_edge(a, b);
    auto stable = find_stable_of_size(h, s, budget);
    if (!stable) return std::nullopt;
    Star st;
    st.center = v;
    stable->for_each([&](int idx) {
        st.targets.push_back(targets[picked[idx]]);
        st.spokes.push_back(paths[picked[idx]]);
    });
    auto check = verify_star(g, st);
    if (!check.ok) throw std::logic_error("star_direct: construction failed verification: " + check.violations.front());
    return st;
}

inline std::optional<Star> star_attempt(const Graph& g, int v, const std::vector<int>& targets, int d, int s,
                                        Budget& budget) {
    budget.tick("star search");
    if (auto st = star_direct(g, v, targets, d, s, budget)) return st;
    if (d <= 1) return std::nullopt;
    // descend: recentre where targets come within distance d-1, best candidates first
    std::vector<std::pair<int, int>> cands;  // (-count, w)
    for (int w = 0; w < g.vertex_count(); ++w) {
        auto dist = bfs_distances(g, w);
        int cnt = 0;
        for (int x : targets)
            if (dist[x] >= 0 && dist[x] <= d - 1) ++cnt;
        if (cnt >= s) cands.emplace_back(-cnt, w);
    }
    std::sort(cands.begin(), cands.end());
    for (auto [negcnt, w] : cands) {
        auto dist = bfs_distances(g, w);
        std::vector<int> close;
        for (int x : targets)
            if (dist[x] >= 0 && dist[x] <= d - 1) close.push_back(x);
        if (auto st = star_attempt(g, w, close, d - 1, s, budget)) return st;
    }
    return std::nullopt;
}

}  // namespace detail

// Same-length pairwise-independent spokes from a common centre to s of the targets.
inline StarResult getstar(const Graph& g, int v, const std::vector<int>& targets, int d, int s, int kappa,
                          Budget& budget) {
    g.check(v);
    {
        std::vector<int> sorted(targets);
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            throw precondition_error("getstar: targets must be distinct");
    }
    auto dist = bfs_distances(g, v);
    for (int x : targets) {
        g.check(x);
        if (dist[x] < 0 || dist[x] > d) throw precondition_error("getstar: target out of distance range");
    }
    if (clique_number(g, budget).value > kappa) throw precondition_error("getstar: clique number exceeds kappa");

    StarResult res;
    if (auto st = detail::star_attempt(g, v, targets, d, s, budget)) {
        res.star = std::move(st);
        return res;
    }
    if (bigint(targets.size()) >= getstar_k(kappa, d, s))
        throw std::logic_error("getstar: failed although the target count meets the bound");
    res.failure = "insufficient targets";
    return res;
}

// ---- the once-subdivided-complete router ------------------------------------------

struct RouterResult {
    enum class Kind { embedding, violated, insufficient };
    Kind kind = Kind::insufficient;
    SubdivisionEmbedding emb;  // valid when kind == embedding, for spec knu1_spec(nu)
    std::string report;
};

inline RouterResult router_find_knu1(const Graph& g, const std::vector<VertexSet>& xs, const std::vector<int>& vs,
                                     int d, int nu, Budget& budget) {
    RouterResult out;
    const int k = static_cast<int>(xs.size());
    const int l = static_cast<int>(vs.size());
    // hypotheses, reported with indices
    for (int i = 0; i < k; ++i) {
        if (xs[i].empty() || !is_connected_subset(g, xs[i])) {
            out.kind = RouterResult::Kind::violated;
            out.report = "X_" + std::to_string(i) + " is empty or disconnected";
            return out;
        }
    }
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j) {
            auto dd = set_distance(g, xs[i], xs[j]);
            if (dd && *dd < 3) {
                out.kind = RouterResult::Kind::violated;
                out.report = "X_" + std::to_string(i) + ", X_" + std::to_string(j) + " are at distance < 3";
                return out;
            }
        }
    for (int i = 0; i < l; ++i)
        for (int j = i + 1; j < l; ++j) {
            auto dd = distance(g, vs[i], vs[j]);
            if (dd && *dd < 2 * d + 2) {
                out.kind = RouterResult::Kind::violated;
                out.report = "v_" + std::to_string(i) + ", v_" + std::to_string(j) + " are at distance < 2d+2";
                return out;
            }
        }
    std::vector<std::vector<int>> dmat(k, std::vector<int>(l));
    for (int i = 0; i < k; ++i) {
        auto dist = bfs_distances(g, xs[i]);
        for (int j = 0; j < l; ++j) {
            if (dist[vs[j]] < 0 || dist[vs[j]] > d) {
                out.kind = RouterResult::Kind::violated;
                out.report = "X_" + std::to_string(i) + ", v_" + std::to_string(j) + " are at distance > d";
                return out;
            }
            dmat[i][j] = dist[vs[j]];
        }
    }

    const int s = nu * (nu - 1) / 2;
    const bigint kappa = clique_number(g, budget).value;
    auto bounds = router_bounds(nu, d, static_cast<int>(kappa));
    const bool at_bounds = bigint(k) >= bounds.k && bigint(l) >= bounds.l;
    auto give_up = [&](const std::string& why) {
        if (at_bounds) throw std::logic_error("router: " + why + " although k, l meet the proof bounds");
        out.kind = RouterResult::Kind::insufficient;
        out.report = "hypotheses unmet: insufficient k/l (" + why + ")";
        return out;
    };

    // bucket the v_j by their distance vectors
    std::map<std::vector<int>, std::vector<int>> by_vector;
    for (int j = 0; j < l; ++j) {
        std::vector<int> key(k);
        for (int i = 0; i < k; ++i) key[i] = dmat[i][j];
        by_vector[key].push_back(j);
    }
    std::vector<int> j1;
    for (const auto& [key, js] : by_vector)
        if (js.size() > j1.size()) j1 = js;
    // bucket X_i by the now-common distance value
    std::map<int, std::vector<int>> by_value;
    for (int i = 0; i < k; ++i) by_value[dmat[i][j1.front()]].push_back(i);
    std::vector<int> i1;
    for (const auto& [val, is] : by_value)
        if (is.size() > i1.size()) i1 = is;
    const int D = dmat[i1.front()][j1.front()];
    if (D < 1) return give_up("common distance is zero");

    // shortest connector P_ij, its X_i end first
    std::map<std::pair<int, int>, std::vector<int>> pij;
    for (int i : i1)
        for (int j : j1) {
            auto p = lex_shortest_path(g, VertexSet::full(g.vertex_count()), xs[i], vs[j]);
            if (static_cast<int>(p.size()) - 1 != D) return give_up("connector length drifted");
            pij[{i, j}] = p;
        }
    // no connector may meet or touch a foreign X
    for (int i : i1)
        for (int j : j1)
            for (int i2 : i1) {
                if (i2 == i) continue;
                for (int w : pij[{i, j}])
                    if (xs[i2].test(w) || g.has_neighbour_in(w, xs[i2]))
                        throw std::logic_error("router: connector touches a foreign X despite the distance hypotheses");
            }

    // per v_j, a star inside the union of its connectors
    std::map<int, std::vector<int>> stars_I;         // j -> sorted target indices I_j
    std::map<int, int> stars_center;                 // j -> u_j
    std::map<std::pair<int, int>, std::vector<int>> spokes;  // (i, j) -> host path u_j..x_ij
    for (int j : j1) {
        VertexSet region(g.vertex_count());
        for (int i : i1)
            for (int w : pij[{i, j}]) region.set(w);
        auto sub = induced_subgraph(g, region);
        std::vector<int> targets;
        for (int i : i1) targets.push_back(sub.local_id(pij[{i, j}].front()));
        StarResult st = getstar(sub.graph, sub.local_id(vs[j]), targets, D, s, static_cast<int>(kappa), budget);
        if (!st.star) return give_up("no star at v_" + std::to_string(j));
        std::vector<int> ij;
        stars_center[j] = sub.host_id(st.star->center);
        for (size_t t = 0; t < st.star->targets.size(); ++t) {
            int local_target = st.star->targets[t];
            int host_target = sub.host_id(local_target);
            int which = -1;
            for (int i : i1)
                if (pij[{i, j}].front() == host_target) which = i;
            ij.push_back(which);
            std::vector<int> spoke;
            for (int w : st.star->spokes[t]) spoke.push_back(sub.host_id(w));
            spokes[{which, j}] = spoke;
        }
        std::sort(ij.begin(), ij.end());
        stars_I[j] = ij;
    }

    // nu stars sharing one target set
    std::map<std::vector<int>, std::vector<int>> by_I;
    for (int j : j1) by_I[stars_I[j]].push_back(j);
    std::vector<int> chosen_js;
    std::vector<int> common_I;
    for (const auto& [key, js] : by_I)
        if (static_cast<int>(js.size()) >= nu && chosen_js.empty()) {
            chosen_js.assign(js.begin(), js.begin() + nu);
            common_I = key;
        }
    if (chosen_js.empty()) return give_up("no nu stars share a target set");

    // pair up: path between star centres through the shared X
    SubdivisionEmbedding emb;
    for (int j : chosen_js) emb.branch.push_back(stars_center[j]);
    auto spec = knu1_spec(nu);
    emb.paths.resize(spec.host.edges.size());
    int pair_idx = 0;
    for (int a = 0; a < nu; ++a)
        for (int b = a + 1; b < nu; ++b) {
            int i = common_I[pair_idx++];
            int ja = chosen_js[a], jb = chosen_js[b];
            VertexSet region = xs[i];
            for (int w : spokes[{i, ja}]) region.set(w);
            for (int w : spokes[{i, jb}]) region.set(w);
            auto path = lex_shortest_path(g, region, stars_center[ja], stars_center[jb]);
            if (path.empty()) return give_up("pair path missing");
            // edge order in knu1_spec is exactly (a,b) lexicographic
            emb.paths[pair_idx - 1] = path;
        }
    auto check = verify_subdivision_embedding(g, spec, emb);
    if (!check.ok) return give_up("assembled embedding failed verification: " + check.violations.front());
    out.kind = RouterResult::Kind::embedding;
    out.emb = emb;
    return out;
}

// ---- distant high-chromatic splitters -----------------------------------------------

struct DistantOutcome {
    enum class Kind { split, knu1, fat_ball, too_small };
    Kind kind = Kind::too_small;
    std::vector<VertexSet> parts;  // 2 for a split, k for a family
    SubdivisionEmbedding emb;      // kind == knu1
    int witness = -1;              // kind == fat_ball: centre vertex
    int witness_radius = 0;
    bigint c_prime;                // kind == too_small: claim chi(Z) <= c_prime
    std::string detail;
};

inline DistantOutcome distant_split(const Graph& g, const VertexSet& Z, int nu, int d, int c, int tau,
                                    Budget& budget) {
    if (d < 0 || c < 0 || tau < 0 || nu < 1) throw std::invalid_argument("distant_split: bad parameters");
    DistantOutcome out;
    const int n = g.vertex_count();
    const int kappa = clique_number(g, budget).value;
    auto bounds = router_bounds(nu, d + 3, kappa);
    out.c_prime = distant_c_prime(c, tau, bounds.l, bounds.k);

    VertexSet A = Z;
    std::vector<VertexSet> family;  // X_1..X_k' of the maximal-family search
    std::vector<int> family_d;

    while (true) {
        budget.tick("distant split");
        if (A.empty()) {
            out.kind = DistantOutcome::Kind::too_small;
            out.detail = "working set exhausted";
            return out;
        }
        // component with maximum chromatic number, ties to the least minimum id
        auto comps = components_within(g, A);
        int best = -1, best_chi = -1;
        for (size_t ci = 0; ci < comps.size(); ++ci) {
            int x = chi_of_set(g, comps[ci], budget);
            if (x > best_chi) {
                best_chi = x;
                best = static_cast<int>(ci);
            }
        }
        const VertexSet& A1 = comps[best];
        if (best_chi <= c) {
            out.kind = DistantOutcome::Kind::too_small;
            out.detail = "chromatic number of every component is at most c";
            return out;
        }
        int z0 = A1.first();

        // the layer-0 ball probe: a fat ball ends the run with a locality witness
        VertexSet m0 = ball(g, VertexSet::of(n, {z0}), d + 3) & A1;
        if (chi_of_set(g, m0, budget) > tau) {
            out.kind = DistantOutcome::Kind::fat_ball;
            out.witness = z0;
            out.witness_radius = 2 * d + 7;
            return out;
        }

        // BFS layers of G[A1] and their prefixes
        auto ldist = bfs_distances_within(g, A1, VertexSet::of(n, {z0}));
        int maxlayer = 0;
        A1.for_each([&](int v) { maxlayer = std::max(maxlayer, ldist[v]); });
        auto prefix = [&](int i) {
            VertexSet m(n);
            A1.for_each([&](int v) {
                if (ldist[v] <= i) m.set(v);
            });
            return m;
        };

        // split sweep: first layer whose core and far tail both stay chromatic
        for (int i = 1; i <= maxlayer; ++i) {
            VertexSet mi = prefix(i), mprev = prefix(i - 1);
            VertexSet z1 = ball(g, mi, 2) & A1;
            VertexSet z2 = A1 - (ball(g, mprev, d + 3) & A1);
            if (z2.empty()) break;  // tails only shrink as i grows
            if (chi_of_set(g, z1, budget) > c && chi_of_set(g, z2, budget) > c) {
                auto gap = set_distance(g, z1, z2);
                if (gap && *gap <= d) throw std::logic_error("distant_split: layered split too close");
                out.kind = DistantOutcome::Kind::split;
                out.parts = {z1, z2};
                return out;
            }
        }

        // no split: hand the maximal-family search its next member and descend
        int istar = -1;
        for (int i = 0; i <= maxlayer && istar < 0; ++i)
            if (chi_of_set(g, ball(g, prefix(i), 2) & A1, budget) > c) istar = i;
        if (istar < 0) istar = maxlayer;
        VertexSet mi = prefix(istar);
        VertexSet core = ball(g, mi, 2) & A1;
        auto core_dist = bfs_distances(g, mi);
        int best_j = -1, best_bucket_chi = 0;
        VertexSet best_bucket(n);
        for (int j = 3; j <= d + 3; ++j) {
            VertexSet bucket(n);
            A1.for_each([&](int v) {
                if (core_dist[v] == j) bucket.set(v);
            });
            int x = bucket.empty() ? 0 : chi_of_set(g, bucket, budget);
            if (x > best_bucket_chi) {
                best_bucket_chi = x;
                best_j = j;
                best_bucket = bucket;
            }
        }
        if (best_j < 0 || best_bucket_chi <= c) {
            out.kind = DistantOutcome::Kind::too_small;
            out.detail = "no distance bucket keeps chromatic number above c";
            return out;
        }
        family.push_back(mi);
        family_d.push_back(best_j);
        A = best_bucket;

        if (bigint(family.size()) >= bounds.k) {
            // unreachable at desk scale; completes the trichotomy at the proof bounds
            std::vector<int> vs;
            VertexSet rest = A;
            while (bigint(vs.size()) < bounds.l && !rest.empty()) {
                int v = rest.first();
                VertexSet bl = ball(g, VertexSet::of(n, {v}), 2 * d + 7);
                if (chi_of_set(g, bl & A, budget) > tau) {
                    out.kind = DistantOutcome::Kind::fat_ball;
                    out.witness = v;
                    out.witness_radius = 2 * d + 7;
                    return out;
                }
                vs.push_back(v);
                rest.subtract(bl);
            }
            auto routed = router_find_knu1(g, family, vs, d + 3, nu, budget);
            if (routed.kind != RouterResult::Kind::embedding)
                throw std::logic_error("distant_split: router must succeed at the proof bounds");
            out.kind = DistantOutcome::Kind::knu1;
            out.emb = routed.emb;
            return out;
        }
    }
}

// Repeated splitting: k pairwise-distant chromatic subsets.
inline DistantOutcome moredistant_split(const Graph& g, const VertexSet& Z, int nu, int k, int d, int c, int tau,
                                        Budget& budget) {
    if (k < 1) throw std::invalid_argument("moredistant_split: k must be >= 1");
    DistantOutcome out;
    if (k == 1) {
        if (chi_of_set(g, Z, budget) > c) {
            out.kind = DistantOutcome::Kind::split;
            out.parts = {Z};
        } else {
            out.kind = DistantOutcome::Kind::too_small;
            out.c_prime = c;
            out.detail = "chi(Z) <= c";
        }
        return out;
    }
    auto first = distant_split(g, Z, nu, d, c, tau, budget);
    if (first.kind != DistantOutcome::Kind::split) return first;
    auto rest = moredistant_split(g, first.parts[1], nu, k - 1, d, c, tau, budget);
    if (rest.kind != DistantOutcome::Kind::split) {
        if (rest.kind == DistantOutcome::Kind::too_small) {
            rest.c_prime = first.c_prime;
            rest.detail = "recursive split ran dry: " + rest.detail;
        }
        return rest;
    }
    out.kind = DistantOutcome::Kind::split;
    out.parts = {first.parts[0]};
    for (auto& p : rest.parts) out.parts.push_back(p);
    out.c_prime = first.c_prime;
    return out;
}

}  // namespace pine
