#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <numeric>

#include "pine/subdivision.hpp"

using namespace pine;

namespace {

Graph cycle_graph(int n) {
    Graph g(n);
    for (int i = 0; i < n; ++i) g.add_edge(i, (i + 1) % n);
    return g;
}

Graph petersen() {
    Graph g(10);
    for (int i = 0; i < 5; ++i) {
        g.add_edge(i, (i + 1) % 5);
        g.add_edge(5 + i, 5 + (i + 2) % 5);
        g.add_edge(i, 5 + i);
    }
    return g;
}

SubdivisionSpec k3_spec(int minlen = 1) {
    SubdivisionSpec s{Multigraph(3, {{0, 1}, {1, 2}, {2, 0}}), {minlen, minlen, minlen}};
    return s;
}

SubdivisionSpec double_edge_spec(int l1, int l2) {
    return SubdivisionSpec{Multigraph(2, {{0, 1}, {0, 1}}), {l1, l2}};
}

bool isomorphic_brute(const Graph& a, const Graph& b) {
    if (a.vertex_count() != b.vertex_count() || a.edge_count() != b.edge_count()) return false;
    int n = a.vertex_count();
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    do {
        bool ok = true;
        for (int u = 0; u < n && ok; ++u)
            for (int v = u + 1; v < n && ok; ++v)
                if (a.adjacent(u, v) != b.adjacent(perm[u], perm[v])) ok = false;
        if (ok) return true;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return false;
}

// independent oracle: does g contain an induced cycle (of length >= 3)?
bool has_induced_cycle(const Graph& g) {
    // any cycle at all implies a shortest one, which is induced
    return !is_acyclic(g);
}

}  // namespace

TEST_CASE("subdivide") {
    auto k3 = subdivide(k3_spec(), {1, 1, 1});
    CHECK(k3.vertex_count() == 3);
    CHECK(k3.edge_count() == 3);

    auto c4 = subdivide(double_edge_spec(2, 2), {2, 2});
    CHECK(isomorphic_brute(c4, cycle_graph(4)));

    auto c6 = subdivide(k3_spec(), {2, 2, 2});
    CHECK(isomorphic_brute(c6, build_k_nu_1(3)));
    CHECK(isomorphic_brute(c6, cycle_graph(6)));

    CHECK_THROWS_AS(subdivide(k3_spec(2), {1, 2, 2}), std::invalid_argument);
    CHECK_THROWS_AS(subdivide(double_edge_spec(2, 2), {1, 2}), std::invalid_argument);
    CHECK_THROWS_AS(double_edge_spec(1, 2).validate(), std::invalid_argument);
}

TEST_CASE("build_k_nu_1") {
    auto k31 = build_k_nu_1(3);
    CHECK(k31.vertex_count() == 6);
    CHECK(k31.edge_count() == 6);

    auto k41 = build_k_nu_1(4);
    CHECK(k41.vertex_count() == 10);
    CHECK(k41.edge_count() == 12);

    // K_5^1 contains an induced C4 subdivision (a 4-cycle of branch/edge vertices is too
    // short; the detector must find an induced cycle split into 4 pieces)
    SubdivisionSpec c4spec{Multigraph(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}}), {1, 1, 1, 1}};
    auto res = find_induced_subdivision(build_k_nu_1(5), c4spec);
    REQUIRE(res.status == SearchStatus::found);
    CHECK(verify_subdivision_embedding(build_k_nu_1(5), c4spec, *res.value).ok);
}

TEST_CASE("find_induced_subdivision basics") {
    // C6 as a K3 subdivision: three alternate vertices act as branch vertices
    auto res = find_induced_subdivision(cycle_graph(6), k3_spec());
    REQUIRE(res.status == SearchStatus::found);
    CHECK(verify_subdivision_embedding(cycle_graph(6), k3_spec(), *res.value).ok);

    Graph tree(7);
    for (auto [u, v] : {std::pair{0, 1}, {0, 2}, {1, 3}, {1, 4}, {2, 5}, {2, 6}}) tree.add_edge(u, v);
    CHECK(find_induced_subdivision(tree, k3_spec()).status == SearchStatus::none);

    // Petersen: all induced cycles have length 5; a double edge with min lengths (2,3)
    // lands on a 5-cycle split 2 + 3
    auto pet = petersen();
    auto dres = find_induced_subdivision(pet, double_edge_spec(2, 3));
    REQUIRE(dres.status == SearchStatus::found);
    auto v = verify_subdivision_embedding(pet, double_edge_spec(2, 3), *dres.value);
    CHECK(v.ok);
    CHECK(dres.value->paths[0].size() + dres.value->paths[1].size() == 7);  // 5 cycle vertices, ends counted twice

    Budget tiny(3);
    CHECK(find_induced_subdivision(pet, double_edge_spec(2, 3), tiny).status == SearchStatus::exhausted);
}

TEST_CASE("verify_subdivision_embedding rejects mutations") {
    Graph c6 = cycle_graph(6);
    auto res = find_induced_subdivision(c6, k3_spec());
    REQUIRE(res.status == SearchStatus::found);
    auto emb = *res.value;

    SECTION("chord breaks inducedness") {
        Graph g = c6;
        g.add_edge(0, 3);
        auto v = verify_subdivision_embedding(g, k3_spec(), emb);
        CHECK_FALSE(v.ok);
        bool tagged = false;
        for (const auto& s : v.violations)
            if (s.find("inducedness") != std::string::npos) tagged = true;
        CHECK(tagged);
    }
    SECTION("length below spec") {
        auto spec = k3_spec(3);
        auto v = verify_subdivision_embedding(c6, spec, emb);
        CHECK_FALSE(v.ok);
        bool tagged = false;
        for (const auto& s : v.violations)
            if (s.find("length") != std::string::npos) tagged = true;
        CHECK(tagged);
    }
    SECTION("shared interior vertex") {
        auto emb2 = emb;
        emb2.paths[1] = emb2.paths[0];
        auto v = verify_subdivision_embedding(c6, k3_spec(), emb2);
        CHECK_FALSE(v.ok);
    }
}

TEST_CASE("oracle equivalence and monotonicity on small graphs") {
    // induced-cycle detection agrees with acyclicity on a seeded family
    for (uint64_t code = 1; code < 200; code += 7) {
        int n = 5;
        Graph g(n);
        uint64_t bits = code * 0x9e3779b97f4a7c15ULL;
        int idx = 0;
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v)
                if ((bits >> idx++) & 1) g.add_edge(u, v);
        auto res = find_induced_subdivision(g, k3_spec());
        CHECK((res.status == SearchStatus::found) == has_induced_cycle(g));
        if (res.status == SearchStatus::found) {
            CHECK(verify_subdivision_embedding(g, k3_spec(), *res.value).ok);
            // pointwise-smaller specs stay findable
            auto weaker = find_induced_subdivision(g, k3_spec(1));
            CHECK(weaker.status == SearchStatus::found);
        }
    }
}

TEST_CASE("find_immersion") {
    for (int nu : {3, 4, 5}) {
        auto g = build_k_nu_1(nu);
        auto res = find_immersion(g, nu);
        REQUIRE(res.status == SearchStatus::found);
        CHECK(verify_immersion(g, *res.value).ok);
    }

    Graph tree(5);
    for (auto [u, v] : {std::pair{0, 1}, {0, 2}, {1, 3}, {1, 4}}) tree.add_edge(u, v);
    CHECK(find_immersion(tree, 3).status == SearchStatus::none);
    // C6 = K_3 with every edge subdivided once, so a K_3 immersion exists in it;
    // C5 is too short for three length->=2 internally disjoint paths
    CHECK(find_immersion(cycle_graph(6), 3).status == SearchStatus::found);
    CHECK(find_immersion(cycle_graph(5), 3).status == SearchStatus::none);
}

TEST_CASE("verify_immersion rejects mutations") {
    auto g = build_k_nu_1(3);
    auto res = find_immersion(g, 3);
    REQUIRE(res.status == SearchStatus::found);
    auto emb = *res.value;

    SECTION("branch collision") {
        auto bad = emb;
        bad.branch[1] = bad.branch[0];
        CHECK_FALSE(verify_immersion(g, bad).ok);
    }
    SECTION("path too short") {
        auto bad = emb;
        bad.paths[0] = {bad.branch[0], bad.branch[1]};
        CHECK_FALSE(verify_immersion(g, bad).ok);
    }
    SECTION("cross edge between disjoint paths") {
        // splice an edge into the host between interiors of paths with no common end
        auto g2 = build_k_nu_1(4);
        auto r4 = find_immersion(g2, 4);
        REQUIRE(r4.status == SearchStatus::found);
        auto e4 = *r4.value;
        int a = e4.paths[ImmersionEmbedding::edge_index(4, 0, 1)][1];
        int b = e4.paths[ImmersionEmbedding::edge_index(4, 2, 3)][1];
        Graph mutated = g2;
        mutated.add_edge(a, b);
        CHECK_FALSE(verify_immersion(mutated, e4).ok);
    }
}
