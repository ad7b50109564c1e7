#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <set>
#include <stdexcept>

#include "tempo_ncg/temporal_graph.hpp"
#include "testutil.hpp"

using namespace tempo_ncg;
using testutil::demo_graph;
using testutil::oracle_reachable;

namespace {

// Reference count for strict paths forced to start with the edge {v, other}:
// exhaustive over vertex-simple continuations, counting distinct vertices
// other than v.
int oracle_first_edge_count(const TemporalGraph& g, VertexId v, VertexId other) {
    std::vector<char> reached(static_cast<std::size_t>(g.vertex_count()), 0);
    std::vector<char> on_path(static_cast<std::size_t>(g.vertex_count()), 0);
    on_path[static_cast<std::size_t>(v)] = 1;
    on_path[static_cast<std::size_t>(other)] = 1;
    reached[static_cast<std::size_t>(other)] = 1;
    const Label first = *g.label_of(v, other);

    struct Walker {
        const TemporalGraph& g;
        std::vector<char>& reached;
        std::vector<char>& on_path;
        void walk(VertexId at, Label last) {
            for (const auto& [w, l] : g.neighbors(at)) {
                if (on_path[static_cast<std::size_t>(w)] || l <= last) continue;
                reached[static_cast<std::size_t>(w)] = 1;
                on_path[static_cast<std::size_t>(w)] = 1;
                walk(w, l);
                on_path[static_cast<std::size_t>(w)] = 0;
            }
        }
    } walker{g, reached, on_path};
    walker.walk(other, first);

    int count = 0;
    for (VertexId w = 0; w < g.vertex_count(); ++w)
        if (reached[static_cast<std::size_t>(w)]) ++count;
    return count;
}

}  // namespace

TEST_CASE("construction normalizes and validates") {
    TemporalGraph g(3, {{2, 0, 7}});
    REQUIRE(g.edge_count() == 1);
    REQUIRE(g.edges()[0].u == 0);
    REQUIRE(g.edges()[0].v == 2);
    REQUIRE(g.label_of(0, 2) == Label{7});
    REQUIRE(g.label_of(2, 0) == Label{7});
    REQUIRE_FALSE(g.has_edge(0, 1));

    REQUIRE_THROWS_AS(TemporalGraph(3, {{1, 1, 0}}), std::invalid_argument);
    REQUIRE_THROWS_AS(TemporalGraph(3, {{0, 3, 1}}), std::invalid_argument);
    REQUIRE_THROWS_AS(TemporalGraph(3, {{0, 1, 1}, {1, 0, 2}}), std::invalid_argument);
    REQUIRE_THROWS_AS(TemporalGraph(0), std::invalid_argument);
}

TEST_CASE("reachability on the four-vertex demo graph") {
    const TemporalGraph g = demo_graph();

    SECTION("strict reach from vertex 0 covers everything") {
        REQUIRE(reachable_set(g, 0, ReachMode::Strict) == std::vector<VertexId>{0, 1, 2, 3});
    }
    SECTION("start-time filter trims the reachable set") {
        REQUIRE(reachable_from_time(g, 0, 5, ReachMode::Strict) == std::vector<VertexId>{0, 1});
        REQUIRE(reachable_from_time(g, 0, 7, ReachMode::Strict) == std::vector<VertexId>{0});
    }
    SECTION("start time at the minimum label changes nothing") {
        for (VertexId v = 0; v < 4; ++v)
            for (ReachMode mode : {ReachMode::NonStrict, ReachMode::Strict})
                REQUIRE(reachable_from_time(g, v, 1, mode) == reachable_set(g, v, mode));
    }
    SECTION("edge sequences are validated as temporal paths") {
        REQUIRE(is_temporal_path(g, {{0, 3}, {3, 1}}, ReachMode::Strict));
        REQUIRE_FALSE(is_temporal_path(g, {{0, 2}, {2, 1}}, ReachMode::Strict));
        REQUIRE(is_temporal_path(g, {}, ReachMode::Strict));
        REQUIRE_FALSE(is_temporal_path(g, {{0, 3}, {1, 2}}, ReachMode::Strict));
    }
}

TEST_CASE("small reachability facts") {
    SECTION("single vertex reaches itself through the empty path") {
        const TemporalGraph g(1);
        REQUIRE(reachable_set(g, 0, ReachMode::Strict) == std::vector<VertexId>{0});
        REQUIRE(reachable_set(g, 0, ReachMode::NonStrict) == std::vector<VertexId>{0});
        REQUIRE(is_temporally_connected(g, ReachMode::Strict));
    }
    SECTION("descending labels block a strict path") {
        const TemporalGraph g(3, {{0, 1, 2}, {1, 2, 1}});
        REQUIRE(reachable_set(g, 0, ReachMode::Strict) == std::vector<VertexId>{0, 1});
        REQUIRE(reachable_set(g, 0, ReachMode::NonStrict) == std::vector<VertexId>{0, 1});
        const TemporalGraph h(3, {{0, 1, 2}, {1, 2, 2}});
        REQUIRE(reachable_set(h, 0, ReachMode::NonStrict) == std::vector<VertexId>{0, 1, 2});
    }
    SECTION("alternating four-cycle is strictly connected") {
        const TemporalGraph g(4, {{0, 1, 1}, {1, 2, 2}, {2, 3, 1}, {3, 0, 2}});
        REQUIRE(is_temporally_connected(g, ReachMode::Strict));
    }
    SECTION("one-label star separates the modes") {
        const TemporalGraph g(3, {{0, 1, 1}, {0, 2, 1}});
        REQUIRE(is_temporally_connected(g, ReachMode::NonStrict));
        REQUIRE_FALSE(is_temporally_connected(g, ReachMode::Strict));
    }
    SECTION("edgeless graphs are disconnected") {
        REQUIRE_FALSE(is_temporally_connected(TemporalGraph(2), ReachMode::NonStrict));
    }
    SECTION("invalid source vertex is rejected") {
        REQUIRE_THROWS_AS(reachable_set(TemporalGraph(2), 2, ReachMode::Strict),
                          std::invalid_argument);
    }
}

TEST_CASE("sweep agrees with the exhaustive oracle on every tiny graph") {
    testutil::for_each_labeled_graph(3, -1, 4, [](const TemporalGraph& g) {
        for (VertexId v = 0; v < g.vertex_count(); ++v) {
            for (ReachMode mode : {ReachMode::NonStrict, ReachMode::Strict}) {
                REQUIRE(reachable_set(g, v, mode) == oracle_reachable(g, v, mode));
            }
        }
    });
}

TEST_CASE("sweep agrees with the oracle on random graphs up to six vertices") {
    std::mt19937_64 gen(20260819);
    for (int iter = 0; iter < 200; ++iter) {
        const VertexId n = 2 + static_cast<VertexId>(gen() % 5);
        const TemporalGraph g = testutil::random_graph(gen, n, -1, 4);
        for (VertexId v = 0; v < n; ++v) {
            for (ReachMode mode : {ReachMode::NonStrict, ReachMode::Strict}) {
                REQUIRE(reachable_set(g, v, mode) == oracle_reachable(g, v, mode));
                const Label t = -1 + static_cast<Label>(gen() % 7);
                REQUIRE(reachable_from_time(g, v, t, mode) == oracle_reachable(g, v, mode, t));
            }
        }
    }
}

TEST_CASE("strict reach is contained in non-strict reach") {
    std::mt19937_64 gen(42);
    for (int iter = 0; iter < 100; ++iter) {
        const VertexId n = 2 + static_cast<VertexId>(gen() % 5);
        const TemporalGraph g = testutil::random_graph(gen, n, -1, 4);
        for (VertexId v = 0; v < n; ++v) {
            const auto strict = reachable_set(g, v, ReachMode::Strict);
            const auto loose = reachable_set(g, v, ReachMode::NonStrict);
            REQUIRE(std::includes(loose.begin(), loose.end(), strict.begin(), strict.end()));
        }
    }
}

TEST_CASE("later start times never reach more") {
    std::mt19937_64 gen(7);
    for (int iter = 0; iter < 100; ++iter) {
        const VertexId n = 2 + static_cast<VertexId>(gen() % 5);
        const TemporalGraph g = testutil::random_graph(gen, n, -1, 4);
        for (VertexId v = 0; v < n; ++v) {
            for (Label t = -1; t <= 4; ++t) {
                const auto late = reachable_from_time(g, v, t + 1, ReachMode::Strict);
                const auto early = reachable_from_time(g, v, t, ReachMode::Strict);
                REQUIRE(std::includes(early.begin(), early.end(), late.begin(), late.end()));
            }
        }
    }
}

TEST_CASE("reachability trees preserve the root's reach with a minimal edge set") {
    SECTION("demo graph tree from vertex 3") {
        const TemporalGraph g = demo_graph();
        const TemporalGraph tree = reachability_tree(g, 3, ReachMode::Strict);
        REQUIRE(tree.edge_count() == 3);
        REQUIRE(reachable_set(tree, 3, ReachMode::Strict) == std::vector<VertexId>{0, 1, 2, 3});
        for (const TemporalEdge& e : tree.edges()) REQUIRE(g.label_of(e.u, e.v) == Label{e.label});
    }
    SECTION("a star is already its own reachability tree") {
        const TemporalGraph g(4, {{0, 1, 1}, {0, 2, 1}, {0, 3, 1}});
        const TemporalGraph tree = reachability_tree(g, 0, ReachMode::NonStrict);
        REQUIRE(tree.edges() == g.edges());
    }
    SECTION("unreachable root keeps no edges") {
        const TemporalGraph g(3, {{1, 2, 1}});
        REQUIRE(reachability_tree(g, 0, ReachMode::Strict).edge_count() == 0);
    }
    SECTION("tree properties hold on random graphs") {
        std::mt19937_64 gen(99);
        for (int iter = 0; iter < 150; ++iter) {
            const VertexId n = 2 + static_cast<VertexId>(gen() % 5);
            const TemporalGraph g = testutil::random_graph(gen, n, -1, 4);
            for (ReachMode mode : {ReachMode::NonStrict, ReachMode::Strict}) {
                const VertexId v = static_cast<VertexId>(gen() % n);
                const TemporalGraph tree = reachability_tree(g, v, mode);
                const auto reach_g = reachable_set(g, v, mode);
                REQUIRE(reachable_set(tree, v, mode) == reach_g);
                REQUIRE(tree.edge_count() == reach_g.size() - 1);
                for (const TemporalEdge& e : tree.edges())
                    REQUIRE(g.label_of(e.u, e.v) == Label{e.label});
            }
        }
    }
}

TEST_CASE("lifetime is the maximum label and needs an edge") {
    REQUIRE(lifetime(demo_graph()) == 6);
    REQUIRE(lifetime(TemporalGraph(2, {{0, 1, 1}})) == 1);
    REQUIRE(lifetime(TemporalGraph(3, {{0, 1, -5}, {1, 2, -9}})) == -5);
    REQUIRE_THROWS_AS(lifetime(TemporalGraph(3)), std::domain_error);
}

TEST_CASE("proper labelings have no repeated label at a vertex") {
    REQUIRE(is_proper(TemporalGraph(3)));
    REQUIRE(is_proper(TemporalGraph(2, {{0, 1, 1}})));
    REQUIRE_FALSE(is_proper(TemporalGraph(3, {{0, 1, 1}, {1, 2, 1}, {0, 2, 1}})));
    REQUIRE(is_proper(TemporalGraph(4, {{0, 1, 1}, {1, 2, 2}, {2, 3, 1}, {3, 0, 2}})));
}

TEST_CASE("first-edge reach counts match the exhaustive definition") {
    const TemporalGraph g = demo_graph();
    REQUIRE(reach_count_via_first_edge(g, 0, 3) == oracle_first_edge_count(g, 0, 3));
    REQUIRE(reach_count_via_first_edge(g, 0, 3) == 3);
    REQUIRE(reach_count_via_first_edge(TemporalGraph(2, {{0, 1, 1}}), 0, 1) == 1);
    REQUIRE_THROWS_AS(reach_count_via_first_edge(g, 0, 0), std::invalid_argument);
    REQUIRE_THROWS_AS(reach_count_via_first_edge(TemporalGraph(3, {{0, 1, 1}}), 0, 2),
                      std::invalid_argument);

    std::mt19937_64 gen(1234);
    for (int iter = 0; iter < 100; ++iter) {
        const VertexId n = 2 + static_cast<VertexId>(gen() % 5);
        const TemporalGraph g2 = testutil::random_graph(gen, n, -1, 4);
        for (const TemporalEdge& e : g2.edges()) {
            REQUIRE(reach_count_via_first_edge(g2, e.u, e.v) == oracle_first_edge_count(g2, e.u, e.v));
            REQUIRE(reach_count_via_first_edge(g2, e.v, e.u) == oracle_first_edge_count(g2, e.v, e.u));
        }
    }
}

TEST_CASE("proper graphs obey the halving bound on first-edge reach") {
    SECTION("a maximal first label reaches exactly one vertex") {
        const TemporalGraph g(4, {{0, 1, 5}, {1, 2, 2}, {2, 3, 3}});
        REQUIRE(reach_count_via_first_edge(g, 0, 1) == 1);
    }
    SECTION("random proper graphs stay under the bound") {
        std::mt19937_64 gen(555);
        for (int iter = 0; iter < 60; ++iter) {
            const VertexId n = 3 + static_cast<VertexId>(gen() % 6);
            const TemporalGraph g = testutil::random_proper_graph(gen, n, 1, 5);
            REQUIRE(is_proper(g));
            for (const TemporalEdge& e : g.edges()) {
                for (const auto& [v, other] : {std::pair{e.u, e.v}, std::pair{e.v, e.u}}) {
                    Label lmax = e.label;  // floor so the exponent stays nonnegative
                    for (const TemporalEdge& f : g.edges())
                        if (f.u != v && f.v != v) lmax = std::max(lmax, f.label);
                    const long long bound = 1LL << (lmax - e.label);
                    REQUIRE(reach_count_via_first_edge(g, v, other) <= bound);
                }
            }
        }
    }
}

TEST_CASE("no proper one-label graph on four vertices is strictly connected") {
    testutil::for_each_labeled_graph(4, 1, 1, [](const TemporalGraph& g) {
        if (is_proper(g)) REQUIRE_FALSE(is_temporally_connected(g, ReachMode::Strict));
    });
    const TemporalGraph cycle(4, {{0, 1, 1}, {1, 2, 2}, {2, 3, 1}, {3, 0, 2}});
    REQUIRE(is_proper(cycle));
    REQUIRE(is_temporally_connected(cycle, ReachMode::Strict));
    REQUIRE(lifetime(cycle) == 2);
}
