#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "tempo_ncg/game.hpp"
#include "tempo_ncg/rational.hpp"
#include "tempo_ncg/temporal_graph.hpp"

namespace tempo_ncg {

// A generated profile together with the variants under which it is asserted
// to be a Nash equilibrium. expected_social_cost is the social cost under
// the first claimed variant (or under uniform edge cost when no variant is
// claimed).
struct ConstructionClaim {
    std::string family;
    std::vector<std::pair<std::string, long long>> params;
    StrategyProfile profile;
    std::vector<Variant> claimed_variants;
    Rat expected_social_cost;
    std::string anchor;
};

namespace detail {

inline StrategyProfile profile_from_buys(VertexId n, std::vector<std::vector<Purchase>> buys) {
    std::vector<Strategy> strategies;
    strategies.reserve(buys.size());
    for (auto& b : buys) strategies.emplace_back(std::move(b));
    return StrategyProfile(n, std::move(strategies));
}

}  // namespace detail

// Every vertex except the hub buys one `label`-edge toward the hub. Stable
// under non-strict reachability: each agent is at its 1-edge minimum, and
// the hub pays nothing. The equal-label claim set is only offered for
// labels >= 1, where the positive-labels penalty stays silent.
inline ConstructionClaim star_tree(VertexId n, Label label) {
    if (n < 1) throw std::invalid_argument("star_tree needs n >= 1");
    std::vector<std::vector<Purchase>> buys(static_cast<std::size_t>(n));
    for (VertexId v = 1; v < n; ++v) buys[static_cast<std::size_t>(v)].push_back(Purchase{0, label});

    std::vector<Variant> claims;
    if (label >= 1) {
        for (LabelCostKind kind : {LabelCostKind::Zero, LabelCostKind::Down, LabelCostKind::Up})
            claims.push_back(Variant{ReachMode::NonStrict, kind, Penalties{true, false}});
    }
    return ConstructionClaim{
        "star",
        {{"n", n}, {"label", label}},
        detail::profile_from_buys(n, std::move(buys)),
        std::move(claims),
        Rat(static_cast<long long>(n) - 1),
        "uniform-label spanning star (non-strict)",
    };
}

// k blocks of k vertices. Inside block i, vertex 1 buys a 1-edge to vertex 2
// and each vertex j >= 3 buys a 1-edge to vertex j-1, so block traffic
// funnels through vertex 2. Each block's vertex 2 then buys k-1 2-edges,
// one into every other block, targets staggered so no vertex receives two
// of them. 2k(k-1) edges against an optimum of k^2-1 drives the uniform
// non-strict ratio toward 2.
//
// Only the uniform-cost claim is made. Under the increasing rank cost a
// 1-edge buyer does strictly better by instead rebuying its incident 2-edge
// at label 1: the realized graph loses the old 1-edge and relabels the
// 2-edge downward, staying connected while the buyer's rank fraction drops
// (at k = 3 from 6/12 to 5/11), so the profile is not stable there.
inline ConstructionClaim grid_ne(int k) {
    if (k < 3) throw std::invalid_argument("grid_ne needs k >= 3");
    const VertexId n = static_cast<VertexId>(k) * static_cast<VertexId>(k);
    auto vertex = [k](int block, int j) {
        return static_cast<VertexId>(block * k + j);  // j is 0-based inside the block
    };
    std::vector<std::vector<Purchase>> buys(static_cast<std::size_t>(n));
    for (int i = 0; i < k; ++i) {
        buys[static_cast<std::size_t>(vertex(i, 0))].push_back(Purchase{vertex(i, 1), 1});
        for (int j = 2; j < k; ++j)
            buys[static_cast<std::size_t>(vertex(i, j))].push_back(Purchase{vertex(i, j - 1), 1});
        for (int r = 1; r < k; ++r) {
            const int block = (i + r) % k;
            const int target = r == 1 ? 0 : r;  // never index 1, so no target collides
            buys[static_cast<std::size_t>(vertex(i, 1))].push_back(Purchase{vertex(block, target), 2});
        }
    }
    return ConstructionClaim{
        "grid",
        {{"k", k}},
        detail::profile_from_buys(n, std::move(buys)),
        {Variant{ReachMode::NonStrict, LabelCostKind::Zero, Penalties{true, false}}},
        Rat(2LL * k * (k - 1)),
        "blocked grid equilibrium (non-strict uniform cost)",
    };
}

// Four ring vertices a, b, c, d buy a cycle labeled n, n+1, n, n+1; every
// remaining vertex hangs between a and c on a pair of spokes, entering the
// ring on a small label (below n) and being reached back on a large one
// (above n+1), alternating sides by parity. 2n-4 edges, matching the strict
// optimum.
//
// Equilibrium claims stop at n = 6. From n = 7 on, one of the two hubs owns
// at least three edges (its ring edge plus two return spokes), and it can
// rebundle: buy a label-1 chord to the opposite hub and one direct label-1
// edge to the lone spoke vertex whose inbound label is 1 (that entry cannot
// be continued strictly), then ride the other hub's ascending star for the
// rest. Two edges replace three, so the profile is not stable. The same
// rebundle works with labels 1 and 2 when the proper-purchase penalty is on,
// dodging the duplicate-label term. At n <= 6 each hub owns at most two
// edges and the rebundle only ties, which the search resolves in favour of
// the incumbent.
inline ConstructionClaim outer_ring_ne(VertexId n) {
    if (n < 4) throw std::invalid_argument("outer_ring_ne needs n >= 4");
    const VertexId a = 0, b = 1, c = 2, d = 3;
    std::vector<std::vector<Purchase>> buys(static_cast<std::size_t>(n));
    buys[a].push_back(Purchase{b, n});
    buys[b].push_back(Purchase{c, static_cast<Label>(n) + 1});
    buys[c].push_back(Purchase{d, n});
    buys[d].push_back(Purchase{a, static_cast<Label>(n) + 1});
    for (VertexId k = 1; k <= n - 4; ++k) {
        const VertexId e = 3 + k;
        if (k % 2 == 1) {
            buys[static_cast<std::size_t>(e)].push_back(Purchase{a, (k + 1) / 2});
            buys[c].push_back(Purchase{e, static_cast<Label>(n) + 1 + (k + 1) / 2});
        } else {
            buys[static_cast<std::size_t>(e)].push_back(Purchase{c, k / 2});
            buys[a].push_back(Purchase{e, static_cast<Label>(n) + 1 + k / 2});
        }
    }
    std::vector<Variant> claims;
    if (n <= 6) {
        claims.push_back(Variant{ReachMode::Strict, LabelCostKind::Zero, Penalties{true, false}});
        claims.push_back(Variant{ReachMode::Strict, LabelCostKind::Zero, Penalties{true, true}});
    }
    return ConstructionClaim{
        "ring",
        {{"n", n}},
        detail::profile_from_buys(n, std::move(buys)),
        std::move(claims),
        Rat(2LL * n - 4),
        "outer ring with alternating spokes (strict)",
    };
}

// Complete graph, one shared label, each edge bought by its lower endpoint.
// At label 1 no strict two-edge path can exist (a continuation would need a
// label below 1, which the positive-labels penalty forbids), so every pair
// needs its own edge and nobody can drop one. At higher labels the claim set
// is empty: an agent owning two or more edges could buy a single cheaper
// edge and ride the equal-label edges strictly upward, reaching everyone for
// cost 1.
inline ConstructionClaim clique_ne(VertexId n, Label label) {
    if (n < 2) throw std::invalid_argument("clique_ne needs n >= 2");
    if (label < 1) throw std::invalid_argument("clique_ne needs label >= 1");
    std::vector<std::vector<Purchase>> buys(static_cast<std::size_t>(n));
    for (VertexId u = 0; u < n; ++u)
        for (VertexId v = u + 1; v < n; ++v) buys[static_cast<std::size_t>(u)].push_back(Purchase{v, label});
    std::vector<Variant> claims;
    if (label == 1) {
        for (LabelCostKind kind : {LabelCostKind::Zero, LabelCostKind::Up, LabelCostKind::Down})
            claims.push_back(Variant{ReachMode::Strict, kind, Penalties{true, false}});
    }
    return ConstructionClaim{
        "clique",
        {{"n", n}, {"label", label}},
        detail::profile_from_buys(n, std::move(buys)),
        std::move(claims),
        Rat(static_cast<long long>(n) * (n - 1) / 2),
        "equal-label clique (strict)",
    };
}

// d-dimensional hypercube with the edge across coordinate i labeled i+1 and
// bought by the endpoint whose bit i is 0. Equivalent to gluing two
// identically labeled copies of the (d-1)-cube with d-labeled cross edges.
// The labeling is proper and strictly spans, and on a proper graph label-i
// edges reach at most 2^(d-i) vertices.
//
// No equilibrium variant is claimed. The properness penalty charges an
// agent only for label collisions inside its own purchase list or against
// its target's purchases, so it does not stop a rebuy that collides with a
// third party's edge: at d = 3, agent 1 can replace both its purchases with
// the single purchase (5, 1), undercutting the cross edge {1,5} from 3 to
// 1. The resulting graph is improper ({0,1} also carries label 1), the
// halving bound no longer applies, agent 1 still reaches everyone
// strictly, and its cost drops from 2 to 1.
inline ConstructionClaim hypercube_ne(int d) {
    if (d < 1) throw std::invalid_argument("hypercube_ne needs d >= 1");
    if (d > 20) throw std::invalid_argument("hypercube_ne supports d <= 20");
    const VertexId n = static_cast<VertexId>(1) << d;
    std::vector<std::vector<Purchase>> buys(static_cast<std::size_t>(n));
    for (VertexId v = 0; v < n; ++v) {
        for (int i = 0; i < d; ++i) {
            if ((v >> i) & 1) continue;
            buys[static_cast<std::size_t>(v)].push_back(
                Purchase{static_cast<VertexId>(v | (VertexId(1) << i)), static_cast<Label>(i) + 1});
        }
    }
    return ConstructionClaim{
        "hypercube",
        {{"d", d}},
        detail::profile_from_buys(n, std::move(buys)),
        {},
        Rat(static_cast<long long>(d) * (n / 2)),
        "bit-labeled hypercube (strict, proper)",
    };
}

// Hand-built strict equilibria that exploit unconstrained labels, one per
// size up to six vertices. Four vertices form a 1,2,1,2 cycle; the fifth
// and sixth hang off it with a 0-edge in and a 3-edge back. No equilibrium
// of this kind is known for larger sizes, so bigger n is rejected.
inline ConstructionClaim arbitrary_low_ne(VertexId n) {
    if (n < 1 || n > 6) throw std::invalid_argument("arbitrary_low_ne supports 1 <= n <= 6");
    std::vector<std::vector<Purchase>> buys(static_cast<std::size_t>(n));
    if (n == 2) {
        buys[0].push_back(Purchase{1, 1});
    } else if (n == 3) {
        buys[0].push_back(Purchase{1, 1});
        buys[1].push_back(Purchase{2, 1});
        buys[2].push_back(Purchase{0, 1});
    } else if (n >= 4) {
        buys[0].push_back(Purchase{1, 1});
        buys[1].push_back(Purchase{2, 2});
        buys[2].push_back(Purchase{3, 1});
        buys[3].push_back(Purchase{0, 2});
        if (n >= 5) {
            buys[4].push_back(Purchase{2, 0});
            buys[3].push_back(Purchase{4, 3});
        }
        if (n >= 6) {
            buys[1].push_back(Purchase{5, 3});
            buys[5].push_back(Purchase{0, 0});
        }
    }
    const long long cost = n == 1 ? 0 : n == 2 ? 1 : n == 3 ? 3 : 2LL * n - 4;
    return ConstructionClaim{
        "arbitrary-low",
        {{"n", n}},
        detail::profile_from_buys(n, std::move(buys)),
        {Variant{ReachMode::Strict, LabelCostKind::Zero, Penalties{false, false}}},
        Rat(cost),
        "small strict equilibria with unconstrained labels",
    };
}

}  // namespace tempo_ncg
