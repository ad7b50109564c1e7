#pragma once

#include <algorithm>
#include <stdexcept>
#include <utility>
#include <vector>

#include "tempo_ncg/rational.hpp"
#include "tempo_ncg/temporal_graph.hpp"

namespace tempo_ncg {

// One purchase: "I want an edge to `to`, available from time `label`".
struct Purchase {
    VertexId to{};
    Label label{};
    friend auto operator<=>(const Purchase&, const Purchase&) = default;
};

// An agent's strategy is a set of purchases. Duplicate targets with distinct
// labels are legal; exact duplicates collapse (set semantics).
class Strategy {
public:
    Strategy() = default;
    explicit Strategy(std::vector<Purchase> purchases) : purchases_(std::move(purchases)) {
        std::sort(purchases_.begin(), purchases_.end());
        purchases_.erase(std::unique(purchases_.begin(), purchases_.end()), purchases_.end());
    }

    const std::vector<Purchase>& purchases() const { return purchases_; }
    std::size_t size() const { return purchases_.size(); }
    bool empty() const { return purchases_.empty(); }

    friend bool operator==(const Strategy&, const Strategy&) = default;

private:
    std::vector<Purchase> purchases_;  // sorted by (to, label)
};

class StrategyProfile {
public:
    explicit StrategyProfile(VertexId n) : n_(n), strategies_(checked_size(n)) {}

    StrategyProfile(VertexId n, std::vector<Strategy> strategies)
        : n_(n), strategies_(std::move(strategies)) {
        if (strategies_.size() != checked_size(n))
            throw std::invalid_argument("profile needs exactly one strategy per agent");
        for (VertexId u = 0; u < n_; ++u) validate_strategy(u, strategies_[static_cast<std::size_t>(u)]);
    }

    VertexId n() const { return n_; }

    const Strategy& strategy(VertexId u) const {
        require_agent(u);
        return strategies_[static_cast<std::size_t>(u)];
    }

    const std::vector<Strategy>& strategies() const { return strategies_; }

    StrategyProfile with_strategy(VertexId u, Strategy s) const {
        require_agent(u);
        validate_strategy(u, s);
        StrategyProfile out = *this;
        out.strategies_[static_cast<std::size_t>(u)] = std::move(s);
        return out;
    }

    std::size_t max_strategy_size() const {
        std::size_t m = 0;
        for (const auto& s : strategies_) m = std::max(m, s.size());
        return m;
    }

    void require_agent(VertexId u) const {
        if (u < 0 || u >= n_) throw std::invalid_argument("agent out of range");
    }

    friend bool operator==(const StrategyProfile&, const StrategyProfile&) = default;

private:
    static std::size_t checked_size(VertexId n) {
        if (n < 1) throw std::invalid_argument("profile needs at least one agent");
        return static_cast<std::size_t>(n);
    }

    void validate_strategy(VertexId u, const Strategy& s) const {
        for (const Purchase& p : s.purchases()) {
            if (p.to < 0 || p.to >= n_) throw std::invalid_argument("purchase target out of range");
            if (p.to == u) throw std::invalid_argument("agents cannot buy an edge to themselves");
        }
    }

    VertexId n_;
    std::vector<Strategy> strategies_;
};

enum class LabelCostKind { Zero, Up, Down };

struct Penalties {
    bool positive_labels = false;    // charge K per purchase with label < 1
    bool proper_purchases = false;   // charge K per triggered same-label indicator
    friend bool operator==(const Penalties&, const Penalties&) = default;
};

struct Variant {
    ReachMode reach = ReachMode::NonStrict;
    LabelCostKind label_cost = LabelCostKind::Zero;
    Penalties penalties{};
    friend bool operator==(const Variant&, const Variant&) = default;
};

// The dominance constant: one unreached vertex (or one penalty trigger) must
// outweigh any spending on edges, so K >= n + 2. The default (n+1)^2 keeps a
// single K above n extra edges plus every sub-unit label cost.
struct KPolicy {
    Rat k{};

    static KPolicy for_agents(VertexId n) {
        if (n < 1) throw std::invalid_argument("need at least one agent");
        const long long m = static_cast<long long>(n) + 1;
        return KPolicy{Rat(m * m)};
    }

    void require_dominance(VertexId n) const {
        if (k < Rat(static_cast<long long>(n) + 2))
            throw std::invalid_argument("K must be at least n + 2");
    }
};

struct CostBreakdown {
    long long edge_count = 0;
    Rat label_cost{};
    Rat penalty{};
    long long unreached = 0;
    Rat total{};
    friend bool operator==(const CostBreakdown&, const CostBreakdown&) = default;
};

namespace detail {

// Realized edge list: each pair somebody paid for, at the minimum label
// offered by either endpoint. skip_agent drops one agent's purchases, which
// is how deviation search prices "everyone else's" network.
inline std::vector<TemporalEdge> realized_edges(const StrategyProfile& profile,
                                                VertexId skip_agent = -1) {
    std::vector<TemporalEdge> acc;
    for (VertexId u = 0; u < profile.n(); ++u) {
        if (u == skip_agent) continue;
        for (const Purchase& p : profile.strategy(u).purchases()) {
            const VertexId a = std::min(u, p.to);
            const VertexId b = std::max(u, p.to);
            acc.push_back(TemporalEdge{a, b, p.label});
        }
    }
    std::sort(acc.begin(), acc.end());
    std::vector<TemporalEdge> out;
    for (const auto& e : acc) {
        if (!out.empty() && out.back().u == e.u && out.back().v == e.v) continue;  // keep min label
        out.push_back(e);
    }
    return out;
}

}  // namespace detail

inline TemporalGraph realize(const StrategyProfile& profile) {
    return TemporalGraph(profile.n(), detail::realized_edges(profile));
}

// Rank-based label cost of one realized edge: the fraction of edges with a
// strictly larger (Up) or strictly smaller (Down) label, scaled by 1/n so any
// single agent's label spending stays below one edge.
inline Rat edge_label_cost(const Variant& variant, const TemporalGraph& g, VertexId u, VertexId v) {
    const auto l = g.label_of(u, v);
    if (!l) throw std::invalid_argument("edge is not present in the realized graph");
    if (variant.label_cost == LabelCostKind::Zero) return Rat(0);
    long long cnt = 0;
    for (const auto& e : g.edges()) {
        if (variant.label_cost == LabelCostKind::Up ? e.label > *l : e.label < *l) ++cnt;
    }
    if (cnt == 0) return Rat(0);
    return Rat(cnt, static_cast<long long>(g.edge_count()) * g.vertex_count());
}

// K per purchase whose label is below 1.
inline Rat penalty_positive(const Strategy& s, const Rat& k) {
    long long cnt = 0;
    for (const Purchase& p : s.purchases())
        if (p.label < 1) ++cnt;
    return k * cnt;
}

namespace detail {

// The two same-label indicators, each worth one K when triggered:
//  (a) the agent holds two purchases with the same label;
//  (b) some purchase (v, l) targets an agent v who also buys some label-l edge.
inline Rat proper_penalty_for(const StrategyProfile& profile, const Strategy& s, const Rat& k) {
    bool own_dup = false;
    {
        std::vector<Label> labels;
        for (const Purchase& p : s.purchases()) labels.push_back(p.label);
        std::sort(labels.begin(), labels.end());
        own_dup = std::adjacent_find(labels.begin(), labels.end()) != labels.end();
    }
    bool target_clash = false;
    for (const Purchase& p : s.purchases()) {
        for (const Purchase& q : profile.strategy(p.to).purchases()) {
            if (q.label == p.label) {
                target_clash = true;
                break;
            }
        }
        if (target_clash) break;
    }
    return k * ((own_dup ? 1 : 0) + (target_clash ? 1 : 0));
}

}  // namespace detail

inline Rat penalty_proper(const StrategyProfile& profile, VertexId u, const Rat& k) {
    profile.require_agent(u);
    return detail::proper_penalty_for(profile, profile.strategy(u), k);
}

namespace detail {

// Cost of agent u if it held strategy s, against the realized graph g (which
// must equal realize(profile with u -> s)). Shared by the public cost
// functions and the deviation search.
inline CostBreakdown agent_cost_for(const Variant& variant, const StrategyProfile& profile,
                                    VertexId u, const Strategy& s, const KPolicy& kp,
                                    const TemporalGraph& g) {
    CostBreakdown out;
    out.edge_count = static_cast<long long>(s.size());
    if (variant.label_cost != LabelCostKind::Zero) {
        for (const Purchase& p : s.purchases())
            out.label_cost += edge_label_cost(variant, g, u, p.to);
    }
    if (variant.penalties.positive_labels) out.penalty += penalty_positive(s, kp.k);
    if (variant.penalties.proper_purchases) out.penalty += proper_penalty_for(profile, s, kp.k);
    out.unreached =
        static_cast<long long>(g.vertex_count()) -
        static_cast<long long>(count_reached(g, u, variant.reach));
    out.total = Rat(out.edge_count) + out.label_cost + out.penalty + kp.k * out.unreached;
    return out;
}

}  // namespace detail

inline CostBreakdown agent_cost(const Variant& variant, const StrategyProfile& profile, VertexId u,
                                const KPolicy& kp, const TemporalGraph& realized) {
    profile.require_agent(u);
    kp.require_dominance(profile.n());
    return detail::agent_cost_for(variant, profile, u, profile.strategy(u), kp, realized);
}

inline CostBreakdown agent_cost(const Variant& variant, const StrategyProfile& profile, VertexId u,
                                const KPolicy& kp) {
    return agent_cost(variant, profile, u, kp, realize(profile));
}

inline Rat social_cost(const Variant& variant, const StrategyProfile& profile, const KPolicy& kp) {
    kp.require_dominance(profile.n());
    const TemporalGraph g = realize(profile);
    Rat total;
    for (VertexId u = 0; u < profile.n(); ++u)
        total += detail::agent_cost_for(variant, profile, u, profile.strategy(u), kp, g).total;
    return total;
}

}  // namespace tempo_ncg
