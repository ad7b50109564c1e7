#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <tuple>
#include <utility>
#include <vector>

namespace tempo_ncg {

using VertexId = std::int32_t;
using Label = std::int64_t;

// A temporal path is a sequence of adjacent edges whose labels never decrease
// (NonStrict) or strictly increase (Strict).
enum class ReachMode { NonStrict, Strict };

struct TemporalEdge {
    VertexId u{};  // normalized: u < v
    VertexId v{};
    Label label{};

    friend bool operator==(const TemporalEdge&, const TemporalEdge&) = default;
    friend bool operator<(const TemporalEdge& a, const TemporalEdge& b) {
        return std::tie(a.u, a.v, a.label) < std::tie(b.u, b.v, b.label);
    }
};

// Undirected graph on vertices 0..n-1 with exactly one integer label per
// edge. Labels may be zero or negative; positivity is a game-layer concept.
// Immutable after construction.
class TemporalGraph {
public:
    explicit TemporalGraph(VertexId n) : n_(n) {
        if (n < 1) throw std::invalid_argument("graph needs at least one vertex");
        adj_.resize(static_cast<std::size_t>(n));
    }

    TemporalGraph(VertexId n, std::vector<TemporalEdge> edges) : TemporalGraph(n) {
        for (auto& e : edges) {
            if (e.u > e.v) std::swap(e.u, e.v);
            if (e.u == e.v) throw std::invalid_argument("self loops are not allowed");
            if (e.u < 0 || e.v >= n_) throw std::invalid_argument("edge endpoint out of range");
        }
        std::sort(edges.begin(), edges.end());
        for (std::size_t i = 1; i < edges.size(); ++i) {
            if (edges[i].u == edges[i - 1].u && edges[i].v == edges[i - 1].v)
                throw std::invalid_argument("duplicate edge: at most one label per vertex pair");
        }
        edges_ = std::move(edges);
        for (std::uint32_t i = 0; i < edges_.size(); ++i) {
            const auto& e = edges_[i];
            adj_[static_cast<std::size_t>(e.u)].emplace_back(e.v, e.label);
            adj_[static_cast<std::size_t>(e.v)].emplace_back(e.u, e.label);
            label_order_.push_back(i);
        }
        std::sort(label_order_.begin(), label_order_.end(), [this](std::uint32_t a, std::uint32_t b) {
            return std::tie(edges_[a].label, edges_[a].u, edges_[a].v) <
                   std::tie(edges_[b].label, edges_[b].u, edges_[b].v);
        });
    }

    VertexId vertex_count() const { return n_; }
    std::size_t edge_count() const { return edges_.size(); }

    // Edges sorted by (u, v); the canonical listing for serialization.
    const std::vector<TemporalEdge>& edges() const { return edges_; }

    // Edge indices sorted by (label, u, v); the sweep order for reachability.
    const std::vector<std::uint32_t>& label_order() const { return label_order_; }

    std::optional<Label> label_of(VertexId u, VertexId v) const {
        require_vertex(u);
        require_vertex(v);
        if (u > v) std::swap(u, v);
        auto it = std::lower_bound(edges_.begin(), edges_.end(), std::make_pair(u, v),
                                   [](const TemporalEdge& e, const std::pair<VertexId, VertexId>& p) {
                                       return std::tie(e.u, e.v) < std::tie(p.first, p.second);
                                   });
        if (it == edges_.end() || it->u != u || it->v != v) return std::nullopt;
        return it->label;
    }

    bool has_edge(VertexId u, VertexId v) const { return label_of(u, v).has_value(); }

    const std::vector<std::pair<VertexId, Label>>& neighbors(VertexId v) const {
        require_vertex(v);
        return adj_[static_cast<std::size_t>(v)];
    }

    void require_vertex(VertexId v) const {
        if (v < 0 || v >= n_) throw std::invalid_argument("vertex out of range");
    }

    friend bool operator==(const TemporalGraph& a, const TemporalGraph& b) {
        return a.n_ == b.n_ && a.edges_ == b.edges_;
    }

private:
    VertexId n_;
    std::vector<TemporalEdge> edges_;
    std::vector<std::uint32_t> label_order_;
    std::vector<std::vector<std::pair<VertexId, Label>>> adj_;
};

namespace detail {

inline constexpr Label kNegInf = std::numeric_limits<Label>::min() / 4;

// Single-source earliest-arrival sweep over edges in ascending label order.
// arrival[x] holds the smallest possible label of the last edge of a temporal
// path reaching x. An edge of label l extends from x when arrival[x] <= l
// (non-strict) or arrival[x] < l (strict). Since classes are processed in
// ascending order, the first time a vertex is reached its arrival is minimal.
// Within one equal-label class, non-strict paths may chain (iterate to a
// fixpoint) while strict paths cannot (vertices reached in the class get
// arrival == l, which fails the < l test, so a single pass settles).
//
// source_arrival encodes the constraint on the first edge out of the source:
// kNegInf for "any", or t / t-1 to demand a first label >= t.
inline void sweep_reach(const TemporalGraph& g, VertexId source, ReachMode mode,
                        Label source_arrival, std::vector<Label>& arrival,
                        std::vector<char>& reached) {
    const auto n = static_cast<std::size_t>(g.vertex_count());
    arrival.assign(n, 0);
    reached.assign(n, 0);
    reached[static_cast<std::size_t>(source)] = 1;
    arrival[static_cast<std::size_t>(source)] = source_arrival;

    const auto& order = g.label_order();
    const auto& edges = g.edges();
    const bool strict = (mode == ReachMode::Strict);

    std::size_t i = 0;
    while (i < order.size()) {
        const Label l = edges[order[i]].label;
        std::size_t j = i;
        while (j < order.size() && edges[order[j]].label == l) ++j;

        bool changed = true;
        while (changed) {
            changed = false;
            for (std::size_t k = i; k < j; ++k) {
                const TemporalEdge& e = edges[order[k]];
                const auto su = static_cast<std::size_t>(e.u);
                const auto sv = static_cast<std::size_t>(e.v);
                if (reached[su] && !reached[sv] && (strict ? arrival[su] < l : arrival[su] <= l)) {
                    reached[sv] = 1;
                    arrival[sv] = l;
                    changed = true;
                }
                if (reached[sv] && !reached[su] && (strict ? arrival[sv] < l : arrival[sv] <= l)) {
                    reached[su] = 1;
                    arrival[su] = l;
                    changed = true;
                }
            }
            if (strict) break;
        }
        i = j;
    }
}

inline std::size_t count_reached(const TemporalGraph& g, VertexId source, ReachMode mode) {
    std::vector<Label> arrival;
    std::vector<char> reached;
    sweep_reach(g, source, mode, kNegInf, arrival, reached);
    return static_cast<std::size_t>(std::count(reached.begin(), reached.end(), char(1)));
}

}  // namespace detail

// R_G(v): every vertex some temporal path from v reaches, v included.
// Returned sorted ascending.
inline std::vector<VertexId> reachable_set(const TemporalGraph& g, VertexId v, ReachMode mode) {
    g.require_vertex(v);
    std::vector<Label> arrival;
    std::vector<char> reached;
    detail::sweep_reach(g, v, mode, detail::kNegInf, arrival, reached);
    std::vector<VertexId> out;
    for (VertexId x = 0; x < g.vertex_count(); ++x)
        if (reached[static_cast<std::size_t>(x)]) out.push_back(x);
    return out;
}

// R_{G,t}(v): restricted to paths whose first edge has label >= t.
inline std::vector<VertexId> reachable_from_time(const TemporalGraph& g, VertexId v, Label t,
                                                 ReachMode mode) {
    g.require_vertex(v);
    const Label src = (mode == ReachMode::Strict) ? t - 1 : t;
    std::vector<Label> arrival;
    std::vector<char> reached;
    detail::sweep_reach(g, v, mode, src, arrival, reached);
    std::vector<VertexId> out;
    for (VertexId x = 0; x < g.vertex_count(); ++x)
        if (reached[static_cast<std::size_t>(x)]) out.push_back(x);
    return out;
}

inline bool is_temporally_connected(const TemporalGraph& g, ReachMode mode) {
    const auto n = static_cast<std::size_t>(g.vertex_count());
    for (VertexId v = 0; v < g.vertex_count(); ++v)
        if (detail::count_reached(g, v, mode) != n) return false;
    return true;
}

// Subgraph that is a tree on R_G(v) (vertices outside R_G(v) stay isolated)
// and preserves the root's reachable set exactly. Deterministic: a vertex is
// attached the first time it becomes reachable (lowest arriving label, then
// earliest chaining round within the label class), tie-broken toward the
// lowest-indexed parent.
inline TemporalGraph reachability_tree(const TemporalGraph& g, VertexId v, ReachMode mode) {
    g.require_vertex(v);
    const auto n = static_cast<std::size_t>(g.vertex_count());
    std::vector<Label> arrival(n, 0);
    std::vector<char> reached(n, 0);
    std::vector<std::int64_t> parent_edge(n, -1);
    reached[static_cast<std::size_t>(v)] = 1;
    arrival[static_cast<std::size_t>(v)] = detail::kNegInf;

    const auto& order = g.label_order();
    const auto& edges = g.edges();
    const bool strict = (mode == ReachMode::Strict);

    std::size_t i = 0;
    std::vector<std::int64_t> claim(n);
    while (i < order.size()) {
        const Label l = edges[order[i]].label;
        std::size_t j = i;
        while (j < order.size() && edges[order[j]].label == l) ++j;

        // Rounds within the class: claims are gathered against the committed
        // state and applied in a batch, so every newly attached vertex takes
        // its smallest eligible parent index.
        while (true) {
            std::fill(claim.begin(), claim.end(), -1);
            bool any = false;
            auto parent_in = [&](std::int64_t edge_idx, VertexId child) {
                const TemporalEdge& pe = edges[static_cast<std::size_t>(edge_idx)];
                return pe.u == child ? pe.v : pe.u;
            };
            for (std::size_t k = i; k < j; ++k) {
                const TemporalEdge& e = edges[order[k]];
                auto offer = [&](VertexId from, VertexId to) {
                    const auto sf = static_cast<std::size_t>(from);
                    const auto st = static_cast<std::size_t>(to);
                    if (!reached[sf] || reached[st]) return;
                    if (strict ? arrival[sf] >= l : arrival[sf] > l) return;
                    if (claim[st] < 0 || parent_in(claim[st], to) > from) claim[st] = order[k];
                    any = true;
                };
                offer(e.u, e.v);
                offer(e.v, e.u);
            }
            if (!any) break;
            for (std::size_t x = 0; x < n; ++x) {
                if (claim[x] >= 0) {
                    reached[x] = 1;
                    arrival[x] = l;
                    parent_edge[x] = claim[x];
                }
            }
        }
        i = j;
    }

    std::vector<TemporalEdge> tree;
    for (std::size_t x = 0; x < n; ++x)
        if (parent_edge[x] >= 0) tree.push_back(edges[static_cast<std::size_t>(parent_edge[x])]);
    return TemporalGraph(g.vertex_count(), std::move(tree));
}

// Largest label. Undefined on an edgeless graph.
inline Label lifetime(const TemporalGraph& g) {
    if (g.edge_count() == 0) throw std::domain_error("lifetime is undefined on an edgeless graph");
    Label best = g.edges().front().label;
    for (const auto& e : g.edges()) best = std::max(best, e.label);
    return best;
}

// Proper labeling: no two edges sharing a vertex carry the same label.
inline bool is_proper(const TemporalGraph& g) {
    std::vector<Label> labels;
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        labels.clear();
        for (const auto& [w, l] : g.neighbors(v)) labels.push_back(l);
        std::sort(labels.begin(), labels.end());
        if (std::adjacent_find(labels.begin(), labels.end()) != labels.end()) return false;
    }
    return true;
}

namespace detail {

inline void first_edge_dfs(const TemporalGraph& g, VertexId cur, Label last,
                           std::vector<char>& on_path, std::vector<char>& seen) {
    for (const auto& [nbr, l] : g.neighbors(cur)) {
        if (l <= last) continue;
        const auto sn = static_cast<std::size_t>(nbr);
        if (on_path[sn]) continue;
        on_path[sn] = 1;
        seen[sn] = 1;
        first_edge_dfs(g, nbr, l, on_path, seen);
        on_path[sn] = 0;
    }
}

}  // namespace detail

// Number of distinct vertices reachable from v along simple strict temporal
// paths whose first edge is {v, other}; the far endpoint counts, v does not.
inline int reach_count_via_first_edge(const TemporalGraph& g, VertexId v, VertexId other) {
    g.require_vertex(v);
    g.require_vertex(other);
    const auto label = g.label_of(v, other);
    if (!label) throw std::invalid_argument("first edge is not in the graph");
    const auto n = static_cast<std::size_t>(g.vertex_count());
    std::vector<char> on_path(n, 0), seen(n, 0);
    on_path[static_cast<std::size_t>(v)] = 1;
    on_path[static_cast<std::size_t>(other)] = 1;
    seen[static_cast<std::size_t>(other)] = 1;
    detail::first_edge_dfs(g, other, *label, on_path, seen);
    return static_cast<int>(std::count(seen.begin(), seen.end(), char(1)));
}

// Checks that the listed edges exist, consecutive edges share an endpoint
// (tracking the walk's possible positions), and labels respect the mode.
inline bool is_temporal_path(const TemporalGraph& g,
                             const std::vector<std::pair<VertexId, VertexId>>& walk,
                             ReachMode mode) {
    if (walk.empty()) return true;
    const bool strict = (mode == ReachMode::Strict);
    Label last = 0;
    // Positions the walk could occupy after the edges seen so far.
    std::vector<VertexId> at;
    bool first = true;
    for (const auto& [a, b] : walk) {
        const auto l = g.label_of(a, b);
        if (!l) return false;
        if (first) {
            at = {a, b};
            first = false;
        } else {
            if (strict ? *l <= last : *l < last) return false;
            std::vector<VertexId> next;
            for (VertexId pos : at) {
                if (pos == a && std::find(next.begin(), next.end(), b) == next.end())
                    next.push_back(b);
                if (pos == b && std::find(next.begin(), next.end(), a) == next.end())
                    next.push_back(a);
            }
            if (next.empty()) return false;
            at = std::move(next);
        }
        last = *l;
    }
    return true;
}

}  // namespace tempo_ncg
