#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "tempo_ncg/game.hpp"
#include "tempo_ncg/rational.hpp"
#include "tempo_ncg/temporal_graph.hpp"

namespace tempo_ncg {

// Violation of a hard enumeration guard (brute-force sizes, scan sizes).
// Guards fail loudly; they never truncate silently.
struct GuardError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline constexpr long long kDefaultHardNodeLimit = 20'000'000;

struct SearchBounds {
    int max_edges = 1;            // deviation strategies hold at most this many purchases
    int label_window_pad = 1;     // widening of the candidate label window; >= max_edges
    long long hard_node_limit = kDefaultHardNodeLimit;  // abort threshold on evaluated candidates

    // Wide enough that every incumbent strategy stays inside the search
    // space, which is what makes a NashCertified verdict meaningful.
    static SearchBounds defaults_for(const StrategyProfile& profile) {
        SearchBounds b;
        b.max_edges = static_cast<int>(std::max<std::size_t>(profile.max_strategy_size(), 1));
        b.label_window_pad = b.max_edges;
        return b;
    }

    void validate() const {
        if (max_edges < 1) throw std::invalid_argument("max_edges must be at least 1");
        if (label_window_pad < max_edges)
            throw std::invalid_argument("label_window_pad must be at least max_edges");
        if (hard_node_limit < 1) throw std::invalid_argument("hard_node_limit must be positive");
    }
};

enum class Verdict { NashCertified, DeviationFound, BudgetExceeded };

struct DeviationWitness {
    VertexId agent{};
    Strategy strategy;
    Rat old_cost{};
    Rat new_cost{};
};

struct EquilibriumReport {
    Verdict verdict{};
    std::optional<DeviationWitness> witness;
    SearchBounds bounds_used{};
};

struct BestResponseResult {
    bool budget_exceeded = false;
    Strategy strategy;
    CostBreakdown cost;
};

enum class OptimumMethod { BruteForce, FormulaOracle };

struct OptimumResult {
    Rat value{};
    std::optional<StrategyProfile> witness;
    OptimumMethod method{};
};

struct DynamicsResult {
    enum class Kind { Converged, Cycle, Budget };
    Kind kind{};
    std::optional<StrategyProfile> profile;  // set when Converged
    int rounds = 0;                          // rounds executed when Converged
    int period = 0;                          // cycle length in rounds when Cycle
};

// Integer labels a deviating agent may use: the labels everyone else
// purchased, padded on both sides. Relative order against the rest of the
// graph is all that matters for reachability and rank costs, and the pad
// leaves room for a deviation's own labels to interleave, so wider windows
// cannot improve on this one. Under the positive-labels penalty the window
// clamps to [1, inf); if that empties it, label 1 (the cheapest legal class)
// is still offered.
inline std::vector<Label> candidate_labels(const StrategyProfile& profile, VertexId u,
                                           const SearchBounds& bounds, const Variant& variant) {
    profile.require_agent(u);
    bounds.validate();
    bool any = false;
    Label lo = 1, hi = 1;
    for (VertexId w = 0; w < profile.n(); ++w) {
        if (w == u) continue;
        for (const Purchase& p : profile.strategy(w).purchases()) {
            lo = any ? std::min(lo, p.label) : p.label;
            hi = any ? std::max(hi, p.label) : p.label;
            any = true;
        }
    }
    lo -= bounds.label_window_pad;
    hi += bounds.label_window_pad;
    if (variant.penalties.positive_labels) {
        lo = std::max<Label>(lo, 1);
        if (hi < lo) lo = hi = 1;
    }
    std::vector<Label> out;
    out.reserve(static_cast<std::size_t>(hi - lo + 1));
    for (Label l = lo; l <= hi; ++l) out.push_back(l);
    return out;
}

namespace detail {

// Fixed opponents of one agent: their realized edges plus the machinery to
// price any candidate strategy of that agent.
struct OpponentContext {
    const Variant& variant;
    const StrategyProfile& profile;
    VertexId u;
    const KPolicy& kp;
    std::vector<TemporalEdge> base;  // realize(profile minus u), sorted by (u, v)

    OpponentContext(const Variant& variant_, const StrategyProfile& profile_, VertexId u_,
                    const KPolicy& kp_)
        : variant(variant_), profile(profile_), u(u_), kp(kp_),
          base(realized_edges(profile_, u_)) {}

    CostBreakdown eval(const Strategy& s) const {
        std::vector<TemporalEdge> merged = base;
        const std::size_t base_size = merged.size();
        for (const Purchase& p : s.purchases()) {
            const VertexId a = std::min(u, p.to);
            const VertexId b = std::max(u, p.to);
            auto it = std::lower_bound(merged.begin(), merged.begin() + static_cast<std::ptrdiff_t>(base_size),
                                       std::make_pair(a, b),
                                       [](const TemporalEdge& e, const std::pair<VertexId, VertexId>& pr) {
                                           return std::tie(e.u, e.v) < std::tie(pr.first, pr.second);
                                       });
            if (it != merged.begin() + static_cast<std::ptrdiff_t>(base_size) && it->u == a && it->v == b) {
                it->label = std::min(it->label, p.label);
                continue;
            }
            bool in_tail = false;
            for (std::size_t t = base_size; t < merged.size(); ++t) {
                if (merged[t].u == a && merged[t].v == b) {
                    merged[t].label = std::min(merged[t].label, p.label);
                    in_tail = true;
                    break;
                }
            }
            if (!in_tail) merged.push_back(TemporalEdge{a, b, p.label});
        }
        TemporalGraph g(profile.n(), std::move(merged));
        return agent_cost_for(variant, profile, u, s, kp, g);
    }
};

// Canonical enumeration of candidate strategies: at most one purchase per
// target, at most max_edges purchases, labels drawn from `labels`. Visits in
// ascending (purchase count, target set, label tuple) order, which is also
// the tie-break order of best_response. fn returns false to stop early.
template <typename Fn>
void enumerate_strategies(VertexId n, VertexId u, const std::vector<Label>& labels, int max_edges,
                          Fn&& fn) {
    std::vector<VertexId> targets;
    for (VertexId w = 0; w < n; ++w)
        if (w != u) targets.push_back(w);

    std::vector<Purchase> buf;
    if (!fn(buf)) return;  // the empty strategy

    const int kmax = std::min<int>(max_edges, static_cast<int>(targets.size()));
    if (labels.empty()) return;
    for (int k = 1; k <= kmax; ++k) {
        std::vector<int> idx(static_cast<std::size_t>(k));
        for (int i = 0; i < k; ++i) idx[static_cast<std::size_t>(i)] = i;
        while (true) {
            std::vector<std::size_t> li(static_cast<std::size_t>(k), 0);
            while (true) {
                buf.clear();
                for (int i = 0; i < k; ++i)
                    buf.push_back(Purchase{targets[static_cast<std::size_t>(idx[static_cast<std::size_t>(i)])],
                                           labels[li[static_cast<std::size_t>(i)]]});
                if (!fn(buf)) return;
                int pos = k - 1;
                while (pos >= 0 && li[static_cast<std::size_t>(pos)] + 1 == labels.size()) {
                    li[static_cast<std::size_t>(pos)] = 0;
                    --pos;
                }
                if (pos < 0) break;
                ++li[static_cast<std::size_t>(pos)];
            }
            int pos = k - 1;
            while (pos >= 0 &&
                   idx[static_cast<std::size_t>(pos)] == static_cast<int>(targets.size()) - k + pos)
                --pos;
            if (pos < 0) break;
            ++idx[static_cast<std::size_t>(pos)];
            for (int i = pos + 1; i < k; ++i)
                idx[static_cast<std::size_t>(i)] = idx[static_cast<std::size_t>(i - 1)] + 1;
        }
    }
}

// A disconnected agent can always improve: direct edges to every missed
// vertex cost at most n-1 extra edges plus sub-unit label churn, repaying K
// per vertex regained. Labels are fresh (above every purchased label, and at
// least 1), so no penalty indicator can newly trigger.
inline Strategy reconnect_strategy(const StrategyProfile& profile, VertexId u,
                                   const std::vector<VertexId>& reached) {
    Label fresh = 0;
    for (VertexId w = 0; w < profile.n(); ++w)
        for (const Purchase& p : profile.strategy(w).purchases()) fresh = std::max(fresh, p.label);
    fresh = std::max<Label>(fresh, 0) + 1;

    std::vector<char> ok(static_cast<std::size_t>(profile.n()), 0);
    for (VertexId w : reached) ok[static_cast<std::size_t>(w)] = 1;
    std::vector<Purchase> buys = profile.strategy(u).purchases();
    for (VertexId w = 0; w < profile.n(); ++w) {
        if (ok[static_cast<std::size_t>(w)] || w == u) continue;
        buys.push_back(Purchase{w, fresh++});
    }
    return Strategy(std::move(buys));
}

}  // namespace detail

// Exact best response of agent u against fixed opponents, over all
// strategies with at most bounds.max_edges purchases, at most one purchase
// per target, and labels from candidate_labels. Ties break toward the
// incumbent strategy, then toward fewer purchases, then lexicographically.
inline BestResponseResult best_response(const Variant& variant, const StrategyProfile& profile,
                                        VertexId u, const SearchBounds& bounds, const KPolicy& kp) {
    profile.require_agent(u);
    bounds.validate();
    kp.require_dominance(profile.n());

    const detail::OpponentContext ctx(variant, profile, u, kp);
    const std::vector<Label> labels = candidate_labels(profile, u, bounds, variant);

    BestResponseResult out;
    out.strategy = profile.strategy(u);
    out.cost = ctx.eval(out.strategy);

    long long nodes = 0;
    bool budget = false;
    detail::enumerate_strategies(
        profile.n(), u, labels, bounds.max_edges, [&](const std::vector<Purchase>& buf) {
            if (++nodes > bounds.hard_node_limit) {
                budget = true;
                return false;
            }
            Strategy cand(buf);
            CostBreakdown c = ctx.eval(cand);
            if (c.total < out.cost.total) {
                out.strategy = std::move(cand);
                out.cost = c;
            }
            return true;
        });
    out.budget_exceeded = budget;
    return out;
}

// Verifies a profile as a Nash equilibrium by exhaustive bounded deviation
// search. Disconnection short-circuits: an agent that misses vertices always
// has the direct-reconnect improvement, whatever the bounds. NashCertified
// therefore means every agent reaches everyone and no in-window deviation
// improves on any incumbent.
inline EquilibriumReport is_nash(const Variant& variant, const StrategyProfile& profile,
                                 const SearchBounds& bounds, const KPolicy& kp) {
    bounds.validate();
    kp.require_dominance(profile.n());
    if (static_cast<std::size_t>(bounds.max_edges) < profile.max_strategy_size())
        throw std::invalid_argument("bounds.max_edges below an incumbent strategy size");

    EquilibriumReport report;
    report.bounds_used = bounds;

    const TemporalGraph full = realize(profile);
    for (VertexId u = 0; u < profile.n(); ++u) {
        const std::vector<VertexId> reached = reachable_set(full, u, variant.reach);
        if (static_cast<VertexId>(reached.size()) == profile.n()) continue;
        const detail::OpponentContext ctx(variant, profile, u, kp);
        DeviationWitness w;
        w.agent = u;
        w.strategy = detail::reconnect_strategy(profile, u, reached);
        w.old_cost = ctx.eval(profile.strategy(u)).total;
        w.new_cost = ctx.eval(w.strategy).total;
        report.verdict = Verdict::DeviationFound;
        report.witness = std::move(w);
        return report;
    }

    long long nodes = 0;
    for (VertexId u = 0; u < profile.n(); ++u) {
        const detail::OpponentContext ctx(variant, profile, u, kp);
        const std::vector<Label> labels = candidate_labels(profile, u, bounds, variant);
        const Rat incumbent = ctx.eval(profile.strategy(u)).total;
        bool budget = false;
        std::optional<DeviationWitness> found;
        detail::enumerate_strategies(
            profile.n(), u, labels, bounds.max_edges, [&](const std::vector<Purchase>& buf) {
                if (++nodes > bounds.hard_node_limit) {
                    budget = true;
                    return false;
                }
                Strategy cand(buf);
                CostBreakdown c = ctx.eval(cand);
                if (c.total < incumbent) {
                    found = DeviationWitness{u, std::move(cand), incumbent, c.total};
                    return false;
                }
                return true;
            });
        if (budget) {
            report.verdict = Verdict::BudgetExceeded;
            return report;
        }
        if (found) {
            report.verdict = Verdict::DeviationFound;
            report.witness = std::move(found);
            return report;
        }
    }
    report.verdict = Verdict::NashCertified;
    return report;
}

namespace detail {

// Widening of caller bounds so that every incumbent strategy of `profile`
// fits the is_nash search space.
inline SearchBounds effective_bounds(const StrategyProfile& profile, const SearchBounds& bounds) {
    SearchBounds b = bounds;
    b.max_edges = std::max<int>(b.max_edges,
                                static_cast<int>(std::max<std::size_t>(profile.max_strategy_size(), 1)));
    b.label_window_pad = std::max(b.label_window_pad, b.max_edges);
    return b;
}

inline std::string profile_key(const StrategyProfile& profile) {
    std::string key;
    for (VertexId u = 0; u < profile.n(); ++u) {
        key += '|';
        for (const Purchase& p : profile.strategy(u).purchases()) {
            key += std::to_string(p.to);
            key += ':';
            key += std::to_string(p.label);
            key += ',';
        }
    }
    return key;
}

}  // namespace detail

// Round-robin best-response dynamics by agent index. A round with no strict
// improvement ends the run; the fixed point is re-checked with is_nash so a
// Converged result is always a certified equilibrium. A bounded fixed point
// that fails certification (possible when bounds are too tight to reconnect
// a stranded agent) reports Budget rather than a false equilibrium.
inline DynamicsResult best_response_dynamics(const Variant& variant,
                                             const StrategyProfile& initial, int max_rounds,
                                             const SearchBounds& bounds, const KPolicy& kp) {
    bounds.validate();
    kp.require_dominance(initial.n());
    if (max_rounds < 1) throw std::invalid_argument("max_rounds must be positive");

    StrategyProfile state = initial;
    std::map<std::string, int> seen;
    seen.emplace(detail::profile_key(state), 0);

    for (int round = 1; round <= max_rounds; ++round) {
        bool improved = false;
        for (VertexId u = 0; u < state.n(); ++u) {
            BestResponseResult br = best_response(variant, state, u, bounds, kp);
            if (br.budget_exceeded) return DynamicsResult{DynamicsResult::Kind::Budget, {}, 0, 0};
            if (!(br.strategy == state.strategy(u))) {
                state = state.with_strategy(u, std::move(br.strategy));
                improved = true;
            }
        }
        if (!improved) {
            const EquilibriumReport rep =
                is_nash(variant, state, detail::effective_bounds(state, bounds), kp);
            if (rep.verdict == Verdict::NashCertified)
                return DynamicsResult{DynamicsResult::Kind::Converged, std::move(state), round, 0};
            return DynamicsResult{DynamicsResult::Kind::Budget, {}, 0, 0};
        }
        const std::string key = detail::profile_key(state);
        if (auto it = seen.find(key); it != seen.end())
            return DynamicsResult{DynamicsResult::Kind::Cycle, {}, 0, round - it->second};
        seen.emplace(key, round);
    }
    return DynamicsResult{DynamicsResult::Kind::Budget, {}, 0, 0};
}

namespace detail {

// Sum of rank label costs over all edges under one purchase per edge.
inline Rat graph_label_cost(const Variant& variant, const std::vector<Label>& labels, VertexId n) {
    if (variant.label_cost == LabelCostKind::Zero || labels.empty()) return Rat(0);
    long long total = 0;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        for (std::size_t j = 0; j < labels.size(); ++j) {
            if (variant.label_cost == LabelCostKind::Up ? labels[j] > labels[i]
                                                        : labels[j] < labels[i])
                ++total;
        }
    }
    if (total == 0) return Rat(0);
    return Rat(total, static_cast<long long>(labels.size()) * n);
}

// Ownership search for a concrete labeled graph: assign each edge to one
// endpoint so that penalty indicators are cheapest, preferring the
// lower-index endpoint on ties. Only needed when the proper-purchases
// penalty is active; otherwise lower-index ownership is free of penalties
// because canonical labels are already >= 1.
inline std::pair<StrategyProfile, Rat> assign_owners(const Variant& variant, VertexId n,
                                                     const std::vector<std::pair<VertexId, VertexId>>& pairs,
                                                     const std::vector<Label>& labels,
                                                     const KPolicy& kp) {
    const std::size_t e = pairs.size();
    auto build = [&](std::uint32_t mask) {
        std::vector<std::vector<Purchase>> buys(static_cast<std::size_t>(n));
        for (std::size_t i = 0; i < e; ++i) {
            const bool high_owner = (mask >> i) & 1u;
            const VertexId owner = high_owner ? pairs[i].second : pairs[i].first;
            const VertexId target = high_owner ? pairs[i].first : pairs[i].second;
            buys[static_cast<std::size_t>(owner)].push_back(Purchase{target, labels[i]});
        }
        std::vector<Strategy> strategies;
        strategies.reserve(static_cast<std::size_t>(n));
        for (auto& b : buys) strategies.emplace_back(std::move(b));
        return StrategyProfile(n, std::move(strategies));
    };

    if (!variant.penalties.proper_purchases || e == 0) {
        StrategyProfile p = build(0);
        Rat pen(0);
        if (variant.penalties.positive_labels)
            for (VertexId u = 0; u < n; ++u) pen += penalty_positive(p.strategy(u), kp.k);
        return {std::move(p), pen};
    }

    std::optional<StrategyProfile> best;
    Rat best_pen;
    for (std::uint32_t mask = 0; mask < (1u << e); ++mask) {
        StrategyProfile p = build(mask);
        Rat pen(0);
        for (VertexId u = 0; u < n; ++u) {
            if (variant.penalties.positive_labels) pen += penalty_positive(p.strategy(u), kp.k);
            pen += proper_penalty_for(p, p.strategy(u), kp.k);
        }
        if (!best || pen < best_pen) {
            best = std::move(p);
            best_pen = pen;
            if (best_pen == Rat(0)) break;
        }
    }
    return {std::move(*best), best_pen};
}

}  // namespace detail

// Minimum social cost over all profiles. BruteForce searches labeled graphs
// in ascending edge count: duplicate purchases never pay off, so profiles
// reduce to (edge set, labels, ownership), and relative label order is all
// that matters, so labels 1..E are exhaustive up to cost-preserving
// relabeling. FormulaOracle returns the closed-form optimum of the
// uniform-cost model (label costs ignored).
inline OptimumResult social_optimum(const Variant& variant, VertexId n, OptimumMethod method,
                                    const KPolicy& kp) {
    if (n < 1) throw std::invalid_argument("need at least one vertex");
    kp.require_dominance(n);

    if (method == OptimumMethod::FormulaOracle) {
        OptimumResult out;
        out.method = method;
        if (variant.reach == ReachMode::NonStrict) {
            out.value = Rat(static_cast<long long>(n) - 1);
        } else if (n == 1) {
            out.value = Rat(0);
        } else if (n == 2) {
            out.value = Rat(1);
        } else if (n == 3) {
            out.value = Rat(3);
        } else {
            out.value = Rat(2LL * n - 4);
        }
        return out;
    }

    if (n > 5) throw GuardError("brute-force optimum is guarded to n <= 5");

    OptimumResult out;
    out.method = OptimumMethod::BruteForce;

    if (n == 1) {
        out.value = Rat(0);
        out.witness = StrategyProfile(1);
        return out;
    }

    std::vector<std::pair<VertexId, VertexId>> all_pairs;
    for (VertexId a = 0; a < n; ++a)
        for (VertexId b = a + 1; b < n; ++b) all_pairs.emplace_back(a, b);
    const int pair_count = static_cast<int>(all_pairs.size());

    std::optional<Rat> best;
    for (int e = n - 1; e <= pair_count; ++e) {
        if (best && Rat(e) >= *best) break;  // every candidate here costs at least e

        std::vector<int> idx(static_cast<std::size_t>(e));
        for (int i = 0; i < e; ++i) idx[static_cast<std::size_t>(i)] = i;
        while (true) {
            std::vector<std::pair<VertexId, VertexId>> pairs;
            pairs.reserve(static_cast<std::size_t>(e));
            for (int i = 0; i < e; ++i) pairs.push_back(all_pairs[static_cast<std::size_t>(idx[static_cast<std::size_t>(i)])]);

            // Underlying connectivity is necessary for temporal connectivity.
            std::vector<VertexId> root(static_cast<std::size_t>(n));
            for (VertexId v = 0; v < n; ++v) root[static_cast<std::size_t>(v)] = v;
            auto find = [&](VertexId v) {
                while (root[static_cast<std::size_t>(v)] != v) v = root[static_cast<std::size_t>(v)];
                return v;
            };
            for (const auto& [a, b] : pairs) root[static_cast<std::size_t>(find(a))] = find(b);
            bool connected_underlying = true;
            for (VertexId v = 0; v < n && connected_underlying; ++v)
                if (find(v) != find(0)) connected_underlying = false;

            if (connected_underlying) {
                std::vector<Label> labels(static_cast<std::size_t>(e), 1);
                while (true) {
                    std::vector<TemporalEdge> edges;
                    edges.reserve(static_cast<std::size_t>(e));
                    for (int i = 0; i < e; ++i)
                        edges.push_back(TemporalEdge{pairs[static_cast<std::size_t>(i)].first,
                                                     pairs[static_cast<std::size_t>(i)].second,
                                                     labels[static_cast<std::size_t>(i)]});
                    const TemporalGraph g(n, std::move(edges));
                    if (is_temporally_connected(g, variant.reach)) {
                        auto [profile, penalty] = detail::assign_owners(variant, n, pairs, labels, kp);
                        const Rat cost =
                            Rat(e) + detail::graph_label_cost(variant, labels, n) + penalty;
                        if (!best || cost < *best) {
                            best = cost;
                            out.witness = std::move(profile);
                        }
                    }
                    int pos = e - 1;
                    while (pos >= 0 && labels[static_cast<std::size_t>(pos)] == e) {
                        labels[static_cast<std::size_t>(pos)] = 1;
                        --pos;
                    }
                    if (pos < 0) break;
                    ++labels[static_cast<std::size_t>(pos)];
                }
            }

            int pos = e - 1;
            while (pos >= 0 && idx[static_cast<std::size_t>(pos)] == pair_count - e + pos) --pos;
            if (pos < 0) break;
            ++idx[static_cast<std::size_t>(pos)];
            for (int i = pos + 1; i < e; ++i)
                idx[static_cast<std::size_t>(i)] = idx[static_cast<std::size_t>(i - 1)] + 1;
        }
    }

    if (!best) throw std::logic_error("no temporally connected labeling found");
    out.value = *best;
    return out;
}

inline OptimumResult social_optimum(const Variant& variant, VertexId n, OptimumMethod method) {
    return social_optimum(variant, n, method, KPolicy::for_agents(n));
}

// social_cost(profile) / opt.value as an exact rational.
inline Rat price_ratio(const Variant& variant, const StrategyProfile& profile,
                       const OptimumResult& opt, const KPolicy& kp) {
    if (opt.value <= Rat(0)) throw std::invalid_argument("optimum must be positive for a ratio");
    return social_cost(variant, profile, kp) / opt.value;
}

// Every Nash equilibrium among canonical profiles: at most one purchase per
// target and labels from a small window (default [1,3] up to n=3, [1,2] at
// n=4 to keep the enumeration tractable). Profiles whose realized graph is
// not temporally connected are skipped: a stranded agent always has the
// direct-reconnect improvement, so such profiles can never certify.
inline std::vector<StrategyProfile> exhaustive_ne_scan(
    const Variant& variant, VertexId n, const SearchBounds& bounds, const KPolicy& kp,
    std::optional<std::pair<Label, Label>> window = std::nullopt) {
    if (n < 1) throw std::invalid_argument("need at least one vertex");
    if (n > 4) throw GuardError("exhaustive equilibrium scan is guarded to n <= 4");
    kp.require_dominance(n);

    const auto [wlo, whi] = window.value_or(
        std::make_pair<Label, Label>(1, n <= 3 ? 3 : 2));
    if (whi < wlo) throw std::invalid_argument("empty scan label window");

    std::vector<Label> labels;
    for (Label l = wlo; l <= whi; ++l) labels.push_back(l);

    // Identical candidate strategy shapes for every agent, distinct targets.
    std::vector<std::vector<Strategy>> per_agent(static_cast<std::size_t>(n));
    for (VertexId u = 0; u < n; ++u) {
        detail::enumerate_strategies(n, u, labels, n - 1, [&](const std::vector<Purchase>& buf) {
            per_agent[static_cast<std::size_t>(u)].emplace_back(buf);
            return true;
        });
    }

    std::vector<StrategyProfile> found;
    std::vector<std::size_t> pick(static_cast<std::size_t>(n), 0);
    while (true) {
        std::vector<Strategy> strategies;
        strategies.reserve(static_cast<std::size_t>(n));
        for (VertexId u = 0; u < n; ++u)
            strategies.push_back(per_agent[static_cast<std::size_t>(u)][pick[static_cast<std::size_t>(u)]]);
        StrategyProfile profile(n, std::move(strategies));

        // A pair bought by both endpoints is never stable: dropping the
        // higher-label copy keeps the realized graph intact and saves an
        // edge. Skipping those profiles early keeps the scan affordable.
        std::size_t purchases = 0;
        for (VertexId u = 0; u < n; ++u) purchases += profile.strategy(u).size();

        const TemporalGraph g = realize(profile);
        if (purchases == g.edge_count() && is_temporally_connected(g, variant.reach)) {
            const EquilibriumReport rep =
                is_nash(variant, profile, detail::effective_bounds(profile, bounds), kp);
            if (rep.verdict == Verdict::BudgetExceeded)
                throw GuardError("scan exceeded the deviation-search budget");
            if (rep.verdict == Verdict::NashCertified) found.push_back(std::move(profile));
        }

        int pos = n - 1;
        while (pos >= 0 && pick[static_cast<std::size_t>(pos)] + 1 ==
                               per_agent[static_cast<std::size_t>(pos)].size()) {
            pick[static_cast<std::size_t>(pos)] = 0;
            --pos;
        }
        if (pos < 0) break;
        ++pick[static_cast<std::size_t>(pos)];
    }
    return found;
}

}  // namespace tempo_ncg
