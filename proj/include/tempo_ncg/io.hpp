#pragma once

#include <limits>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "tempo_ncg/constructions.hpp"
#include "tempo_ncg/equilibrium.hpp"
#include "tempo_ncg/game.hpp"
#include "tempo_ncg/rational.hpp"
#include "tempo_ncg/temporal_graph.hpp"

namespace tempo_ncg {

// Insertion-ordered JSON keeps serialization deterministic, which makes
// round-trips byte-identical and output diffable.
using Json = nlohmann::ordered_json;

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace detail {

inline const Json& expect(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key))
        throw ParseError(std::string("missing key \"") + key + '"');
    return j[key];
}

inline long long expect_int(const Json& j, const char* key) {
    const Json& v = expect(j, key);
    if (!v.is_number_integer()) throw ParseError(std::string("key \"") + key + "\" must be an integer");
    return v.get<long long>();
}

}  // namespace detail

inline std::string reach_name(ReachMode m) {
    return m == ReachMode::Strict ? "strict" : "nonstrict";
}

inline std::string label_cost_name(LabelCostKind k) {
    switch (k) {
        case LabelCostKind::Zero: return "zero";
        case LabelCostKind::Up: return "up";
        case LabelCostKind::Down: return "down";
    }
    throw std::logic_error("unknown label cost kind");
}

inline std::string verdict_name(Verdict v) {
    switch (v) {
        case Verdict::NashCertified: return "nash-certified";
        case Verdict::DeviationFound: return "deviation-found";
        case Verdict::BudgetExceeded: return "budget-exceeded";
    }
    throw std::logic_error("unknown verdict");
}

inline Json variant_to_json(const Variant& v) {
    Json penalties = Json::array();
    if (v.penalties.positive_labels) penalties.push_back("positive");
    if (v.penalties.proper_purchases) penalties.push_back("proper");
    return Json{{"reach", reach_name(v.reach)},
                {"labelcost", label_cost_name(v.label_cost)},
                {"penalties", std::move(penalties)}};
}

inline Variant variant_from_json(const Json& j) {
    Variant v;
    const std::string reach = detail::expect(j, "reach").get<std::string>();
    if (reach == "strict") v.reach = ReachMode::Strict;
    else if (reach == "nonstrict") v.reach = ReachMode::NonStrict;
    else throw ParseError("reach must be \"strict\" or \"nonstrict\"");

    const std::string kind = detail::expect(j, "labelcost").get<std::string>();
    if (kind == "zero") v.label_cost = LabelCostKind::Zero;
    else if (kind == "up") v.label_cost = LabelCostKind::Up;
    else if (kind == "down") v.label_cost = LabelCostKind::Down;
    else throw ParseError("labelcost must be \"zero\", \"up\" or \"down\"");

    v.penalties = Penalties{};
    if (j.contains("penalties")) {
        const Json& ps = j["penalties"];
        if (!ps.is_array()) throw ParseError("penalties must be an array");
        for (const Json& p : ps) {
            const std::string name = p.get<std::string>();
            if (name == "positive") v.penalties.positive_labels = true;
            else if (name == "proper") v.penalties.proper_purchases = true;
            else throw ParseError("unknown penalty \"" + name + '"');
        }
    }
    return v;
}

// Compact one-line form used on the command line and in manifests, e.g.
// "strict,zero,positive,proper" or "nonstrict,up,none".
inline std::string variant_to_spec(const Variant& v) {
    std::string s = reach_name(v.reach) + ',' + label_cost_name(v.label_cost);
    if (!v.penalties.positive_labels && !v.penalties.proper_purchases) return s + ",none";
    if (v.penalties.positive_labels) s += ",positive";
    if (v.penalties.proper_purchases) s += ",proper";
    return s;
}

inline Variant variant_from_spec(const std::string& spec) {
    std::vector<std::string> parts;
    std::string cur;
    for (char c : spec) {
        if (c == ',') {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    parts.push_back(cur);
    if (parts.size() < 2) throw ParseError("variant needs at least \"<reach>,<labelcost>\"");

    Json j{{"reach", parts[0]}, {"labelcost", parts[1]}, {"penalties", Json::array()}};
    for (std::size_t i = 2; i < parts.size(); ++i) {
        if (parts[i] == "none") {
            if (parts.size() != 3) throw ParseError("\"none\" cannot be combined with penalties");
            break;
        }
        j["penalties"].push_back(parts[i]);
    }
    return variant_from_json(j);
}

inline Json graph_to_json(const TemporalGraph& g) {
    Json edges = Json::array();
    for (const TemporalEdge& e : g.edges())
        edges.push_back(Json{{"u", e.u}, {"v", e.v}, {"label", e.label}});
    return Json{{"n", g.vertex_count()}, {"edges", std::move(edges)}};
}

inline TemporalGraph graph_from_json(const Json& j) {
    const long long n = detail::expect_int(j, "n");
    if (n < 0 || n > std::numeric_limits<VertexId>::max()) throw ParseError("vertex count out of range");
    const Json& es = detail::expect(j, "edges");
    if (!es.is_array()) throw ParseError("edges must be an array");
    std::vector<TemporalEdge> edges;
    edges.reserve(es.size());
    for (const Json& e : es)
        edges.push_back(TemporalEdge{static_cast<VertexId>(detail::expect_int(e, "u")),
                                     static_cast<VertexId>(detail::expect_int(e, "v")),
                                     detail::expect_int(e, "label")});
    return TemporalGraph(static_cast<VertexId>(n), std::move(edges));
}

// Profiles always list every agent so files are self-describing; the
// variant is carried along when one is bound to the profile.
inline Json profile_to_json(const StrategyProfile& p,
                            const std::optional<Variant>& variant = std::nullopt) {
    Json out;
    out["n"] = p.n();
    if (variant) out["variant"] = variant_to_json(*variant);
    Json strategies = Json::array();
    for (VertexId u = 0; u < p.n(); ++u) {
        Json buys = Json::array();
        for (const Purchase& b : p.strategy(u).purchases())
            buys.push_back(Json{{"to", b.to}, {"label", b.label}});
        strategies.push_back(Json{{"agent", u}, {"buys", std::move(buys)}});
    }
    out["strategies"] = std::move(strategies);
    return out;
}

inline std::pair<StrategyProfile, std::optional<Variant>> profile_from_json(const Json& j) {
    const long long n = detail::expect_int(j, "n");
    if (n < 1 || n > std::numeric_limits<VertexId>::max()) throw ParseError("agent count out of range");

    std::optional<Variant> variant;
    if (j.contains("variant")) variant = variant_from_json(j["variant"]);

    std::vector<std::vector<Purchase>> buys(static_cast<std::size_t>(n));
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    if (j.contains("strategies")) {
        const Json& ss = j["strategies"];
        if (!ss.is_array()) throw ParseError("strategies must be an array");
        for (const Json& s : ss) {
            const long long agent = detail::expect_int(s, "agent");
            if (agent < 0 || agent >= n) throw ParseError("agent index out of range");
            if (seen[static_cast<std::size_t>(agent)]) throw ParseError("duplicate agent entry");
            seen[static_cast<std::size_t>(agent)] = 1;
            const Json& bs = detail::expect(s, "buys");
            if (!bs.is_array()) throw ParseError("buys must be an array");
            for (const Json& b : bs)
                buys[static_cast<std::size_t>(agent)].push_back(
                    Purchase{static_cast<VertexId>(detail::expect_int(b, "to")),
                             detail::expect_int(b, "label")});
        }
    }
    std::vector<Strategy> strategies;
    strategies.reserve(buys.size());
    for (auto& b : buys) strategies.emplace_back(std::move(b));
    return {StrategyProfile(static_cast<VertexId>(n), std::move(strategies)), variant};
}

inline Json rat_to_json(const Rat& r) { return Json(to_string(r)); }

inline Json cost_to_json(const CostBreakdown& c) {
    return Json{{"edges", c.edge_count},
                {"label_cost", rat_to_json(c.label_cost)},
                {"penalty", rat_to_json(c.penalty)},
                {"unreached", c.unreached},
                {"total", rat_to_json(c.total)},
                {"total_decimal", decimal_approx(c.total)}};
}

inline Json bounds_to_json(const SearchBounds& b) {
    return Json{{"max_edges", b.max_edges},
                {"pad", b.label_window_pad},
                {"hard_node_limit", b.hard_node_limit}};
}

inline Json witness_to_json(const DeviationWitness& w) {
    Json buys = Json::array();
    for (const Purchase& b : w.strategy.purchases())
        buys.push_back(Json{{"to", b.to}, {"label", b.label}});
    return Json{{"agent", w.agent},
                {"buys", std::move(buys)},
                {"old_cost", rat_to_json(w.old_cost)},
                {"new_cost", rat_to_json(w.new_cost)}};
}

inline Json report_to_json(const EquilibriumReport& r) {
    Json out{{"verdict", verdict_name(r.verdict)}, {"bounds", bounds_to_json(r.bounds_used)}};
    if (r.witness) out["witness"] = witness_to_json(*r.witness);
    return out;
}

inline Json optimum_to_json(const OptimumResult& r) {
    Json out{{"value", rat_to_json(r.value)},
             {"value_decimal", decimal_approx(r.value)},
             {"method", r.method == OptimumMethod::BruteForce ? "brute" : "formula"}};
    if (r.witness) out["witness"] = profile_to_json(*r.witness);
    return out;
}

inline Json claim_to_json(const ConstructionClaim& c) {
    Json params = Json::object();
    for (const auto& [key, value] : c.params) params[key] = value;
    Json variants = Json::array();
    for (const Variant& v : c.claimed_variants) variants.push_back(variant_to_spec(v));
    return Json{{"family", c.family},
                {"params", std::move(params)},
                {"variants", std::move(variants)},
                {"expected_social_cost", rat_to_json(c.expected_social_cost)},
                {"anchor", c.anchor}};
}

inline std::string to_dot(const TemporalGraph& g) {
    std::ostringstream out;
    out << "graph G {\n";
    for (VertexId v = 0; v < g.vertex_count(); ++v) out << "  " << v << ";\n";
    for (const TemporalEdge& e : g.edges())
        out << "  " << e.u << " -- " << e.v << " [label=\"" << e.label << "\"];\n";
    out << "}\n";
    return out.str();
}

}  // namespace tempo_ncg
