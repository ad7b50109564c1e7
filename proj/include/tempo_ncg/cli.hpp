#pragma once

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"

#include "tempo_ncg/constructions.hpp"
#include "tempo_ncg/equilibrium.hpp"
#include "tempo_ncg/game.hpp"
#include "tempo_ncg/io.hpp"
#include "tempo_ncg/rational.hpp"
#include "tempo_ncg/temporal_graph.hpp"

// Command line front end. Everything routes through run() on caller-supplied
// streams so the whole surface is testable in-process.
//
// Exit codes: 0 success (verify-ne: equilibrium certified), 1 deviation
// found, 2 bad input (malformed JSON, bad flags, bad arguments), 3 guard
// violation, 4 search budget exceeded.

namespace tempo_ncg::cli {

namespace detail {

inline Json read_json(const std::string& path, std::istream& in) {
    try {
        if (path.empty() || path == "-") return Json::parse(in);
        std::ifstream f(path);
        if (!f) throw ParseError("cannot open " + path);
        return Json::parse(f);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("malformed JSON: ") + e.what());
    }
}

struct ProfileInput {
    StrategyProfile profile;
    std::optional<Variant> variant;
};

// Accepts either a bare profile object or the {"profile": ..., "claim": ...}
// wrapper that `construct` emits.
inline ProfileInput load_profile(const Json& j) {
    const Json& p = j.is_object() && j.contains("profile") ? j["profile"] : j;
    auto [profile, variant] = profile_from_json(p);
    return ProfileInput{std::move(profile), variant};
}

inline Variant resolve_variant(const std::string& flag, const std::optional<Variant>& embedded) {
    if (!flag.empty()) return variant_from_spec(flag);
    if (embedded) return *embedded;
    throw ParseError("no variant: pass --variant or embed one in the profile JSON");
}

inline void write_text(const std::string& path, std::ostream& out, const std::string& text) {
    if (path.empty() || path == "-") {
        out << text;
        return;
    }
    std::ofstream f(path);
    if (!f) throw ParseError("cannot open " + path + " for writing");
    f << text;
}

inline long long env_hard_limit() {
    const char* s = std::getenv("TEMPO_NCG_HARD_LIMIT");
    if (!s) return kDefaultHardNodeLimit;
    try {
        const long long v = std::stoll(s);
        if (v >= 1) return v;
    } catch (const std::exception&) {
    }
    throw ParseError("TEMPO_NCG_HARD_LIMIT must be a positive integer");
}

// Flag value 0 means "not given"; unset flags fall back to bounds wide
// enough for the incumbent profile.
inline SearchBounds make_bounds(int max_edges_flag, int pad_flag, const StrategyProfile& profile) {
    SearchBounds b = SearchBounds::defaults_for(profile);
    if (max_edges_flag > 0) b.max_edges = max_edges_flag;
    if (pad_flag > 0)
        b.label_window_pad = pad_flag;
    else
        b.label_window_pad = std::max(b.label_window_pad, b.max_edges);
    b.hard_node_limit = env_hard_limit();
    b.validate();
    return b;
}

// Seed-deterministic initial profile for dynamics: up to two purchases per
// agent, distinct targets, labels in [1, 3]. Uses plain modulo so the same
// seed reproduces the same profile everywhere.
inline StrategyProfile random_profile(VertexId n, std::uint64_t seed) {
    std::mt19937_64 gen(seed);
    std::vector<std::vector<Purchase>> buys(static_cast<std::size_t>(n));
    for (VertexId u = 0; u < n; ++u) {
        std::vector<VertexId> targets;
        for (VertexId w = 0; w < n; ++w)
            if (w != u) targets.push_back(w);
        for (std::size_t i = targets.size(); i > 1; --i)
            std::swap(targets[i - 1], targets[gen() % i]);
        const std::size_t count = targets.empty() ? 0 : gen() % std::min<std::size_t>(3, targets.size() + 1);
        for (std::size_t i = 0; i < count; ++i)
            buys[static_cast<std::size_t>(u)].push_back(
                Purchase{targets[i], static_cast<Label>(1 + gen() % 3)});
    }
    std::vector<Strategy> strategies;
    strategies.reserve(buys.size());
    for (auto& b : buys) strategies.emplace_back(std::move(b));
    return StrategyProfile(n, std::move(strategies));
}

inline ConstructionClaim build_family(const std::string& family, int n, int k, int d, Label label) {
    if (family == "star") return star_tree(static_cast<VertexId>(n), label);
    if (family == "grid") return grid_ne(k);
    if (family == "ring") return outer_ring_ne(static_cast<VertexId>(n));
    if (family == "clique") return clique_ne(static_cast<VertexId>(n), label);
    if (family == "hypercube") return hypercube_ne(d);
    if (family == "arbitrary-low") return arbitrary_low_ne(static_cast<VertexId>(n));
    throw ParseError("unknown family \"" + family +
                     "\" (star, grid, ring, clique, hypercube, arbitrary-low)");
}

// The size parameter a sweep varies: n for vertex-count families, k for the
// grid, d for the hypercube.
inline std::string family_param_name(const std::string& family) {
    if (family == "grid") return "k";
    if (family == "hypercube") return "d";
    return "n";
}

inline ConstructionClaim build_family_at(const std::string& family, long long p) {
    const int v = static_cast<int>(p);
    return build_family(family, v, v, v, 1);
}

}  // namespace detail

inline int run(std::vector<std::string> args, std::istream& in, std::ostream& out,
               std::ostream& err) {
    CLI::App app{"laboratory for temporal network creation games"};
    app.name("tempo-ncg");
    app.require_subcommand(1);

    std::string in_path, out_path, variant_flag, opt_flag, method_flag = "brute";
    std::string family;
    int n_flag = 0, k_flag = 0, d_flag = 0, agent_flag = -1;
    Label label_flag = 1;
    int max_edges_flag = 0, pad_flag = 0, max_rounds = 100;
    long long t_flag = 0, window_lo = 0, window_hi = 0, from_flag = 0, to_flag = 0;
    int source_flag = -1;
    std::uint64_t seed_flag = 0;
    bool random_init = false;

    auto add_profile_flag = [&](CLI::App* cmd) {
        cmd->add_option("--profile", in_path, "profile JSON file (default: stdin)");
    };
    auto add_variant_flag = [&](CLI::App* cmd) {
        cmd->add_option("--variant", variant_flag,
                        "game variant: <reach>,<labelcost>[,positive][,proper] or ...,none");
    };
    auto add_bounds_flags = [&](CLI::App* cmd) {
        cmd->add_option("--max-edges", max_edges_flag, "deviation size cap (default: incumbent max)");
        cmd->add_option("--pad", pad_flag, "label window pad (default: max-edges)");
    };
    auto add_out_flag = [&](CLI::App* cmd) {
        cmd->add_option("--out", out_path, "output file (default: stdout)");
    };

    CLI::App* c_construct = app.add_subcommand("construct", "emit a named profile and its claim");
    c_construct->add_option("family", family, "star | grid | ring | clique | hypercube | arbitrary-low")
        ->required();
    c_construct->add_option("--n", n_flag, "vertex count (star, ring, clique, arbitrary-low)");
    c_construct->add_option("--k", k_flag, "grid block count");
    c_construct->add_option("--d", d_flag, "hypercube dimension");
    c_construct->add_option("--label", label_flag, "edge label (star, clique; default 1)");
    add_out_flag(c_construct);

    CLI::App* c_verify = app.add_subcommand("verify-ne", "verify a profile as a Nash equilibrium");
    add_profile_flag(c_verify);
    add_variant_flag(c_verify);
    add_bounds_flags(c_verify);
    add_out_flag(c_verify);

    CLI::App* c_cost = app.add_subcommand("cost", "per-agent and social cost of a profile");
    add_profile_flag(c_cost);
    add_variant_flag(c_cost);
    add_out_flag(c_cost);

    CLI::App* c_reach = app.add_subcommand("reach", "reachable sets of a graph or realized profile");
    add_profile_flag(c_reach);
    add_variant_flag(c_reach);
    CLI::Option* o_from_vertex = c_reach->add_option("--from", source_flag, "restrict to one source vertex");
    CLI::Option* o_t = c_reach->add_option("--t", t_flag, "require the first edge label to be >= t");
    add_out_flag(c_reach);

    CLI::App* c_br = app.add_subcommand("best-response", "exact bounded best response of one agent");
    add_profile_flag(c_br);
    add_variant_flag(c_br);
    c_br->add_option("--agent", agent_flag, "deviating agent")->required();
    add_bounds_flags(c_br);
    add_out_flag(c_br);

    CLI::App* c_dyn = app.add_subcommand("dynamics", "round-robin best-response dynamics");
    add_profile_flag(c_dyn);
    add_variant_flag(c_dyn);
    add_bounds_flags(c_dyn);
    c_dyn->add_option("--max-rounds", max_rounds, "round cap (default 100)");
    CLI::Option* o_random = c_dyn->add_flag("--random", random_init, "start from a seeded random profile");
    CLI::Option* o_seed = c_dyn->add_option("--seed", seed_flag, "seed for --random");
    c_dyn->add_option("--n", n_flag, "vertex count for --random");
    o_random->needs(o_seed);
    add_out_flag(c_dyn);

    CLI::App* c_opt = app.add_subcommand("optimum", "minimum social cost over all profiles");
    add_variant_flag(c_opt);
    c_opt->add_option("--n", n_flag, "vertex count")->required();
    c_opt->add_option("--method", method_flag, "brute | formula (default brute)");
    add_out_flag(c_opt);

    CLI::App* c_scan = app.add_subcommand("scan", "every Nash equilibrium at small size, one JSON per line");
    add_variant_flag(c_scan);
    c_scan->add_option("--n", n_flag, "vertex count")->required();
    add_bounds_flags(c_scan);
    CLI::Option* o_wlo = c_scan->add_option("--window-lo", window_lo, "scan label window low end");
    CLI::Option* o_whi = c_scan->add_option("--window-hi", window_hi, "scan label window high end");
    o_wlo->needs(o_whi);
    o_whi->needs(o_wlo);
    add_out_flag(c_scan);

    CLI::App* c_ratio = app.add_subcommand("ratio", "social cost of a profile over the optimum");
    add_profile_flag(c_ratio);
    add_variant_flag(c_ratio);
    c_ratio->add_option("--opt", opt_flag, "optimum as p/q (default: computed)");
    c_ratio->add_option("--method", method_flag, "brute | formula when computing the optimum");
    add_out_flag(c_ratio);

    CLI::App* c_dot = app.add_subcommand("export-dot", "realized graph as Graphviz DOT");
    add_profile_flag(c_dot);
    add_out_flag(c_dot);

    CLI::App* c_sweep = app.add_subcommand("sweep", "ratio table of a family over a size range, as CSV");
    c_sweep->add_option("--family", family, "star | grid | ring | clique | hypercube | arbitrary-low")
        ->required();
    c_sweep->add_option("--from", from_flag, "first size")->required();
    c_sweep->add_option("--to", to_flag, "last size")->required();
    add_out_flag(c_sweep);

    std::reverse(args.begin(), args.end());
    try {
        app.parse(args);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*c_construct) {
            const ConstructionClaim claim =
                detail::build_family(family, n_flag, k_flag, d_flag, label_flag);
            std::optional<Variant> v;
            if (!claim.claimed_variants.empty()) v = claim.claimed_variants.front();
            Json j{{"profile", profile_to_json(claim.profile, v)}, {"claim", claim_to_json(claim)}};
            detail::write_text(out_path, out, j.dump(2) + "\n");
            return 0;
        }

        if (*c_verify) {
            detail::ProfileInput pi = detail::load_profile(detail::read_json(in_path, in));
            const Variant variant = detail::resolve_variant(variant_flag, pi.variant);
            const SearchBounds bounds = detail::make_bounds(max_edges_flag, pad_flag, pi.profile);
            const EquilibriumReport report =
                is_nash(variant, pi.profile, bounds, KPolicy::for_agents(pi.profile.n()));
            detail::write_text(out_path, out, report_to_json(report).dump(2) + "\n");
            if (report.verdict == Verdict::NashCertified) return 0;
            if (report.verdict == Verdict::DeviationFound) return 1;
            return 4;
        }

        if (*c_cost) {
            detail::ProfileInput pi = detail::load_profile(detail::read_json(in_path, in));
            const Variant variant = detail::resolve_variant(variant_flag, pi.variant);
            const KPolicy kp = KPolicy::for_agents(pi.profile.n());
            const TemporalGraph g = realize(pi.profile);
            Json agents = Json::array();
            Rat social(0);
            for (VertexId u = 0; u < pi.profile.n(); ++u) {
                const CostBreakdown c = agent_cost(variant, pi.profile, u, kp, g);
                social += c.total;
                Json entry{{"agent", u}};
                const Json fields = cost_to_json(c);  // keep alive across the items() proxy
                for (const auto& [key, value] : fields.items()) entry[key] = value;
                agents.push_back(std::move(entry));
            }
            Json j{{"variant", variant_to_json(variant)},
                   {"k", rat_to_json(kp.k)},
                   {"agents", std::move(agents)},
                   {"social", rat_to_json(social)},
                   {"social_decimal", decimal_approx(social)}};
            detail::write_text(out_path, out, j.dump(2) + "\n");
            return 0;
        }

        if (*c_reach) {
            const Json j = detail::read_json(in_path, in);
            std::optional<Variant> embedded;
            std::optional<TemporalGraph> g;
            if (j.is_object() && (j.contains("strategies") || j.contains("profile"))) {
                detail::ProfileInput pi = detail::load_profile(j);
                embedded = pi.variant;
                g = realize(pi.profile);
            } else {
                g = graph_from_json(j);
            }
            const Variant variant = detail::resolve_variant(variant_flag, embedded);
            const ReachMode mode = variant.reach;

            Json sets = Json::array();
            bool connected = true;
            const VertexId lo = source_flag >= 0 ? static_cast<VertexId>(source_flag) : 0;
            const VertexId hi = source_flag >= 0 ? static_cast<VertexId>(source_flag) : g->vertex_count() - 1;
            for (VertexId v = lo; v <= hi; ++v) {
                const std::vector<VertexId> reached =
                    o_t->count() ? reachable_from_time(*g, v, t_flag, mode)
                                 : reachable_set(*g, v, mode);
                if (static_cast<VertexId>(reached.size()) != g->vertex_count()) connected = false;
                sets.push_back(Json{{"vertex", v}, {"reached", reached}});
            }
            Json res{{"mode", reach_name(mode)}, {"n", g->vertex_count()}};
            if (o_t->count()) res["t"] = t_flag;
            res["sets"] = std::move(sets);
            if (!o_from_vertex->count()) res["connected"] = connected;
            detail::write_text(out_path, out, res.dump(2) + "\n");
            return 0;
        }

        if (*c_br) {
            detail::ProfileInput pi = detail::load_profile(detail::read_json(in_path, in));
            const Variant variant = detail::resolve_variant(variant_flag, pi.variant);
            pi.profile.require_agent(static_cast<VertexId>(agent_flag));
            const SearchBounds bounds = detail::make_bounds(max_edges_flag, pad_flag, pi.profile);
            const BestResponseResult br = best_response(variant, pi.profile, static_cast<VertexId>(agent_flag),
                                                        bounds, KPolicy::for_agents(pi.profile.n()));
            Json buys = Json::array();
            for (const Purchase& b : br.strategy.purchases())
                buys.push_back(Json{{"to", b.to}, {"label", b.label}});
            Json j{{"agent", agent_flag},
                   {"buys", std::move(buys)},
                   {"changed", !(br.strategy == pi.profile.strategy(static_cast<VertexId>(agent_flag)))},
                   {"cost", cost_to_json(br.cost)},
                   {"budget_exceeded", br.budget_exceeded}};
            detail::write_text(out_path, out, j.dump(2) + "\n");
            return br.budget_exceeded ? 4 : 0;
        }

        if (*c_dyn) {
            std::optional<detail::ProfileInput> pi;
            if (random_init) {
                if (n_flag < 1) throw ParseError("--random needs --n");
                pi = detail::ProfileInput{detail::random_profile(static_cast<VertexId>(n_flag), seed_flag),
                                          std::nullopt};
            } else {
                pi = detail::load_profile(detail::read_json(in_path, in));
            }
            const Variant variant = detail::resolve_variant(variant_flag, pi->variant);
            const SearchBounds bounds = detail::make_bounds(max_edges_flag, pad_flag, pi->profile);
            const DynamicsResult res = best_response_dynamics(variant, pi->profile, max_rounds, bounds,
                                                              KPolicy::for_agents(pi->profile.n()));
            Json j;
            switch (res.kind) {
                case DynamicsResult::Kind::Converged:
                    j = Json{{"kind", "converged"}, {"rounds", res.rounds},
                             {"profile", profile_to_json(*res.profile, variant)}};
                    break;
                case DynamicsResult::Kind::Cycle:
                    j = Json{{"kind", "cycle"}, {"period", res.period}};
                    break;
                case DynamicsResult::Kind::Budget:
                    j = Json{{"kind", "budget"}};
                    break;
            }
            detail::write_text(out_path, out, j.dump(2) + "\n");
            return res.kind == DynamicsResult::Kind::Budget ? 4 : 0;
        }

        if (*c_opt) {
            if (variant_flag.empty()) throw ParseError("optimum needs --variant");
            const Variant variant = variant_from_spec(variant_flag);
            OptimumMethod method;
            if (method_flag == "brute") method = OptimumMethod::BruteForce;
            else if (method_flag == "formula") method = OptimumMethod::FormulaOracle;
            else throw ParseError("--method must be \"brute\" or \"formula\"");
            const OptimumResult res = social_optimum(variant, static_cast<VertexId>(n_flag), method);
            detail::write_text(out_path, out, optimum_to_json(res).dump(2) + "\n");
            return 0;
        }

        if (*c_scan) {
            if (variant_flag.empty()) throw ParseError("scan needs --variant");
            const Variant variant = variant_from_spec(variant_flag);
            SearchBounds bounds;
            if (max_edges_flag > 0) bounds.max_edges = max_edges_flag;
            if (pad_flag > 0) bounds.label_window_pad = pad_flag;
            bounds.label_window_pad = std::max(bounds.label_window_pad, bounds.max_edges);
            bounds.hard_node_limit = detail::env_hard_limit();
            std::optional<std::pair<Label, Label>> window;
            if (o_wlo->count()) window = std::make_pair(window_lo, window_hi);
            const std::vector<StrategyProfile> found = exhaustive_ne_scan(
                variant, static_cast<VertexId>(n_flag), bounds, KPolicy::for_agents(static_cast<VertexId>(n_flag)),
                window);
            std::ostringstream lines;
            for (const StrategyProfile& p : found) lines << profile_to_json(p, variant).dump() << "\n";
            lines << Json{{"count", found.size()}}.dump() << "\n";
            detail::write_text(out_path, out, lines.str());
            return 0;
        }

        if (*c_ratio) {
            detail::ProfileInput pi = detail::load_profile(detail::read_json(in_path, in));
            const Variant variant = detail::resolve_variant(variant_flag, pi.variant);
            const KPolicy kp = KPolicy::for_agents(pi.profile.n());
            OptimumResult opt;
            if (!opt_flag.empty()) {
                opt.value = rat_from_string(opt_flag);
                opt.method = OptimumMethod::FormulaOracle;
            } else {
                OptimumMethod method;
                if (method_flag == "brute") method = OptimumMethod::BruteForce;
                else if (method_flag == "formula") method = OptimumMethod::FormulaOracle;
                else throw ParseError("--method must be \"brute\" or \"formula\"");
                opt = social_optimum(variant, pi.profile.n(), method, kp);
            }
            const Rat ratio = price_ratio(variant, pi.profile, opt, kp);
            detail::write_text(out_path, out, to_string(ratio) + " (" + decimal_approx(ratio) + ")\n");
            return 0;
        }

        if (*c_dot) {
            const Json j = detail::read_json(in_path, in);
            TemporalGraph g = j.is_object() && (j.contains("strategies") || j.contains("profile"))
                                  ? realize(detail::load_profile(j).profile)
                                  : graph_from_json(j);
            detail::write_text(out_path, out, to_dot(g));
            return 0;
        }

        if (*c_sweep) {
            if (to_flag < from_flag) throw ParseError("--to must be at least --from");
            std::ostringstream csv;
            csv << "family,param_name,param,n,social_cost,optimum,ratio,ratio_decimal\n";
            const std::string param_name = detail::family_param_name(family);
            for (long long p = from_flag; p <= to_flag; ++p) {
                const ConstructionClaim claim = detail::build_family_at(family, p);
                const Variant variant = claim.claimed_variants.empty()
                                            ? Variant{ReachMode::NonStrict, LabelCostKind::Zero, Penalties{}}
                                            : claim.claimed_variants.front();
                const VertexId n = claim.profile.n();
                const KPolicy kp = KPolicy::for_agents(n);
                const Rat social = social_cost(variant, claim.profile, kp);
                const OptimumResult opt = social_optimum(variant, n, OptimumMethod::FormulaOracle, kp);
                csv << claim.family << ',' << param_name << ',' << p << ',' << n << ','
                    << to_string(social) << ',' << to_string(opt.value) << ',';
                if (opt.value > Rat(0)) {
                    const Rat ratio = social / opt.value;
                    csv << to_string(ratio) << ',' << decimal_approx(ratio);
                } else {
                    csv << ',';
                }
                csv << '\n';
            }
            detail::write_text(out_path, out, csv.str());
            return 0;
        }
    } catch (const ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const GuardError& e) {
        err << "error: " << e.what() << "\n";
        return 3;
    } catch (const nlohmann::json::exception& e) {
        err << "error: malformed JSON: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::out_of_range& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}

inline int run_main(int argc, char** argv) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return run(std::move(args), std::cin, std::cout, std::cerr);
}

}  // namespace tempo_ncg::cli
