#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "tempo_ncg/cli.hpp"
#include "tempo_ncg/constructions.hpp"
#include "tempo_ncg/io.hpp"
#include "testutil.hpp"

using namespace tempo_ncg;
using testutil::make_profile;

namespace {

struct CliResult {
    int code = 0;
    std::string out;
    std::string err;
};

CliResult run_cli(std::vector<std::string> args, const std::string& input = "") {
    std::istringstream in(input);
    std::ostringstream out, err;
    const int code = cli::run(std::move(args), in, out, err);
    return CliResult{code, out.str(), err.str()};
}

StrategyProfile star3() { return make_profile(3, {{}, {{0, 1}}, {{0, 1}}}); }

std::string star_json(ReachMode mode) {
    const Variant v{mode, LabelCostKind::Zero, Penalties{true, false}};
    return profile_to_json(star3(), v).dump();
}

}  // namespace

TEST_CASE("variants round-trip through JSON and spec strings") {
    for (ReachMode reach : {ReachMode::NonStrict, ReachMode::Strict}) {
        for (LabelCostKind kind : {LabelCostKind::Zero, LabelCostKind::Up, LabelCostKind::Down}) {
            for (int mask = 0; mask < 4; ++mask) {
                const Variant v{reach, kind, Penalties{(mask & 1) != 0, (mask & 2) != 0}};
                REQUIRE(variant_from_json(variant_to_json(v)) == v);
                REQUIRE(variant_from_spec(variant_to_spec(v)) == v);
            }
        }
    }
    REQUIRE(variant_to_spec(Variant{}) == "nonstrict,zero,none");
    REQUIRE(variant_to_spec(Variant{ReachMode::Strict, LabelCostKind::Down, Penalties{true, true}}) ==
            "strict,down,positive,proper");
    const Variant bare = variant_from_spec("strict,up");
    REQUIRE(bare.penalties == Penalties{});
}

TEST_CASE("variant spec strings validate their parts") {
    REQUIRE_THROWS_AS(variant_from_spec("strict"), ParseError);
    REQUIRE_THROWS_AS(variant_from_spec("fast,zero"), ParseError);
    REQUIRE_THROWS_AS(variant_from_spec("strict,cheap"), ParseError);
    REQUIRE_THROWS_AS(variant_from_spec("strict,zero,none,positive"), ParseError);
    REQUIRE_THROWS_AS(variant_from_spec("strict,zero,bogus"), ParseError);
}

TEST_CASE("graphs and profiles round-trip byte-identically") {
    SECTION("graph") {
        const TemporalGraph g = testutil::demo_graph();
        const std::string bytes = graph_to_json(g).dump(2);
        const TemporalGraph back = graph_from_json(Json::parse(bytes));
        REQUIRE(back == g);
        REQUIRE(graph_to_json(back).dump(2) == bytes);
    }
    SECTION("profile with an embedded variant") {
        const Variant v{ReachMode::Strict, LabelCostKind::Down, Penalties{true, false}};
        const StrategyProfile p = make_profile(4, {{{1, 1}, {2, 5}}, {}, {{3, -2}}});
        const std::string bytes = profile_to_json(p, v).dump(2);
        auto [back, back_variant] = profile_from_json(Json::parse(bytes));
        REQUIRE(back == p);
        REQUIRE(back_variant.has_value());
        REQUIRE(*back_variant == v);
        REQUIRE(profile_to_json(back, back_variant).dump(2) == bytes);
    }
    SECTION("sparse strategy lists fill in empty strategies") {
        auto [p, v] = profile_from_json(Json::parse(
            R"({"n": 3, "strategies": [{"agent": 2, "buys": [{"to": 0, "label": 4}]}]})"));
        REQUIRE_FALSE(v.has_value());
        REQUIRE(p.strategy(0).empty());
        REQUIRE(p.strategy(1).empty());
        REQUIRE(p.strategy(2).purchases() == std::vector<Purchase>{{0, 4}});
    }
}

TEST_CASE("profile parsing rejects malformed input") {
    REQUIRE_THROWS_AS(profile_from_json(Json::parse(R"({"strategies": []})")), ParseError);
    REQUIRE_THROWS_AS(profile_from_json(Json::parse(R"({"n": 0})")), ParseError);
    REQUIRE_THROWS_AS(
        profile_from_json(Json::parse(
            R"({"n": 2, "strategies": [{"agent": 0, "buys": []}, {"agent": 0, "buys": []}]})")),
        ParseError);
    REQUIRE_THROWS_AS(
        profile_from_json(Json::parse(R"({"n": 2, "strategies": [{"agent": 5, "buys": []}]})")),
        ParseError);
    REQUIRE_THROWS_AS(
        profile_from_json(Json::parse(R"({"n": 2, "strategies": [{"agent": 0}]})")), ParseError);
    REQUIRE_THROWS_AS(
        profile_from_json(Json::parse(
            R"({"n": 2, "strategies": [{"agent": 0, "buys": [{"to": 0, "label": 1}]}]})")),
        std::invalid_argument);
    REQUIRE_THROWS_AS(graph_from_json(Json::parse(R"({"n": 2})")), ParseError);
}

TEST_CASE("rationals serialize as exact fractions") {
    REQUIRE(to_string(Rat(12)) == "12/1");
    REQUIRE(to_string(Rat(3, 2)) == "3/2");
    REQUIRE(to_string(Rat(0)) == "0/1");
    REQUIRE(rat_from_string("3/2") == Rat(3, 2));
    REQUIRE(rat_from_string("7") == Rat(7));
    REQUIRE(rat_from_string("-5/10") == Rat(-1, 2));
    REQUIRE_THROWS(rat_from_string("seven"));
    REQUIRE(decimal_approx(Rat(3, 2)) == "1.5");
    REQUIRE(decimal_approx(Rat(1, 3)) == "0.333333");
    REQUIRE(decimal_approx(Rat(25)) == "25");
}

TEST_CASE("cost breakdowns and reports serialize every field") {
    const Variant v{ReachMode::NonStrict, LabelCostKind::Zero, Penalties{true, false}};
    const StrategyProfile p = star3();
    const CostBreakdown c = agent_cost(v, p, 1, KPolicy::for_agents(3));
    const Json j = cost_to_json(c);
    REQUIRE(j["edges"] == 1);
    REQUIRE(j["label_cost"] == "0/1");
    REQUIRE(j["penalty"] == "0/1");
    REQUIRE(j["unreached"] == 0);
    REQUIRE(j["total"] == "1/1");
    REQUIRE(j["total_decimal"] == "1");

    const EquilibriumReport rep = is_nash(v, p, SearchBounds::defaults_for(p), KPolicy::for_agents(3));
    const Json rj = report_to_json(rep);
    REQUIRE(rj["verdict"] == "nash-certified");
    REQUIRE_FALSE(rj.contains("witness"));
    REQUIRE(rj["bounds"]["max_edges"] == 1);

    const OptimumResult opt = social_optimum(v, 3, OptimumMethod::FormulaOracle);
    const Json oj = optimum_to_json(opt);
    REQUIRE(oj["value"] == "2/1");
    REQUIRE(oj["method"] == "formula");

    const Json cj = claim_to_json(clique_ne(3, 1));
    REQUIRE(cj["family"] == "clique");
    REQUIRE(cj["params"]["n"] == 3);
    REQUIRE(cj["variants"][0] == "strict,zero,positive");
    REQUIRE(cj["expected_social_cost"] == "3/1");
}

TEST_CASE("graphs export as DOT") {
    const TemporalGraph g(3, {TemporalEdge{0, 1, 3}});
    REQUIRE(to_dot(g) ==
            "graph G {\n"
            "  0;\n"
            "  1;\n"
            "  2;\n"
            "  0 -- 1 [label=\"3\"];\n"
            "}\n");
}

TEST_CASE("construct output feeds straight into the verifier") {
    const CliResult made = run_cli({"construct", "grid", "--k", "3"});
    REQUIRE(made.code == 0);
    const Json j = Json::parse(made.out);
    REQUIRE(j["claim"]["family"] == "grid");
    REQUIRE(j["profile"]["n"] == 9);
    REQUIRE(j["profile"]["variant"]["reach"] == "nonstrict");

    const CliResult verified = run_cli({"verify-ne"}, made.out);
    REQUIRE(verified.code == 0);
    REQUIRE(Json::parse(verified.out)["verdict"] == "nash-certified");
}

TEST_CASE("verify-ne exits one on a deviation") {
    const CliResult res = run_cli({"verify-ne"}, star_json(ReachMode::Strict));
    REQUIRE(res.code == 1);
    const Json j = Json::parse(res.out);
    REQUIRE(j["verdict"] == "deviation-found");
    REQUIRE(j.contains("witness"));
}

TEST_CASE("bad input and bad flags exit two") {
    REQUIRE(run_cli({"verify-ne"}, "{nope").code == 2);
    REQUIRE(run_cli({"frobnicate"}).code == 2);
    REQUIRE(run_cli({}).code == 2);
    REQUIRE(run_cli({"construct", "moebius"}).code == 2);
    REQUIRE(run_cli({"verify-ne", "--variant", "strict,zero,none"}, R"({"n": 1})").code == 0);
    REQUIRE(run_cli({"verify-ne", "--variant", "sideways,zero"}, star_json(ReachMode::NonStrict)).code == 2);
    REQUIRE(run_cli({"scan", "--variant", "nonstrict,zero,positive", "--n", "2", "--window-lo", "1"}).code == 2);
    REQUIRE(run_cli({"ratio", "--opt", "eight"}, star_json(ReachMode::NonStrict)).code == 2);

    const std::string two_buys =
        profile_to_json(make_profile(3, {{{1, 1}, {2, 1}}}),
                        Variant{ReachMode::NonStrict, LabelCostKind::Zero, Penalties{true, false}})
            .dump();
    REQUIRE(run_cli({"verify-ne", "--max-edges", "1"}, two_buys).code == 2);
}

TEST_CASE("guard violations exit three") {
    REQUIRE(run_cli({"optimum", "--variant", "nonstrict,zero,none", "--n", "6", "--method", "brute"}).code == 3);
    REQUIRE(run_cli({"scan", "--variant", "nonstrict,zero,positive", "--n", "5"}).code == 3);
}

TEST_CASE("an exhausted budget exits four") {
    setenv("TEMPO_NCG_HARD_LIMIT", "1", 1);
    const CliResult res = run_cli({"verify-ne"}, star_json(ReachMode::NonStrict));
    REQUIRE(res.code == 4);
    REQUIRE(Json::parse(res.out)["verdict"] == "budget-exceeded");
    REQUIRE(run_cli({"best-response", "--agent", "0"}, star_json(ReachMode::NonStrict)).code == 4);

    setenv("TEMPO_NCG_HARD_LIMIT", "banana", 1);
    REQUIRE(run_cli({"verify-ne"}, star_json(ReachMode::NonStrict)).code == 2);
    unsetenv("TEMPO_NCG_HARD_LIMIT");
    REQUIRE(run_cli({"verify-ne"}, star_json(ReachMode::NonStrict)).code == 0);
}

TEST_CASE("cost reports per-agent breakdowns and the social total") {
    const CliResult res = run_cli({"cost"}, star_json(ReachMode::NonStrict));
    REQUIRE(res.code == 0);
    const Json j = Json::parse(res.out);
    REQUIRE(j["agents"].size() == 3);
    REQUIRE(j["agents"][0]["agent"] == 0);
    REQUIRE(j["agents"][0]["total"] == "0/1");
    REQUIRE(j["agents"][1]["total"] == "1/1");
    REQUIRE(j["social"] == "2/1");
    REQUIRE(j["k"] == "16/1");
}

TEST_CASE("reach reports sets and connectivity") {
    const std::string graph = graph_to_json(testutil::demo_graph()).dump();

    const CliResult all = run_cli({"reach", "--variant", "strict,zero,none"}, graph);
    REQUIRE(all.code == 0);
    const Json ja = Json::parse(all.out);
    REQUIRE(ja["mode"] == "strict");
    REQUIRE(ja["sets"].size() == 4);
    REQUIRE(ja["connected"].is_boolean());

    const CliResult one =
        run_cli({"reach", "--variant", "strict,zero,none", "--from", "0", "--t", "5"}, graph);
    REQUIRE(one.code == 0);
    const Json jo = Json::parse(one.out);
    REQUIRE(jo["sets"].size() == 1);
    REQUIRE(jo["sets"][0]["reached"] == Json::array({0, 1}));
    REQUIRE_FALSE(jo.contains("connected"));

    REQUIRE(run_cli({"reach"}, graph).code == 2);  // a bare graph carries no variant
}

TEST_CASE("best-response reports the chosen move") {
    const std::string profile =
        profile_to_json(make_profile(4, {{}, {{2, 1}}, {{3, 1}}}),
                        Variant{ReachMode::NonStrict, LabelCostKind::Zero, Penalties{true, false}})
            .dump();
    const CliResult res = run_cli({"best-response", "--agent", "0"}, profile);
    REQUIRE(res.code == 0);
    const Json j = Json::parse(res.out);
    REQUIRE(j["changed"] == true);
    REQUIRE(j["buys"] == Json::array({Json{{"to", 1}, {"label", 1}}}));
    REQUIRE(j["cost"]["total"] == "1/1");
}

TEST_CASE("dynamics reports convergence and honors seeds") {
    const CliResult fixed = run_cli({"dynamics"}, star_json(ReachMode::NonStrict));
    REQUIRE(fixed.code == 0);
    const Json jf = Json::parse(fixed.out);
    REQUIRE(jf["kind"] == "converged");
    REQUIRE(jf["rounds"] == 1);

    REQUIRE(run_cli({"dynamics", "--random", "--n", "3", "--variant", "nonstrict,zero,positive"}).code == 2);

    const std::vector<std::string> seeded = {"dynamics", "--random", "--seed", "11", "--n", "3",
                                             "--variant", "nonstrict,zero,positive"};
    const CliResult a = run_cli(seeded);
    const CliResult b = run_cli(seeded);
    REQUIRE(a.code == b.code);
    REQUIRE(a.out == b.out);
    REQUIRE(Json::parse(a.out).contains("kind"));
}

TEST_CASE("optimum prints exact values") {
    const CliResult brute =
        run_cli({"optimum", "--variant", "strict,zero,none", "--n", "4", "--method", "brute"});
    REQUIRE(brute.code == 0);
    const Json jb = Json::parse(brute.out);
    REQUIRE(jb["value"] == "4/1");
    REQUIRE(jb["method"] == "brute");
    REQUIRE(jb.contains("witness"));

    const CliResult formula =
        run_cli({"optimum", "--variant", "strict,zero,none", "--n", "8", "--method", "formula"});
    REQUIRE(formula.code == 0);
    REQUIRE(Json::parse(formula.out)["value"] == "12/1");
}

TEST_CASE("scan streams one equilibrium per line") {
    const CliResult res = run_cli({"scan", "--variant", "nonstrict,zero,positive", "--n", "2",
                                   "--window-lo", "1", "--window-hi", "2"});
    REQUIRE(res.code == 0);
    std::istringstream lines(res.out);
    std::string line;
    std::vector<Json> rows;
    while (std::getline(lines, line))
        if (!line.empty()) rows.push_back(Json::parse(line));
    REQUIRE(rows.size() == 5);
    for (std::size_t i = 0; i + 1 < rows.size(); ++i) {
        REQUIRE(rows[i]["n"] == 2);
        REQUIRE(rows[i]["variant"]["reach"] == "nonstrict");
    }
    REQUIRE(rows.back()["count"] == 4);
}

TEST_CASE("ratio prints the exact fraction with its approximation") {
    const CliResult made = run_cli({"construct", "grid", "--k", "3"});
    const CliResult res = run_cli({"ratio", "--opt", "8"}, made.out);
    REQUIRE(res.code == 0);
    REQUIRE(res.out == "3/2 (1.5)\n");
}

TEST_CASE("export-dot renders the realized graph") {
    const std::string profile = profile_to_json(make_profile(3, {{{1, 3}}})).dump();
    const CliResult res = run_cli({"export-dot"}, profile);
    REQUIRE(res.code == 0);
    REQUIRE(res.out ==
            "graph G {\n"
            "  0;\n"
            "  1;\n"
            "  2;\n"
            "  0 -- 1 [label=\"3\"];\n"
            "}\n");
}

TEST_CASE("sweep tabulates family ratios as CSV") {
    const CliResult res = run_cli({"sweep", "--family", "clique", "--from", "3", "--to", "4"});
    REQUIRE(res.code == 0);
    std::istringstream lines(res.out);
    std::string header, row3, row4;
    REQUIRE(std::getline(lines, header));
    REQUIRE(std::getline(lines, row3));
    REQUIRE(std::getline(lines, row4));
    REQUIRE(header == "family,param_name,param,n,social_cost,optimum,ratio,ratio_decimal");
    REQUIRE(row3 == "clique,n,3,3,3/1,3/1,1/1,1");
    REQUIRE(row4 == "clique,n,4,4,6/1,4/1,3/2,1.5");
}

TEST_CASE("outputs can be written to files") {
    const std::string path = "/tmp/tempo_ncg_cli_out_test.json";
    const CliResult res = run_cli({"construct", "star", "--n", "4", "--out", path});
    REQUIRE(res.code == 0);
    REQUIRE(res.out.empty());
    std::ifstream f(path);
    REQUIRE(f.good());
    Json j;
    f >> j;
    REQUIRE(j["claim"]["family"] == "star");
    std::remove(path.c_str());
}
