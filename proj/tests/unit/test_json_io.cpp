#include <doctest.h>

#include "core/json_io.hpp"
#include "fixtures.hpp"
#include "test_util.hpp"

using namespace gu;
using nlohmann::json;

TEST_CASE("parse_json_text rejects malformed input") {
    CHECK_CODE(parse_json_text("{\"pos\": ["), "E_PARSE");
    CHECK_CODE(parse_json_text(""), "E_PARSE");
    CHECK(parse_json_text("[1, 2]").is_array());
}

TEST_CASE("graph JSON round-trips structurally") {
    for (const char* name : {"theta2.json", "theta3.json", "c4.json",
                             "square2.json", "p4.json", "k33.json"}) {
        CAPTURE(name);
        const auto original = fixtures::load_json(name);
        const auto g = parse_graph_json(original);
        const auto emitted = graph_to_json(g);
        CHECK(emitted["pos"] == original["pos"]);
        CHECK(emitted["neg"] == original["neg"]);
        CHECK(emitted["edges"] == original["edges"]);
        // Emitted graphs re-parse to the same graph.
        const auto g2 = parse_graph_json(emitted);
        CHECK(g2.pos == g.pos);
        CHECK(g2.neg == g.neg);
        CHECK(g2.edges == g.edges);
    }
}

TEST_CASE("graph parser is strict about keys and shapes") {
    auto j = fixtures::load_json("theta2.json");
    j["color"] = "blue";
    CHECK_CODE(parse_graph_json(j), "E_PARSE");

    CHECK_CODE(parse_graph_json(json::parse(R"({"pos": ["p"], "neg": ["n"]})")),
               "E_PARSE");
    CHECK_CODE(parse_graph_json(json::parse(
                   R"({"pos": ["p"], "neg": ["n"], "edges": [["n"]]})")),
               "E_PARSE");
    CHECK_CODE(parse_graph_json(json::parse(
                   R"({"pos": ["p"], "neg": ["n"], "edges": [["n", 1]]})")),
               "E_PARSE");
    CHECK_CODE(parse_graph_json(json::parse("[]")), "E_PARSE");
}

TEST_CASE("complex JSON round-trips byte-for-byte on the corpus") {
    for (const char* name : {"unlink2.json", "theta1_neg2.json",
                             "theta3_one.json"}) {
        CAPTURE(name);
        const auto original = fixtures::load_json(name);
        const auto c = parse_complex_json(original);
        CHECK(complex_to_json(c) == original);
        CHECK(complex_to_json(c).dump() == original.dump());
    }
}

TEST_CASE("complex parser rejects schema violations") {
    const auto base = fixtures::load_json("theta1_neg2.json");

    auto j = base;
    j["extra"] = 1;
    CHECK_CODE(parse_complex_json(j), "E_PARSE");

    j = base;
    j["generators"][0]["flavor"] = "sweet";
    CHECK_CODE(parse_complex_json(j), "E_PARSE");

    j = base;
    j["generators"][1]["id"] = "f";  // duplicate id
    CHECK_CODE(parse_complex_json(j), "E_PARSE");

    j = base;
    j["arrows"][0]["from"] = "ghost";
    CHECK_CODE(parse_complex_json(j), "E_PARSE");

    j = base;
    j["arrows"][0]["exp"] = {1, 2};  // wrong length for a one-edge graph
    CHECK_CODE(parse_complex_json(j), "E_PARSE");

    j = base;
    j["arrows"][0]["exp"] = {-1};
    CHECK_CODE(parse_complex_json(j), "E_PARSE");

    j = base;
    j["arrows"][0]["exp"] = {"1"};
    CHECK_CODE(parse_complex_json(j), "E_PARSE");

    j = base;
    j["generators"][0]["gr"] = json::array();
    CHECK_CODE(parse_complex_json(j), "E_PARSE");

    j = base;
    j["generators"][0]["gr"]["1"] = "1.5";
    CHECK_CODE(parse_complex_json(j), "E_PARSE");
}

TEST_CASE("gradings accept integer literals and rational strings") {
    const auto j = json::parse(R"({
        "graph": {"pos": ["p"], "neg": ["n"], "edges": [["n", "p"]]},
        "generators": [{"id": "x", "gr": {"1": -3}}],
        "arrows": []
    })");
    const auto c = parse_complex_json(j);
    CHECK(c.generators[0].gr[0].second == Rat(-3));
}

TEST_CASE("knot complex parser is strict") {
    const auto base = fixtures::load_json("trefoil.cfk.json");
    CHECK(parse_cfk_json(base).generators.size() == 3);

    auto j = base;
    j["arrows"][0]["v"] = 1;
    CHECK_CODE(parse_cfk_json(j), "E_PARSE");

    j = base;
    j["arrows"][0]["z"] = -1;
    CHECK_CODE(parse_cfk_json(j), "E_PARSE");

    j = base;
    j["arrows"][0]["z"] = "1";
    CHECK_CODE(parse_cfk_json(j), "E_PARSE");

    j = base;
    j["arrows"][0]["to"] = "nope";
    CHECK_CODE(parse_cfk_json(j), "E_PARSE");

    j = base;
    j["generators"][0]["M"] = "one";
    CHECK_CODE(parse_cfk_json(j), "E_PARSE");

    // Maslov gradings may be integer literals.
    j = base;
    j["generators"][0]["M"] = 0;
    CHECK(parse_cfk_json(j).generators[0].M == 0);
}
