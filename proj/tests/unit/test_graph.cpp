#include <doctest.h>

#include <random>

#include "core/graph.hpp"
#include "fixtures.hpp"
#include "oracle/oracle.hpp"
#include "test_util.hpp"

using namespace gu;

TEST_CASE("graph validation accepts the corpus graphs") {
    for (const char* name : {"theta2.json", "theta3.json", "c4.json",
                             "square2.json", "p4.json", "k33.json",
                             "no_matching.json"}) {
        CAPTURE(name);
        CHECK_NOTHROW(fixtures::load_graph(name));
    }
}

TEST_CASE("graph validation rejects malformed inputs") {
    using E = std::vector<std::pair<std::string, std::string>>;
    CHECK_CODE(validate_graph({}, {}, E{}), "E_PARSE");
    CHECK_CODE(validate_graph({"p", "p"}, {"n"}, E{{"n", "p"}}), "E_PARSE");
    // A vertex id used on both sides.
    CHECK_CODE(validate_graph({"v"}, {"v"}, E{{"v", "v"}}), "E_PARSE");
    // Edge inside one part.
    CHECK_CODE(validate_graph({"p1", "p2"}, {"n1", "n2"},
                              E{{"p1", "p2"}, {"n1", "p1"}, {"n2", "p2"}}),
               "E_BIPARTITE");
    // Unknown endpoint.
    CHECK_CODE(validate_graph({"p"}, {"n"}, E{{"n", "zzz"}}), "E_PARSE");
    // Unbalanced component.
    CHECK_CODE(validate_graph({"p1", "p2"}, {"n1"}, E{{"n1", "p1"}, {"n1", "p2"}}),
               "E_UNBALANCED");
}

TEST_CASE("isolated vertices are rejected") {
    std::vector<RawEdge> edges{{1, "n1", "p1"}};
    CHECK_CODE(validate_graph({"p1", "p2"}, {"n1", "n2"}, edges), "E_ISOLATED");
}

TEST_CASE("edge indices must be 1..kappa") {
    CHECK_CODE(validate_graph({"p"}, {"n"},
                              std::vector<RawEdge>{{1, "n", "p"}, {1, "n", "p"}}),
               "E_INDEX");
    CHECK_CODE(validate_graph({"p"}, {"n"},
                              std::vector<RawEdge>{{1, "n", "p"}, {3, "n", "p"}}),
               "E_INDEX");
}

TEST_CASE("matching enumeration on the corpus") {
    auto ids = [](const std::vector<Matching>& ms) {
        std::vector<std::string> v;
        for (const auto& m : ms) v.push_back(m.canonical_id());
        return v;
    };
    CHECK(ids(enumerate_matchings(fixtures::load_graph("theta3.json"))) ==
          std::vector<std::string>{"1", "2", "3"});
    CHECK(ids(enumerate_matchings(fixtures::load_graph("c4.json"))) ==
          std::vector<std::string>{"1-3", "2-4"});
    CHECK(ids(enumerate_matchings(fixtures::load_graph("square2.json"))) ==
          std::vector<std::string>{"1-2", "1-4", "2-3", "3-4"});
    CHECK(ids(enumerate_matchings(fixtures::load_graph("p4.json"))) ==
          std::vector<std::string>{"1-3"});
    CHECK(enumerate_matchings(fixtures::load_graph("k33.json")).size() == 6);
    CHECK(enumerate_matchings(fixtures::load_graph("no_matching.json")).empty());
}

TEST_CASE("matching weights") {
    const auto g = fixtures::load_graph("c4.json");
    const Matching m{{1, 3}};
    CHECK(matching_weight(g, m) ==
          std::vector<Rat>{Rat(2), Rat(0), Rat(2), Rat(0)});
    CHECK_CODE(matching_weight(g, Matching{{1, 2}}), "E_NOT_MATCHING");
    CHECK_CODE(matching_weight(g, Matching{{1}}), "E_NOT_MATCHING");
    CHECK_CODE(matching_weight(g, Matching{{1, 9}}), "E_NOT_MATCHING");
}

TEST_CASE("enumeration matches the brute-force oracle on random graphs") {
    std::mt19937 rng(20250815);
    for (int trial = 0; trial < 60; ++trial) {
        const auto g = fixtures::random_balanced_graph(rng, 4, 12);
        const auto fast = enumerate_matchings(g);
        const auto slow = brute_matchings(g);
        REQUIRE(fast.size() == slow.size());
        for (size_t i = 0; i < fast.size(); ++i)
            CHECK(fast[i].edge_ids == slow[i].edge_ids);
    }
}

TEST_CASE("brute force rejects oversized graphs") {
    std::vector<std::pair<std::string, std::string>> edges;
    std::vector<std::string> pos, neg;
    for (int i = 1; i <= 21; ++i) {
        pos.push_back("p" + std::to_string(i));
        neg.push_back("n" + std::to_string(i));
        edges.push_back({neg.back(), pos.back()});
    }
    CHECK_CODE(brute_matchings(validate_graph(pos, neg, edges)), "E_TOO_LARGE");
}

TEST_CASE("coloring ideal triviality") {
    CHECK(coloring_ideal_is_trivial(fixtures::load_graph("theta2.json")));
    CHECK(coloring_ideal_is_trivial(fixtures::load_graph("theta3.json")));
    CHECK(coloring_ideal_is_trivial(fixtures::load_graph("square2.json")));
    CHECK(!coloring_ideal_is_trivial(fixtures::load_graph("p4.json")));
}
