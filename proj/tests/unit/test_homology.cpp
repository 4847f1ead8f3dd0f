#include <doctest.h>

#include <algorithm>
#include <random>

#include "core/homology.hpp"
#include "core/json_io.hpp"
#include "fixtures.hpp"
#include "oracle/oracle.hpp"
#include "test_util.hpp"

using namespace gu;

namespace {

void check_oracle_agreement(const Evaluator& ev, const WeightVector& t) {
    const auto tc = ev.t_modify(t);
    const auto h = reduce(tc);
    const auto b = persistence_reduce(tc);
    CHECK(h.free_gradings == b.infinite_bars);
    CHECK(h.torsion == b.finite_bars);
}

}  // namespace

TEST_CASE("imported knot gradings interpolate M - tA") {
    for (const char* name : {"unknot.cfk.json", "trefoil.cfk.json",
                             "figure8.cfk.json", "t25.cfk.json",
                             "synthetic23.cfk.json"}) {
        CAPTURE(name);
        const auto k = parse_cfk_json(fixtures::load_json(name));
        const Evaluator ev(from_knot_cfk(k));
        for (const Rat& t : {Rat(0), frac(1, 2), Rat(1), frac(3, 2), Rat(2),
                             frac(7, 5)}) {
            const auto gr = ev.gr_at({t, 2 - t});
            for (size_t g = 0; g < k.generators.size(); ++g)
                CHECK(gr[g] == k.generators[g].M - t * k.generators[g].A);
        }
    }
}

TEST_CASE("gradings at matching vertices are the matching gradings") {
    for (const char* name : {"unlink2.json", "theta3_one.json"}) {
        CAPTURE(name);
        const Evaluator ev(fixtures::load_complex(name));
        for (size_t m = 0; m < ev.dc.matchings.size(); ++m) {
            const auto t = matching_weight(ev.complex.graph, ev.dc.matchings[m]);
            const auto gr = ev.gr_at(t);
            for (size_t g = 0; g < gr.size(); ++g)
                CHECK(gr[g] == ev.gr_aligned[g][m]);
        }
    }
}

TEST_CASE("trefoil homology at pinned weights") {
    const Evaluator ev(fixtures::load_cfk("trefoil.cfk.json"));
    const auto h = reduce(ev.t_modify({frac(3, 2), frac(1, 2)}));
    CHECK(h.free_gradings == std::vector<Rat>{frac(-1, 2)});
    CHECK(h.torsion ==
          std::vector<std::pair<Rat, Rat>>{{frac(-3, 2), frac(1, 2)}});
    CHECK(ev.upsilon_at({frac(3, 2), frac(1, 2)}) ==
          std::vector<Rat>{frac(-1, 2)});
    CHECK(ev.upsilon_at({Rat(1), Rat(1)}) == std::vector<Rat>{Rat(-1)});
    // Order-zero pairs at the vertices are killed at birth, not torsion.
    CHECK(reduce(ev.t_modify({Rat(2), Rat(0)})).torsion.empty());
    CHECK(ev.upsilon_at({Rat(2), Rat(0)}) == std::vector<Rat>{Rat(0)});
    CHECK(ev.upsilon_at({Rat(0), Rat(2)}) == std::vector<Rat>{Rat(0)});
}

TEST_CASE("figure-eight homology at pinned weights") {
    const Evaluator ev(fixtures::load_cfk("figure8.cfk.json"));
    const auto h = reduce(ev.t_modify({frac(1, 2), frac(3, 2)}));
    CHECK(h.free_gradings == std::vector<Rat>{Rat(0)});
    CHECK(h.torsion == std::vector<std::pair<Rat, Rat>>{
                           {frac(-1, 2), frac(1, 2)}, {Rat(0), frac(1, 2)}});
    for (const Rat& t : {Rat(0), frac(2, 3), Rat(1), frac(9, 5), Rat(2)})
        CHECK(ev.upsilon_at({t, 2 - t}) == std::vector<Rat>{Rat(0)});
}

TEST_CASE("(2,5) torus knot homology at pinned weights") {
    const Evaluator ev(fixtures::load_cfk("t25.cfk.json"));
    const auto h = reduce(ev.t_modify({frac(1, 2), frac(3, 2)}));
    CHECK(h.free_gradings == std::vector<Rat>{Rat(-1)});
    CHECK(h.torsion == std::vector<std::pair<Rat, Rat>>{
                           {Rat(-3), frac(1, 2)}, {Rat(-2), frac(1, 2)}});
    CHECK(ev.upsilon_at({Rat(1), Rat(1)}) == std::vector<Rat>{Rat(-2)});
}

TEST_CASE("two-component unlink family") {
    const Evaluator ev(fixtures::load_complex("unlink2.json"));
    CHECK(ev.upsilon_len == 2);
    for (const Rat& t : {frac(1, 3), Rat(1), frac(8, 5)}) {
        CAPTURE(rat_str(t));
        const auto u = ev.upsilon_at(diagonal_link_weights(2, t));
        CHECK(u == std::vector<Rat>{frac(-1, 2), frac(1, 2)});
        // The parallel strands cancel mod 2, so only the p -> q pair twists.
        const auto h = reduce(ev.t_modify(diagonal_link_weights(2, t)));
        CHECK(h.torsion == std::vector<std::pair<Rat, Rat>>{{frac(1, 2), t}});
    }
}

TEST_CASE("reduction agrees with the persistence oracle on the corpus") {
    std::mt19937 rng(20240817);
    std::vector<Evaluator> evs;
    for (const char* name : {"unknot.cfk.json", "trefoil.cfk.json",
                             "figure8.cfk.json", "t25.cfk.json",
                             "synthetic23.cfk.json"})
        evs.emplace_back(fixtures::load_cfk(name));
    for (const char* name : {"unlink2.json", "theta3_one.json",
                             "theta1_neg2.json", "theta1_s3.json"})
        evs.emplace_back(fixtures::load_complex(name));
    evs.emplace_back(tensor(fixtures::load_cfk("trefoil.cfk.json"),
                            fixtures::load_cfk("figure8.cfk.json")));
    evs.emplace_back(stabilize(fixtures::load_cfk("t25.cfk.json"), 1, 1));
    evs.emplace_back(glue(fixtures::load_cfk("trefoil.cfk.json"),
                          fixtures::load_cfk("trefoil.cfk.json")));

    int comparisons = 0;
    for (const auto& ev : evs) {
        const auto poly = solution_polytope(ev.complex.graph);
        for (const auto& v : poly.vertices) {
            check_oracle_agreement(ev, v);
            ++comparisons;
        }
        for (int trial = 0; trial < 10; ++trial) {
            check_oracle_agreement(ev, fixtures::random_interior_point(poly, rng));
            ++comparisons;
        }
    }
    CHECK(comparisons >= 120);
}

TEST_CASE("reduction agrees with the oracle on random staircase imports") {
    std::mt19937 rng(424242);
    for (int trial = 0; trial < 20; ++trial) {
        const auto k = fixtures::random_cfk(rng, 4, 3);
        const Evaluator ev(from_knot_cfk(k));
        const auto poly = solution_polytope(ev.complex.graph);
        for (int rep = 0; rep < 5; ++rep)
            check_oracle_agreement(ev, fixtures::random_interior_point(poly, rng));
        CHECK(ev.upsilon_at({Rat(2), Rat(0)}).size() == 1);
    }
}

TEST_CASE("reduction output is independent of generator order") {
    const auto c = tensor(fixtures::load_cfk("trefoil.cfk.json"),
                          fixtures::load_cfk("figure8.cfk.json"));
    TangleComplex rev = c;
    std::reverse(rev.generators.begin(), rev.generators.end());
    const int G = static_cast<int>(c.generators.size());
    for (auto& a : rev.arrows) {
        a.from = G - 1 - a.from;
        a.to = G - 1 - a.to;
    }
    const Evaluator e1(c), e2(rev);
    std::mt19937 rng(7);
    const auto poly = solution_polytope(c.graph);
    for (int trial = 0; trial < 5; ++trial) {
        const auto t = fixtures::random_interior_point(poly, rng);
        CHECK(e1.upsilon_at(t) == e2.upsilon_at(t));
        CHECK(reduce(e1.t_modify(t)).torsion == reduce(e2.t_modify(t)).torsion);
    }
}

TEST_CASE("free rank must match the boundary contract") {
    const Evaluator ev(fixtures::load_complex("theta1_rank2.json"));
    CHECK_CODE(ev.upsilon_at({Rat(2)}), "E_RANK");
}

TEST_CASE("d-invariant") {
    CHECK(d_invariant(Evaluator(fixtures::load_complex("theta1_s3.json"))) == 0);
    CHECK(d_invariant(Evaluator(fixtures::load_complex("theta1_neg2.json"))) ==
          -2);
    CHECK_CODE(d_invariant(Evaluator(fixtures::load_complex("theta1_rank2.json"))),
               "E_RANK");
    CHECK_CODE(d_invariant(Evaluator(fixtures::load_cfk("trefoil.cfk.json"))),
               "E_SHAPE_MISMATCH");
}

TEST_CASE("evaluation requires an admissible weight vector") {
    const Evaluator ev(fixtures::load_cfk("trefoil.cfk.json"));
    CHECK_CODE(ev.upsilon_at({Rat(3), Rat(1)}), "E_NOT_IN_POLYTOPE");
    CHECK_CODE(ev.upsilon_at({Rat(-1), Rat(3)}), "E_NOT_IN_POLYTOPE");
}

TEST_CASE("reduction rejects broken differentials defensively") {
    TModifiedComplex chain;
    chain.ids = {"a", "b", "c"};
    chain.gr = {Rat(2), Rat(1), Rat(0)};
    chain.entries[{0, 1}] = Rat(1);
    chain.entries[{1, 2}] = Rat(1);
    CHECK_CODE(reduce(chain), "E_D_SQUARED");

    TModifiedComplex diag;
    diag.ids = {"a"};
    diag.gr = {Rat(0)};
    diag.entries[{0, 0}] = Rat(1);
    CHECK_CODE(reduce(diag), "E_D_SQUARED");

    TModifiedComplex mixed;
    mixed.ids = {"a", "b", "c", "d"};
    mixed.gr = {Rat(0), Rat(0), Rat(0), Rat(0)};
    mixed.entries[{0, 2}] = Rat(1);
    mixed.entries[{0, 3}] = Rat(2);
    mixed.entries[{1, 2}] = Rat(1);
    mixed.entries[{1, 3}] = Rat(1);
    CHECK_CODE(reduce(mixed), "E_INHOMOGENEOUS");
}
