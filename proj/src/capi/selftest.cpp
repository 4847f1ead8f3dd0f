#include <algorithm>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "capi/capi_internal.hpp"
#include "core/complex.hpp"
#include "core/errors.hpp"
#include "core/homology.hpp"
#include "core/json_io.hpp"
#include "core/piecewise.hpp"
#include "core/polytope.hpp"
#include "graphupsilon/graphupsilon.h"
#include "oracle/oracle.hpp"

// Built-in acceptance checks, exercising every module with data constructed
// in code so the shared library self-verifies without any external files.
// All comparisons are exact rational equalities; nothing here tolerates
// approximation.

namespace {

using gu::Rat;

// -------------------------------------------------------------------- data

constexpr const char* kTheta2 =
    R"({"pos":["p"],"neg":["n"],"edges":[["n","p"],["n","p"]]})";
constexpr const char* kTheta3 =
    R"({"pos":["p"],"neg":["n"],"edges":[["n","p"],["n","p"],["n","p"]]})";
constexpr const char* kC4 =
    R"({"pos":["p1","p2"],"neg":["n1","n2"],
        "edges":[["n1","p1"],["n1","p2"],["n2","p2"],["n2","p1"]]})";
constexpr const char* kK33 =
    R"({"pos":["p1","p2","p3"],"neg":["n1","n2","n3"],
        "edges":[["n1","p1"],["n1","p2"],["n1","p3"],
                 ["n2","p1"],["n2","p2"],["n2","p3"],
                 ["n3","p1"],["n3","p2"],["n3","p3"]]})";
constexpr const char* kSquare2 =
    R"({"pos":["p1","p2"],"neg":["n1","n2"],
        "edges":[["n1","p1"],["n2","p2"],["n1","p1"],["n2","p2"]]})";

constexpr const char* kTrefoilCfk =
    R"({"generators":[{"id":"a","M":"0","A":"1"},
                      {"id":"b","M":"-1","A":"0"},
                      {"id":"c","M":"-2","A":"-1"}],
        "arrows":[{"from":"b","to":"a","z":0,"w":1},
                  {"from":"b","to":"c","z":1,"w":0}]})";
constexpr const char* kTrefoilCfkBadDrop =
    R"({"generators":[{"id":"a","M":"0","A":"1"},
                      {"id":"b","M":"-1","A":"0"},
                      {"id":"c","M":"-2","A":"-1"}],
        "arrows":[{"from":"b","to":"a","z":0,"w":2},
                  {"from":"b","to":"c","z":1,"w":0}]})";
constexpr const char* kFigure8Cfk =
    R"({"generators":[{"id":"e","M":"0","A":"0"},
                      {"id":"p","M":"0","A":"0"},
                      {"id":"q","M":"-1","A":"-1"},
                      {"id":"r","M":"1","A":"1"},
                      {"id":"s","M":"0","A":"0"}],
        "arrows":[{"from":"p","to":"q","z":1,"w":0},
                  {"from":"p","to":"r","z":0,"w":1},
                  {"from":"q","to":"s","z":0,"w":1},
                  {"from":"r","to":"s","z":1,"w":0}]})";
constexpr const char* kUnknotCfk =
    R"({"generators":[{"id":"x","M":"0","A":"0"}],"arrows":[]})";

constexpr const char* kTheta1S3 =
    R"({"graph":{"pos":["p"],"neg":["n"],"edges":[["n","p"]]},
        "generators":[{"id":"x","gr":{"1":"0"}}],"arrows":[]})";
constexpr const char* kTheta1Neg2 =
    R"({"graph":{"pos":["p"],"neg":["n"],"edges":[["n","p"]]},
        "generators":[{"id":"f","gr":{"1":"-2"}},
                      {"id":"x","gr":{"1":"-1"}},
                      {"id":"y","gr":{"1":"0"}}],
        "arrows":[{"from":"x","to":"y","exp":[1]}]})";
constexpr const char* kTheta3One =
    R"({"graph":{"pos":["p"],"neg":["n"],"edges":[["n","p"],["n","p"],["n","p"]]},
        "generators":[{"id":"x","gr":{"1":"0","2":"0","3":"0"}}],"arrows":[]})";

gu::LabeledGraph load_graph(const char* text) {
    return gu::parse_graph_json(gu::parse_json_text(text));
}

gu::TangleComplex load_cfk(const char* text) {
    return gu::from_knot_cfk(gu::parse_cfk_json(gu::parse_json_text(text)));
}

gu::TangleComplex load_complex(const char* text) {
    return gu::parse_complex_json(gu::parse_json_text(text));
}

// Deterministic rational point of the polytope: a convex combination of all
// polytope vertices with pseudo-random positive integer weights.  Only
// standard-specified generator output is used, so every platform draws the
// same points.
gu::WeightVector random_point(const gu::SolutionPolytope& poly,
                              std::mt19937& rng) {
    std::vector<long> w(poly.vertices.size());
    Rat total(0);
    for (auto& wi : w) {
        wi = static_cast<long>(rng() % 97) + 1;
        total += wi;
    }
    gu::WeightVector t(poly.vertices[0].size(), Rat(0));
    for (size_t i = 0; i < w.size(); ++i)
        for (size_t j = 0; j < t.size(); ++j)
            t[j] += Rat(w[i]) * poly.vertices[i][j] / total;
    return t;
}

std::string rat_vec_str(const std::vector<Rat>& v) {
    std::string s = "[";
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) s += ",";
        s += gu::rat_str(v[i]);
    }
    return s + "]";
}

// ------------------------------------------------------------------ harness

struct Reporter {
    std::ostringstream out;
    int failed = 0;

    void record(const std::string& name, const std::string& detail) {
        if (detail.empty()) {
            out << "PASS  " << name << "\n";
        } else {
            out << "FAIL  " << name << " (" << detail << ")\n";
            ++failed;
        }
    }
};

// Runs one check body; an empty returned string means pass.  Exceptions are
// converted into failures so one broken module cannot abort the whole run.
template <typename F>
void run_check(Reporter& r, const std::string& name, F&& body) {
    std::string detail;
    try {
        detail = body();
    } catch (const gu::DomainError& e) {
        detail = "unexpected " + e.code() + ": " + e.what();
    } catch (const std::exception& e) {
        detail = std::string("unexpected exception: ") + e.what();
    }
    r.record(name, detail);
}

#define GU_EXPECT(cond, msg)                 \
    do {                                     \
        if (!(cond)) return std::string(msg); \
    } while (0)

// ------------------------------------------------------------------- checks

std::string check_matchings_brute() {
    const std::pair<const char*, size_t> cases[] = {
        {kTheta3, 3}, {kC4, 2}, {kK33, 6}, {kSquare2, 4}};
    for (const auto& [text, count] : cases) {
        const auto g = load_graph(text);
        const auto fast = gu::enumerate_matchings(g);
        const auto slow = gu::brute_matchings(g);
        GU_EXPECT(fast.size() == count, "unexpected matching count");
        GU_EXPECT(fast.size() == slow.size(), "enumeration size mismatch");
        for (size_t i = 0; i < fast.size(); ++i)
            GU_EXPECT(fast[i].edge_ids == slow[i].edge_ids,
                      "enumeration disagrees with brute force");
    }
    return "";
}

std::string check_decompose_roundtrip() {
    std::mt19937 rng(911);
    for (const char* text : {kTheta3, kC4, kK33, kSquare2}) {
        const auto g = load_graph(text);
        const auto poly = gu::solution_polytope(g);
        for (int trial = 0; trial < 15; ++trial) {
            const auto t = random_point(poly, rng);
            const auto cc = gu::decompose_to_matchings(g, t);
            gu::WeightVector acc(t.size(), Rat(0));
            Rat total(0);
            for (const auto& [m, coeff] : cc.terms) {
                GU_EXPECT(coeff > 0, "non-positive coefficient");
                const auto w = gu::matching_weight(g, m);
                for (size_t j = 0; j < t.size(); ++j) acc[j] += coeff * w[j];
                total += coeff;
            }
            GU_EXPECT(total == 1, "coefficients do not sum to one");
            GU_EXPECT(acc == t, "decomposition does not recombine to t");
        }
    }
    return "";
}

std::string check_triangulations() {
    using VV = std::vector<std::vector<int>>;

    const auto seg = gu::build_delta_complex(load_graph(kTheta2));
    GU_EXPECT(seg.dim == 1 && seg.vertices.size() == 2, "two-edge theta shape");
    GU_EXPECT(seg.simplices.at(1) == (VV{{0, 1}}), "two-edge theta segment");

    const auto tri = gu::build_delta_complex(load_graph(kTheta3));
    GU_EXPECT(tri.dim == 2 && tri.vertices.size() == 3, "three-edge theta shape");
    GU_EXPECT(tri.simplices.at(2) == (VV{{0, 1, 2}}),
              "three-edge theta triangle");

    const auto cyc = gu::build_delta_complex(load_graph(kC4));
    GU_EXPECT(cyc.dim == 1 && cyc.vertices.size() == 2, "4-cycle shape");
    GU_EXPECT(cyc.simplices.at(1) == (VV{{0, 1}}), "4-cycle segment");

    const auto sq = gu::build_delta_complex(load_graph(kSquare2));
    GU_EXPECT(sq.dim == 2 && sq.vertices.size() == 4, "square shape");
    GU_EXPECT(sq.simplices.at(2) == (VV{{0, 1, 3}, {0, 2, 3}}),
              "square triangulation");
    const auto& edges = sq.simplices.at(1);
    GU_EXPECT(std::count(edges.begin(), edges.end(), std::vector<int>{0, 3}) == 1,
              "square diagonal missing");
    GU_EXPECT(edges.size() == 5, "square edge count");
    return "";
}

std::string check_locate() {
    std::mt19937 rng(912);
    for (const char* text : {kTheta3, kK33, kSquare2}) {
        const auto g = load_graph(text);
        const auto poly = gu::solution_polytope(g);
        const auto dc = gu::build_delta_complex(g);
        for (int trial = 0; trial < 60; ++trial) {
            const auto t = random_point(poly, rng);
            const auto loc = gu::locate(dc, t);
            GU_EXPECT(loc.simplex.size() == loc.bary.size(), "location shape");
            gu::WeightVector acc(t.size(), Rat(0));
            Rat total(0);
            for (size_t i = 0; i < loc.simplex.size(); ++i) {
                GU_EXPECT(loc.bary[i] > 0, "non-positive barycentric weight");
                total += loc.bary[i];
                const auto& v = dc.vertices[loc.simplex[i]];
                for (size_t j = 0; j < t.size(); ++j)
                    acc[j] += loc.bary[i] * v[j];
            }
            GU_EXPECT(total == 1, "barycentric weights do not sum to one");
            GU_EXPECT(acc == t, "barycentric reconstruction mismatch");
        }
    }
    return "";
}

std::string check_grading_law() {
    std::mt19937 rng(913);
    for (const char* text : {kTrefoilCfk, kFigure8Cfk, kUnknotCfk}) {
        const auto c = load_cfk(text);
        GU_EXPECT(gu::validate_complex(c).empty(), "import fails validation");
        const gu::Evaluator ev(c);
        const auto poly = gu::solution_polytope(c.graph);
        for (int trial = 0; trial < 5; ++trial) {
            const auto t = random_point(poly, rng);
            const auto gr = ev.gr_at(t);
            const auto tm = ev.t_modify(t);
            for (const auto& [key, e] : tm.entries) {
                GU_EXPECT(e == gr[key.second] - gr[key.first] + 1,
                          "entry exponent violates the grading law");
                GU_EXPECT(e >= 0, "negative exponent");
            }
        }
    }
    try {
        load_cfk(kTrefoilCfkBadDrop);
        return "corrupted import was accepted";
    } catch (const gu::DomainError& e) {
        GU_EXPECT(e.code() == "E_MASLOV_DROP", "wrong rejection code");
    }
    return "";
}

std::string check_oracle_agreement() {
    std::mt19937 rng(914);
    std::vector<std::pair<std::string, gu::TangleComplex>> corpus;
    corpus.emplace_back("trefoil", load_cfk(kTrefoilCfk));
    corpus.emplace_back("figure8", load_cfk(kFigure8Cfk));
    corpus.emplace_back("unknot", load_cfk(kUnknotCfk));
    corpus.emplace_back("theta1_s3", load_complex(kTheta1S3));
    corpus.emplace_back("theta1_neg2", load_complex(kTheta1Neg2));
    corpus.emplace_back("theta3_one", load_complex(kTheta3One));
    corpus.emplace_back("tensor",
                        gu::tensor(load_cfk(kTrefoilCfk), load_cfk(kFigure8Cfk)));
    corpus.emplace_back("glue",
                        gu::glue(load_cfk(kTrefoilCfk), load_cfk(kTrefoilCfk)));

    int comparisons = 0;
    for (const auto& [name, c] : corpus) {
        const gu::Evaluator ev(c);
        const auto poly = gu::solution_polytope(c.graph);
        std::vector<gu::WeightVector> ts = poly.vertices;
        for (int trial = 0; trial < 6; ++trial)
            ts.push_back(random_point(poly, rng));
        for (const auto& t : ts) {
            const auto tm = ev.t_modify(t);
            const auto h = gu::reduce(tm);
            const auto b = gu::persistence_reduce(tm);
            GU_EXPECT(h.free_gradings == b.infinite_bars,
                      "free part disagrees on " + name);
            GU_EXPECT(h.torsion == b.finite_bars,
                      "torsion disagrees on " + name);
            ++comparisons;
        }
    }
    GU_EXPECT(comparisons >= 50, "too few comparisons");
    return "";
}

std::string check_trefoil_profile() {
    const gu::Evaluator ev(load_cfk(kTrefoilCfk));
    GU_EXPECT(ev.upsilon_at({Rat(2), Rat(0)}) == std::vector<Rat>{Rat(0)},
              "vertex value at (2,0)");
    GU_EXPECT(ev.upsilon_at({Rat(0), Rat(2)}) == std::vector<Rat>{Rat(0)},
              "vertex value at (0,2)");

    const auto fs =
        gu::reconstruct_segment(ev, {Rat(2), Rat(0)}, {Rat(0), Rat(2)});
    GU_EXPECT(fs.size() == 1, "one component expected");
    GU_EXPECT(fs[0].certified, "segment not certified");
    GU_EXPECT(fs[0].breaks == (std::vector<Rat>{Rat(0), gu::frac(1, 2), Rat(1)}),
              "breakpoints " + rat_vec_str(fs[0].breaks));
    GU_EXPECT(fs[0].values == (std::vector<Rat>{Rat(0), Rat(-1), Rat(0)}),
              "corner values " + rat_vec_str(fs[0].values));

    const auto jv = gu::jump_delta_i(ev, 1, Rat(1));
    GU_EXPECT(jv.a * jv.delta == 2, "corner fails a*delta == 2");

    const auto tau = gu::tau_matrix(ev);
    GU_EXPECT(tau.size() == 2, "tau shape");
    GU_EXPECT(tau[0][1].first && tau[1][0].first, "tau entries absent");
    GU_EXPECT(abs(tau[0][1].second) == 1 && abs(tau[1][0].second) == 1,
              "|tau| != 1");
    return "";
}

std::string check_figure8_vanishes() {
    const gu::Evaluator ev(load_cfk(kFigure8Cfk));
    GU_EXPECT(ev.upsilon_at({Rat(1), Rat(1)}) == std::vector<Rat>{Rat(0)},
              "midpoint value");
    const auto fs =
        gu::reconstruct_segment(ev, {Rat(2), Rat(0)}, {Rat(0), Rat(2)});
    GU_EXPECT(fs.size() == 1 && fs[0].certified, "segment not certified");
    GU_EXPECT(fs[0].breaks == (std::vector<Rat>{Rat(0), Rat(1)}),
              "spurious breakpoints " + rat_vec_str(fs[0].breaks));
    GU_EXPECT(fs[0].values == (std::vector<Rat>{Rat(0), Rat(0)}),
              "non-zero values " + rat_vec_str(fs[0].values));
    return "";
}

std::string check_additivity() {
    std::mt19937 rng(915);
    const auto trefoil = load_cfk(kTrefoilCfk);
    const auto figure8 = load_cfk(kFigure8Cfk);
    const auto unknot = load_cfk(kUnknotCfk);
    const std::pair<const gu::TangleComplex*, const gu::TangleComplex*> pairs[] =
        {{&trefoil, &figure8}, {&trefoil, &trefoil}, {&figure8, &unknot}};
    for (const auto& [a, b] : pairs) {
        const gu::Evaluator ea(*a), eb(*b), et(gu::tensor(*a, *b));
        const auto poly = gu::solution_polytope(a->graph);
        for (int trial = 0; trial < 8; ++trial) {
            const auto t = random_point(poly, rng);
            GU_EXPECT(et.upsilon_at(t)[0] ==
                          ea.upsilon_at(t)[0] + eb.upsilon_at(t)[0],
                      "tensor value is not the sum");
        }
    }
    return "";
}

std::string check_glue_identity() {
    std::mt19937 rng(916);
    const auto trefoil = load_cfk(kTrefoilCfk);
    const gu::Evaluator ev(trefoil);
    const gu::Evaluator glued(gu::glue(trefoil, trefoil));
    const auto poly = gu::solution_polytope(glued.complex.graph);
    for (int trial = 0; trial < 8; ++trial) {
        const auto t = random_point(poly, rng);
        const gu::WeightVector swapped{t[1], t[0]};
        GU_EXPECT(glued.upsilon_at(t)[0] ==
                      ev.upsilon_at(t)[0] + ev.upsilon_at(swapped)[0],
                  "glued value is not the regrouped sum");
    }
    return "";
}

std::string check_d_invariant() {
    GU_EXPECT(gu::d_invariant(gu::Evaluator(load_complex(kTheta1S3))) == 0,
              "three-sphere value");
    GU_EXPECT(gu::d_invariant(gu::Evaluator(load_complex(kTheta1Neg2))) == -2,
              "shifted value");
    try {
        gu::d_invariant(gu::Evaluator(load_cfk(kTrefoilCfk)));
        return "accepted a two-edge carrier";
    } catch (const gu::DomainError& e) {
        GU_EXPECT(e.code() == "E_SHAPE_MISMATCH", "wrong rejection code");
    }
    return "";
}

std::string check_f_i_vanishes() {
    const std::vector<Rat> zeros3(3, Rat(0));
    const gu::Evaluator unknot(load_cfk(kUnknotCfk));
    const gu::Evaluator trefoil(load_cfk(kTrefoilCfk));
    GU_EXPECT(gu::f_i_components(unknot, 1, 3) == zeros3, "unknot f_1");
    GU_EXPECT(gu::f_i_components(unknot, 2, 3) == zeros3, "unknot f_2");
    GU_EXPECT(gu::f_i_components(trefoil, 1, 3) == zeros3, "trefoil f_1");
    GU_EXPECT(gu::f_i_components(trefoil, 2, 3) == zeros3, "trefoil f_2");
    return "";
}

#undef GU_EXPECT

}  // namespace

extern "C" int gu_selftest(char** report, char** err) {
    if (err) *err = nullptr;
    if (report) *report = nullptr;
    Reporter r;
    try {
        run_check(r, "matching enumeration agrees with brute force",
                  check_matchings_brute);
        run_check(r, "decomposition round-trips random points exactly",
                  check_decompose_roundtrip);
        run_check(r, "triangulations match the hand-derived complexes",
                  check_triangulations);
        run_check(r, "point location reconstructs barycentrically",
                  check_locate);
        run_check(r, "knot imports satisfy the grading law", check_grading_law);
        run_check(r, "reduction agrees with the persistence oracle",
                  check_oracle_agreement);
        run_check(r, "trefoil profile: corner, parity, tau",
                  check_trefoil_profile);
        run_check(r, "figure-eight upsilon vanishes identically",
                  check_figure8_vanishes);
        run_check(r, "upsilon is additive under tensor products",
                  check_additivity);
        run_check(r, "gluing matches the regrouped sum", check_glue_identity);
        run_check(r, "d-invariant examples", check_d_invariant);
        run_check(r, "f_i components vanish for unknot and trefoil",
                  check_f_i_vanishes);
    } catch (const gu::DomainError& e) {
        if (err) *err = gu_capi::dup_string(e.to_json().dump());
        return -1;
    } catch (const std::exception& e) {
        gu_capi::store_error(err, "E_INTERNAL", e.what());
        return -1;
    } catch (...) {
        gu_capi::store_error(err, "E_INTERNAL", "unknown error");
        return -1;
    }
    if (report) *report = gu_capi::dup_string(r.out.str());
    return r.failed;
}
