#pragma once

// Shared fixtures for unit and acceptance tests: corpus loading, random
// inputs with planted structure, and small hand-checked builders.

#include <cstdlib>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "core/complex.hpp"
#include "core/errors.hpp"
#include "core/graph.hpp"
#include "core/json_io.hpp"
#include "core/polytope.hpp"

namespace fixtures {

inline std::string data_dir() {
    const char* env = std::getenv("GU_DATA_DIR");
    return env ? env : "tests/data";
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) gu::fail("E_PARSE", "cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline nlohmann::json load_json(const std::string& name) {
    return gu::parse_json_text(read_file(data_dir() + "/" + name));
}

inline gu::LabeledGraph load_graph(const std::string& name) {
    return gu::parse_graph_json(load_json(name));
}

inline gu::TangleComplex load_complex(const std::string& name) {
    return gu::parse_complex_json(load_json(name));
}

inline gu::TangleComplex load_cfk(const std::string& name) {
    return gu::from_knot_cfk(gu::parse_cfk_json(load_json(name)));
}

inline gu::LabeledGraph theta_graph(int n) {
    std::vector<std::pair<std::string, std::string>> edges(n, {"n", "p"});
    return gu::validate_graph({"p"}, {"n"}, edges);
}

// A uniformly random point of L_G: a random positive convex combination of
// all matching vertices (interior whenever the combination is).
inline gu::WeightVector random_interior_point(const gu::SolutionPolytope& poly,
                                              std::mt19937& rng) {
    std::uniform_int_distribution<int> num(1, 12);
    std::vector<gu::Rat> coef;
    gu::Rat total(0);
    for (size_t i = 0; i < poly.vertices.size(); ++i) {
        coef.push_back(gu::Rat(num(rng)));
        total += coef.back();
    }
    gu::WeightVector t(poly.vertices.front().size(), gu::Rat(0));
    for (size_t i = 0; i < poly.vertices.size(); ++i)
        for (size_t k = 0; k < t.size(); ++k)
            t[k] += coef[i] / total * poly.vertices[i][k];
    return t;
}

// Random connected balanced bipartite graph with a planted perfect matching
// (vertices pi/ni, the matching edges first, then extra cross edges).
inline gu::LabeledGraph random_balanced_graph(std::mt19937& rng, int max_side,
                                              int max_edges) {
    std::uniform_int_distribution<int> side_d(1, max_side);
    const int side = side_d(rng);
    std::vector<std::string> pos, neg;
    for (int i = 1; i <= side; ++i) {
        pos.push_back("p" + std::to_string(i));
        neg.push_back("n" + std::to_string(i));
    }
    std::vector<std::pair<std::string, std::string>> edges;
    for (int i = 0; i < side; ++i) edges.push_back({neg[i], pos[i]});
    std::uniform_int_distribution<int> vertex_d(0, side - 1);
    const int extras =
        std::uniform_int_distribution<int>(0, max_edges - side)(rng);
    for (int e = 0; e < extras; ++e)
        edges.push_back({neg[vertex_d(rng)], pos[vertex_d(rng)]});
    // Chain the planted matching into one component so the graph never has
    // isolated unbalanced pieces: add a ladder edge when disconnected.
    for (int i = 0; i + 1 < side; ++i) edges.push_back({neg[i], pos[i + 1]});
    while (static_cast<int>(edges.size()) > max_edges &&
           static_cast<int>(edges.size()) > side)
        edges.pop_back();
    return gu::validate_graph(pos, neg, edges);
}

// Random two-edge theta complex: one staircase (free rank one, as the
// boundary contract requires) plus box summands.  Both piece shapes satisfy
// the Maslov drop M(x) - M(y) + 2w = 1 and the Alexander balance
// A(x) - A(y) = z - w on every arrow by construction, so the imported
// complex always validates.
inline gu::KnotCFKData random_cfk(std::mt19937& rng, int max_steps,
                                  int max_boxes) {
    gu::KnotCFKData k;
    std::uniform_int_distribution<int> step_d(1, 3);
    std::uniform_int_distribution<int> off_d(-2, 2);

    // Staircase x0 <- y1 -> x1 <- y2 -> ... -> xS: arrows y_i -> x_{i-1}
    // with w only and y_i -> x_i with z only.
    const int steps = std::uniform_int_distribution<int>(0, max_steps)(rng);
    gu::Rat M(off_d(rng)), A(off_d(rng));
    k.generators.push_back({"x0", M, A});
    for (int i = 1; i <= steps; ++i) {
        const int w = step_d(rng), z = step_d(rng);
        // y_i above x_{i-1:}: M(y) - M(x_{i-1}) + 2w = 1, A diff = z - w.
        const gu::Rat My = M + 1 - 2 * gu::Rat(w);
        const gu::Rat Ay = A - w;
        // x_i below y_i: M(y) - M(x_i) = 1, A(y) - A(x_i) = z.
        M = My - 1;
        A = Ay - z;
        k.generators.push_back({"y" + std::to_string(i), My, Ay});
        k.generators.push_back({"x" + std::to_string(i), M, A});
        const int base = static_cast<int>(k.generators.size()) - 3;
        k.arrows.push_back({base + 1, base, 0, w});
        k.arrows.push_back({base + 1, base + 2, z, 0});
    }

    // Boxes b -> {q, r} -> s with opposite basepoint weights on the two
    // parallel routes (d^2 = 0 mod 2).
    const int boxes = std::uniform_int_distribution<int>(0, max_boxes)(rng);
    for (int p = 0; p < boxes; ++p) {
        const int z = step_d(rng), w = step_d(rng);
        const gu::Rat M0(off_d(rng)), A0(off_d(rng));
        const int base = static_cast<int>(k.generators.size());
        const std::string tag = std::to_string(p);
        k.generators.push_back({"b" + tag, M0, A0});
        k.generators.push_back({"q" + tag, M0 - 1, A0 - z});
        k.generators.push_back({"r" + tag, M0 - 1 + 2 * gu::Rat(w), A0 + w});
        k.generators.push_back({"s" + tag, M0 - 2 + 2 * gu::Rat(w), A0 + w - z});
        k.arrows.push_back({base, base + 1, z, 0});
        k.arrows.push_back({base, base + 2, 0, w});
        k.arrows.push_back({base + 1, base + 3, 0, w});
        k.arrows.push_back({base + 2, base + 3, z, 0});
    }
    return k;
}

}  // namespace fixtures
