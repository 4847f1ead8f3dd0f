#pragma once

#include <string>
#include <vector>

#include "core/graph.hpp"
#include "core/polytope.hpp"
#include "core/weight_ring.hpp"

namespace gu {

// A free F2[u_1..u_kappa]-complex carried by a labeled graph: generators with
// one rational grading per perfect matching, and arrows x -> y decorated with
// edge-exponent vectors (the differential's monomial coefficients).
struct TangleComplex {
    struct Generator {
        std::string id;
        std::vector<std::pair<std::string, Rat>> gr;  // matching canonical id -> grading
    };
    struct Arrow {
        int from = -1;  // generator indices
        int to = -1;
        EdgeMonomial exp;
    };

    LabeledGraph graph;
    int n = 0;  // boundary pairs = number of positive vertices
    std::vector<Generator> generators;
    std::vector<Arrow> arrows;
    std::string metadata;

    int gen_index(const std::string& id) const;  // -1 when absent
};

// One violated invariant found by validate_complex.
struct ValidationIssue {
    std::string code;     // E_MISSING_GRADING, E_GRADING, E_D_SQUARED, ...
    std::string message;
    nlohmann::json details;
};

// Checks every complex invariant and reports all violations (empty = valid):
//   - the carrier graph's coloring ideal is trivial (E_UNSUPPORTED_IDEAL),
//   - every generator carries a grading for every perfect matching and no
//     stray keys (E_MISSING_GRADING),
//   - every arrow satisfies, for every matching m,
//       gr_m(x) - gr_m(y) + 2 * sum_{i in m} a_i = 1   (E_GRADING),
//   - no arrow is listed twice (E_PARSE),
//   - the differential squares to zero over the polynomial ring: all two-step
//     exponent multiplicities are even (E_D_SQUARED).
std::vector<ValidationIssue> validate_complex(const TangleComplex& c);

// Throws DomainError built from the first issue (all issues in details).
void require_valid(const TangleComplex& c);

// A bigraded knot complex: generators with Maslov and Alexander gradings,
// arrows weighted by z/w basepoint multiplicities.
struct KnotCFKData {
    struct Generator {
        std::string id;
        Rat M;
        Rat A;
    };
    struct Arrow {
        int from = -1;
        int to = -1;
        int z = 0;
        int w = 0;
    };
    std::vector<Generator> generators;
    std::vector<Arrow> arrows;
};

// Imports a knot complex as a 2-edge theta complex: edge 1 is the z-strand,
// edge 2 the w-strand; gr_1(x) = M(x) - 2A(x), gr_2(x) = M(x); arrow exponents
// are (z, w).  E_MASLOV_DROP when some arrow violates M(x) - M(y) + 2w = 1.
TangleComplex from_knot_cfk(const KnotCFKData& k);

// Tensor product over the coloring ring (the vertex connected sum): both
// inputs must be theta complexes over the same number of edges
// (E_SHAPE_MISMATCH).  Gradings add per matching; arrows follow the Leibniz
// rule with exponent vectors carried over.
TangleComplex tensor(const TangleComplex& c1, const TangleComplex& c2);

// Adds `extra` edges that shadow edge `slot` of a theta complex: every arrow
// repeats slot's exponent on the new edges, and each new single-edge matching
// copies slot's gradings.  E_BAD_SLOT / E_RANGE on bad arguments.
TangleComplex stabilize(const TangleComplex& c, int slot, int extra);

// Glues two theta complexes along their last edges: both are stabilized to
// n + n' - 2 edges, the second relabeled so that its surviving edges occupy
// coordinates n..n+n'-2, then tensored.  E_SHAPE_MISMATCH unless both are
// theta complexes with at least two edges.
TangleComplex glue(const TangleComplex& c1, const TangleComplex& c2);

// Weight vector (t,...,t, 2-t,...,2-t) of length 2n for the n-component link
// graph's diagonal family.  E_RANGE unless 0 <= t <= 2 and n >= 1.
WeightVector diagonal_link_weights(int n, const Rat& t);

// Internal helper, exposed for tests: relabels edges by a 1-based permutation
// (perm[old-1] = new), permuting exponent vectors and matching keys alike.
TangleComplex relabel_edges(const TangleComplex& c, const std::vector<int>& perm);

}  // namespace gu
