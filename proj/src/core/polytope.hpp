#pragma once

#include <map>
#include <string>
#include <vector>

#include "core/graph.hpp"
#include "core/rational.hpp"

namespace gu {

using WeightVector = std::vector<Rat>;

// A convex combination of matching weight vectors: coefficients are positive
// rationals summing to 1, terms sorted by matching canonical id.
struct ConvexCombination {
    std::vector<std::pair<Matching, Rat>> terms;
};

// Vertex description of the solution polytope L_G: one weight vector per
// perfect matching (aligned with `matchings`), plus the affine dimension of
// their hull (-1 when the polytope is empty).
struct SolutionPolytope {
    std::vector<Matching> matchings;
    std::vector<WeightVector> vertices;
    int dim = -1;
};

// One face of L_G in the triangulation recursion: its polytope-vertex set, its
// lexicographically smallest vertex (the cone apex of this level), and its
// boundary facets that avoid that apex.
struct DeltaFace {
    std::vector<int> verts;      // indices into DeltaComplex::vertices, ascending
    int t_min = -1;              // index of the lex-min vertex of this face
    int dim = 0;                 // affine dimension
    std::vector<int> children;   // ∂0 facets (faces avoiding t_min), as face ids
    std::vector<int> child_cut;  // defining coordinate (0-based) per child facet
};

// The cone triangulation of L_G: every simplex spans matching vertices; the
// top level cones the recursively triangulated ∂0 facets at the global
// lex-min vertex, and likewise inside every face.
struct DeltaComplex {
    LabeledGraph graph;                           // retained for membership checks
    std::vector<Matching> matchings;              // aligned with vertices
    std::vector<WeightVector> vertices;           // matching weight vectors
    int dim = 0;                                  // top dimension
    std::vector<DeltaFace> faces;                 // faces[0] is the whole polytope
    std::map<int, std::vector<std::vector<int>>> simplices;  // dim -> sorted tuples
};

// Point location result: the unique simplex (as ascending vertex indices)
// whose relative interior contains the query, with positive barycentric
// coordinates aligned to it.
struct Location {
    std::vector<int> simplex;
    std::vector<Rat> bary;
};

// Affine dimension of a set of rational points (-1 for the empty set).
int affine_dimension(const std::vector<WeightVector>& pts);

// Vertices of L_G (the matching weight vectors) and their affine dimension.
SolutionPolytope solution_polytope(const LabeledGraph& g);

// Exact membership in L_G: t >= 0 and the edge weights at every vertex sum to 2.
bool contains(const LabeledGraph& g, const WeightVector& t);

// Writes t in L_G as a convex combination of matching vertices by repeated
// loop splitting over the fractional-edge subgraph.  E_NOT_IN_POLYTOPE when
// t is not in L_G.
ConvexCombination decompose_to_matchings(const LabeledGraph& g, const WeightVector& t);

// The alternating cycle move: given a closed cycle of distinct edges starting
// at e_i, zeroes coordinate i and shifts the remaining cycle coordinates by
// +/- t_i in alternation.  Input must satisfy the vertex-sum equations; the
// output satisfies them too but may be negative.  E_NOT_A_LOOP when the edge
// sequence does not close up alternately.
WeightVector loop_move(const LabeledGraph& g, const WeightVector& t,
                       const std::vector<int>& cycle);

// Builds the cone triangulation of L_G.  E_EMPTY_POLYTOPE when no matching exists.
DeltaComplex build_delta_complex(const LabeledGraph& g);

// Locates t inside the triangulation by exact ray shooting from each level's
// apex.  E_NOT_IN_POLYTOPE when t is outside L_G.
Location locate(const DeltaComplex& dc, const WeightVector& t);

}  // namespace gu
