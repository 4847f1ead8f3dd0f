#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "core/complex.hpp"
#include "core/polytope.hpp"

namespace gu {

// The t-specialized complex: one rational grading per generator and a sparse
// monomial differential, entry (x, y) = e meaning dx contains u^e y.
struct TModifiedComplex {
    WeightVector t;
    std::vector<std::string> ids;
    std::vector<Rat> gr;
    std::map<std::pair<int, int>, Rat> entries;
};

// Homology over the valuation ring: gradings of a homogeneous free basis plus
// torsion summands R/(u^order) with the grading of their generator.
struct HomologyStructure {
    std::vector<Rat> free_gradings;               // sorted ascending
    std::vector<std::pair<Rat, Rat>> torsion;     // (grading, order), sorted
};

// Valuation-pivot monomial reduction.  Requires a homogeneous complex whose
// differential squares to zero (guaranteed for t_modify output of a valid
// complex); deterministic via lexicographic pivot tie-breaking.
HomologyStructure reduce(const TModifiedComplex& tc);

// Bundles a validated complex with its triangulated matching polytope so that
// repeated evaluations share the geometry.
struct Evaluator {
    TangleComplex complex;
    DeltaComplex dc;
    std::vector<std::vector<Rat>> gr_aligned;  // [generator][matching index]
    int upsilon_len = 1;                       // 2^(n-1)

    explicit Evaluator(TangleComplex c);

    // Barycentric gradings gr_t for every generator; E_NOT_IN_POLYTOPE.
    std::vector<Rat> gr_at(const WeightVector& t) const;

    // Specializes the differential at t; E_INHOMOGENEOUS if some entry fails
    // the homogeneity law exp = gr_t(y) - gr_t(x) + 1 >= 0.
    TModifiedComplex t_modify(const WeightVector& t) const;

    // The sorted gradings of the free part; E_RANK unless the free rank is
    // exactly 2^(n-1).
    std::vector<Rat> upsilon_at(const WeightVector& t) const;
};

// Upsilon at the single vertex t = (2) of a one-edge theta complex.
// E_SHAPE_MISMATCH unless the carrier graph has exactly one edge and one
// vertex on each side.
Rat d_invariant(const Evaluator& ev);

}  // namespace gu
