#pragma once

#include <vector>

#include "core/homology.hpp"

namespace gu {

// One Upsilon component along a segment, as an exact piecewise-linear
// function of the segment parameter s in [0, 1].
struct PLFunction {
    int index = 0;                // Upsilon component (0-based)
    std::vector<Rat> breaks;      // sorted, starts with 0 and ends with 1
    std::vector<Rat> values;      // values.at(k) = value at breaks.at(k)
    bool certified = true;        // false when the depth cap was exhausted

    Rat value_at(const Rat& s) const;
    Rat slope_after(size_t piece) const;  // slope on [breaks[piece], breaks[piece+1]]
};

struct ReconstructOptions {
    int max_depth = 20;
    int threads = 0;  // 0 = all logical cores
};

// Reconstructs every Upsilon component along t(s) = t0 + s (t1 - t0) by
// adaptive subdivision with exact certification: an interval is accepted when
// the midpoint value is collinear and both half-interval difference quotients
// occur among the generator-grading difference quotients.  Intervals that
// exhaust the depth budget are kept but flagged uncertified.
std::vector<PLFunction> reconstruct_segment(const Evaluator& ev,
                                            const WeightVector& t0,
                                            const WeightVector& t1,
                                            const ReconstructOptions& opts = {});

// The jump of the derivative of Upsilon along the line t^i_a (t_j = a for
// j != i, t_i = 2 - (n-1) a) of a theta complex, in a-units: right slope
// minus left slope at a.  E_SHAPE_MISMATCH for non-theta carriers or fewer
// than two edges; E_BOUNDARY unless 0 < a < 2/(n-1); E_UNCERTIFIED when no
// bracket certifies.
struct JumpValue {
    int i = 0;
    Rat a;
    Rat delta;
};
JumpValue jump_delta_i(const Evaluator& ev, int i, const Rat& a,
                       const ReconstructOptions& opts = {});

// Matrix of one-sided derivatives at the matching vertices: entry (i, j),
// i != j, is the slope of Upsilon at vertex t^i in the direction that trades
// edge i for edge j (equal to minus tau of the associated knot).  Diagonal
// entries are absent (represented as an n x n table of optional values).
std::vector<std::vector<std::pair<bool, Rat>>> tau_matrix(
    const Evaluator& ev, const ReconstructOptions& opts = {});

// First K components of the jump homomorphism along edge i:
// f_i[k] = Delta_i Upsilon(t^i_{a_k}) / ((2k+1)(n-1)) with
// a_k = 2 / ((2k+1)(n-1)), k = 1..K.
std::vector<Rat> f_i_components(const Evaluator& ev, int i, int K,
                                const ReconstructOptions& opts = {});

}  // namespace gu
