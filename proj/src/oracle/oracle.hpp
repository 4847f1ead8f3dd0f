#pragma once

#include <utility>
#include <vector>

#include "core/graph.hpp"
#include "core/homology.hpp"

namespace gu {

// Persistence-style description of the homology: infinite bars carry the
// grading of a free generator, finite bars a (birth grading, length) pair.
struct Barcode {
    std::vector<Rat> infinite_bars;                // sorted ascending
    std::vector<std::pair<Rat, Rat>> finite_bars;  // (birth, length), sorted
};

// Exhaustive matching enumeration over all 2^kappa edge subsets.
// E_TOO_LARGE when kappa > 20.
std::vector<Matching> brute_matchings(const LabeledGraph& g);

// Independent homology computation: clear denominators of the gradings, sort
// generators by scaled grading (descending, ids break ties), run left-to-right
// column reduction over F2 with implied monomial coefficients, express the
// image over the kernel basis and column-reduce the resulting presentation.
Barcode persistence_reduce(const TModifiedComplex& tc);

}  // namespace gu
