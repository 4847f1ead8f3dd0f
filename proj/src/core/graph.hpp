#pragma once

#include <string>
#include <utility>
#include <vector>

#include "core/rational.hpp"

namespace gu {

// A labeled balanced bipartite multigraph.  Vertices are split into a positive
// and a negative part; every edge joins a negative vertex to a positive one and
// carries a fixed 1-based index (its position in `edges`).  The edge order is
// the authoritative labeling used by weight vectors and monomial exponents.
struct LabeledGraph {
    std::vector<std::string> pos;                // + vertex ids
    std::vector<std::string> neg;                // − vertex ids
    std::vector<std::pair<int, int>> edges;      // (neg idx, pos idx), 0-based endpoints

    // Derived incidence and connectivity data, filled by validate_graph.
    std::vector<std::vector<int>> pos_inc;       // 1-based edge ids at each + vertex
    std::vector<std::vector<int>> neg_inc;       // 1-based edge ids at each − vertex
    std::vector<int> comp_of_pos, comp_of_neg;   // component id per vertex
    int n_components = 0;

    int kappa() const { return static_cast<int>(edges.size()); }
    int n_pos() const { return static_cast<int>(pos.size()); }

    // Θ-type: two vertices joined by kappa parallel edges.
    bool is_theta() const { return pos.size() == 1 && neg.size() == 1; }
};

// A perfect matching, stored as its increasing list of 1-based edge indices.
struct Matching {
    std::vector<int> edge_ids;

    std::string canonical_id() const {
        std::string s;
        for (size_t i = 0; i < edge_ids.size(); ++i) {
            if (i) s.push_back('-');
            s += std::to_string(edge_ids[i]);
        }
        return s;
    }
};

// One raw edge of a graph description: explicit 1-based index plus endpoint ids.
// JSON input derives indices from array positions; the index is carried
// separately so that validation can reject duplicate or gapped labelings.
struct RawEdge {
    int index;
    std::string end_a;
    std::string end_b;
};

// Validates a raw description into a LabeledGraph.
// Violations raise DomainError: E_PARSE (unknown/duplicate vertex ids),
// E_INDEX (duplicate or gapped edge indices), E_BIPARTITE (edge within one
// part), E_UNBALANCED (component with unequal part sizes), E_ISOLATED
// (vertex meeting no edge; such graphs carry no tangle strand there).
LabeledGraph validate_graph(const std::vector<std::string>& pos,
                            const std::vector<std::string>& neg,
                            const std::vector<RawEdge>& raw_edges);

// Convenience overload: endpoints only, indices taken from list positions.
LabeledGraph validate_graph(const std::vector<std::string>& pos,
                            const std::vector<std::string>& neg,
                            const std::vector<std::pair<std::string, std::string>>& edges);

// All perfect matchings, duplicate-free, sorted by canonical_id.
// Backtracks over the negative vertices in index order; empty result when the
// graph has no perfect matching.
std::vector<Matching> enumerate_matchings(const LabeledGraph& g);

// Weight vector of a matching: 2 on matching edges, 0 elsewhere.
// E_NOT_MATCHING when m is not a perfect matching of g.
std::vector<Rat> matching_weight(const LabeledGraph& g, const Matching& m);

// True when every component's coloring-ideal generator vanishes, i.e. the two
// mod-2 sums of vertex monomials u(v) = prod of edge variables at v agree on
// the + and − sides.  Exactly these graphs carry complexes over the free
// polynomial coloring ring.
bool coloring_ideal_is_trivial(const LabeledGraph& g);

}  // namespace gu
