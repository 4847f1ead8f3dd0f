#include "core/polytope.hpp"

#include <algorithm>
#include <set>

namespace gu {

namespace {

// Row-echelon rank of a rational matrix (destructive).
int rank_of(std::vector<std::vector<Rat>> rows) {
    if (rows.empty()) return 0;
    const size_t cols = rows[0].size();
    int rank = 0;
    size_t col = 0;
    for (size_t r = 0; r < rows.size() && col < cols; ++col) {
        size_t piv = r;
        while (piv < rows.size() && rows[piv][col] == 0) ++piv;
        if (piv == rows.size()) continue;
        std::swap(rows[r], rows[piv]);
        for (size_t k = r + 1; k < rows.size(); ++k) {
            if (rows[k][col] == 0) continue;
            const Rat f = rows[k][col] / rows[r][col];
            for (size_t c = col; c < cols; ++c) rows[k][c] -= f * rows[r][c];
        }
        ++r;
        ++rank;
    }
    return rank;
}

// Lexicographic order on coordinate vectors, left to right.
bool lex_less(const WeightVector& a, const WeightVector& b) {
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] != b[i]) return a[i] < b[i];
    }
    return false;
}

}  // namespace

int affine_dimension(const std::vector<WeightVector>& pts) {
    if (pts.empty()) return -1;
    std::vector<std::vector<Rat>> diffs;
    for (size_t i = 1; i < pts.size(); ++i) {
        std::vector<Rat> d(pts[i].size());
        for (size_t c = 0; c < d.size(); ++c) d[c] = pts[i][c] - pts[0][c];
        diffs.push_back(std::move(d));
    }
    if (diffs.empty()) return 0;
    return rank_of(std::move(diffs));
}

SolutionPolytope solution_polytope(const LabeledGraph& g) {
    SolutionPolytope p;
    p.matchings = enumerate_matchings(g);
    for (const Matching& m : p.matchings) p.vertices.push_back(matching_weight(g, m));
    p.dim = affine_dimension(p.vertices);
    return p;
}

bool contains(const LabeledGraph& g, const WeightVector& t) {
    if (static_cast<int>(t.size()) != g.kappa()) return false;
    for (const Rat& x : t)
        if (x < 0) return false;
    auto sums_ok = [&](const std::vector<std::vector<int>>& inc) {
        for (const auto& edges_at_v : inc) {
            Rat s(0);
            for (int e : edges_at_v) s += t[e - 1];
            if (s != 2) return false;
        }
        return true;
    };
    return sums_ok(g.pos_inc) && sums_ok(g.neg_inc);
}

namespace {

// Deterministic cycle in the fractional-edge subgraph: walk from the
// lowest-index fractional edge, always leaving along the lowest-index
// fractional edge other than the arrival edge, until a vertex repeats.
// Encoded vertices: positive v -> v, negative v -> n_pos + v.
std::vector<int> fractional_cycle(const LabeledGraph& g, const WeightVector& t) {
    const int P = g.n_pos();
    auto is_frac = [&](int e) { return t[e - 1] > 0 && t[e - 1] < 2; };

    int start_edge = -1;
    for (int e = 1; e <= g.kappa(); ++e)
        if (is_frac(e)) {
            start_edge = e;
            break;
        }
    if (start_edge < 0) fail("E_NOT_IN_POLYTOPE", "no fractional edge to cycle through");

    auto incident = [&](int vertex_code) -> const std::vector<int>& {
        return vertex_code < P ? g.pos_inc[vertex_code] : g.neg_inc[vertex_code - P];
    };
    auto other_end = [&](int e, int vertex_code) {
        const auto& [nv, pv] = g.edges[e - 1];
        return vertex_code < P ? P + nv : pv;
    };

    std::vector<int> path_edges{start_edge};
    std::vector<int> path_verts;  // vertex before each edge crossing
    int cur = P + g.edges[start_edge - 1].first;  // start at the neg endpoint
    path_verts.push_back(cur);
    cur = other_end(start_edge, cur);

    std::map<int, size_t> first_seen;
    first_seen[path_verts[0]] = 0;
    while (!first_seen.count(cur)) {
        first_seen[cur] = path_verts.size();
        path_verts.push_back(cur);

        int next = -1;
        for (int e : incident(cur))
            if (e != path_edges.back() && is_frac(e)) {
                next = e;
                break;
            }
        // Every vertex meeting a fractional edge meets at least two of them
        // (its weights sum to 2), so the walk can always continue.
        if (next < 0) fail("E_NOT_IN_POLYTOPE", "fractional subgraph is not degree-regular");
        path_edges.push_back(next);
        cur = other_end(next, cur);
    }

    // The cycle is the walk segment between the two visits of `cur`.
    const size_t from = first_seen[cur];
    return std::vector<int>(path_edges.begin() + static_cast<long>(from), path_edges.end());
}

}  // namespace

ConvexCombination decompose_to_matchings(const LabeledGraph& g, const WeightVector& t) {
    if (!contains(g, t)) fail("E_NOT_IN_POLYTOPE", "weight vector outside the polytope");

    std::map<std::string, std::pair<Matching, Rat>> acc;
    std::vector<std::pair<WeightVector, Rat>> stack{{t, Rat(1)}};
    while (!stack.empty()) {
        auto [w, coeff] = std::move(stack.back());
        stack.pop_back();

        bool integral = true;
        for (const Rat& x : w)
            if (x != 0 && x != 2) {
                integral = false;
                break;
            }
        if (integral) {
            Matching m;
            for (int e = 1; e <= g.kappa(); ++e)
                if (w[e - 1] == 2) m.edge_ids.push_back(e);
            auto [it, fresh] = acc.emplace(m.canonical_id(), std::make_pair(m, coeff));
            if (!fresh) it->second.second += coeff;
            continue;
        }

        // Split along a cycle of fractional edges: raise odd positions /
        // lower even positions until the even minimum hits 0 (w1), and the
        // reverse until the odd minimum hits 0 (w2); then
        // w = (t_o * w1 + t_e * w2) / (t_o + t_e).
        const std::vector<int> cycle = fractional_cycle(g, w);
        Rat t_odd, t_even;
        bool first_odd = true, first_even = true;
        for (size_t pos = 0; pos < cycle.size(); ++pos) {
            const Rat& x = w[cycle[pos] - 1];
            if (pos % 2 == 0) {  // 1-based odd position
                if (first_odd || x < t_odd) t_odd = x;
                first_odd = false;
            } else {
                if (first_even || x < t_even) t_even = x;
                first_even = false;
            }
        }
        WeightVector w1 = w, w2 = w;
        for (size_t pos = 0; pos < cycle.size(); ++pos) {
            const int i = cycle[pos] - 1;
            if (pos % 2 == 0) {
                w1[i] += t_even;
                w2[i] -= t_odd;
            } else {
                w1[i] -= t_even;
                w2[i] += t_odd;
            }
        }
        const Rat total = t_odd + t_even;
        stack.emplace_back(std::move(w1), coeff * t_odd / total);
        stack.emplace_back(std::move(w2), coeff * t_even / total);
    }

    ConvexCombination out;
    for (auto& [id, term] : acc) out.terms.push_back(std::move(term));
    return out;
}

WeightVector loop_move(const LabeledGraph& g, const WeightVector& t,
                       const std::vector<int>& cycle) {
    if (static_cast<int>(t.size()) != g.kappa())
        fail("E_PARSE", "weight vector length does not match the graph");
    // Only the vertex-sum equations are required of the input; signs are free.
    auto sums_ok = [&](const std::vector<std::vector<int>>& inc) {
        for (const auto& edges_at_v : inc) {
            Rat s(0);
            for (int e : edges_at_v) s += t[e - 1];
            if (s != 2) return false;
        }
        return true;
    };
    if (!sums_ok(g.pos_inc) || !sums_ok(g.neg_inc))
        fail("E_PARSE", "weight vector violates the vertex-sum equations");

    if (cycle.size() < 2 || cycle.size() % 2 != 0)
        fail("E_NOT_A_LOOP", "cycle must list an even number (>= 2) of edges");
    std::set<int> seen;
    for (int e : cycle) {
        if (e < 1 || e > g.kappa()) fail("E_NOT_A_LOOP", "edge index out of range");
        if (!seen.insert(e).second) fail("E_NOT_A_LOOP", "edge repeated in cycle");
    }

    // The edges must close up as an alternating walk; try both traversal
    // phases of the first edge.
    const int P = g.n_pos();
    auto walk_closes = [&](bool start_at_neg) {
        const auto& [nv0, pv0] = g.edges[cycle[0] - 1];
        int start = start_at_neg ? P + nv0 : pv0;
        int cur = start_at_neg ? pv0 : P + nv0;  // crossed the first edge
        for (size_t k = 1; k < cycle.size(); ++k) {
            const auto& [nv, pv] = g.edges[cycle[k] - 1];
            if (cur < P) {  // at a positive vertex: next edge must meet it
                if (pv != cur) return false;
                cur = P + nv;
            } else {
                if (P + nv != cur) return false;
                cur = pv;
            }
        }
        return cur == start;
    };
    if (!walk_closes(true) && !walk_closes(false))
        fail("E_NOT_A_LOOP", "edge sequence does not close up alternately");

    WeightVector out = t;
    const Rat shift = t[cycle[0] - 1];
    out[cycle[0] - 1] = 0;
    for (size_t j = 1; j < cycle.size(); ++j) {
        if (j % 2 == 1)
            out[cycle[j] - 1] += shift;
        else
            out[cycle[j] - 1] -= shift;
    }
    return out;
}

namespace {

struct Builder {
    const SolutionPolytope& poly;
    DeltaComplex& dc;
    std::map<std::vector<int>, int> face_ids;            // vertex set -> face id
    std::map<std::vector<int>, std::vector<std::vector<int>>> top_cache;

    // Triangulates the face spanned by `verts` (ascending polytope-vertex
    // indices), returning its top simplices; builds the face node tree.
    std::vector<std::vector<int>> triangulate(const std::vector<int>& verts, int* face_id_out) {
        if (auto it = face_ids.find(verts); it != face_ids.end()) {
            *face_id_out = it->second;
            return top_cache[verts];
        }
        const int id = static_cast<int>(dc.faces.size());
        dc.faces.emplace_back();
        face_ids[verts] = id;
        *face_id_out = id;

        std::vector<WeightVector> pts;
        for (int v : verts) pts.push_back(poly.vertices[v]);
        const int dim = affine_dimension(pts);

        int tmin = verts[0];
        for (int v : verts)
            if (lex_less(poly.vertices[v], poly.vertices[tmin])) tmin = v;

        std::vector<std::vector<int>> tops;
        std::vector<int> children, child_cut;
        if (dim == 0) {
            tops = {{tmin}};
        } else {
            // Facets are the maximal vertex subsets on {t_i = 0} of one lower
            // dimension; several coordinates may cut the same facet.
            const size_t kappa = poly.vertices[0].size();
            std::set<std::vector<int>> seen_facets;
            for (size_t i = 0; i < kappa; ++i) {
                std::vector<int> sub;
                for (int v : verts)
                    if (poly.vertices[v][i] == 0) sub.push_back(v);
                if (sub.empty() || sub.size() == verts.size()) continue;
                if (!seen_facets.insert(sub).second) continue;

                std::vector<WeightVector> sub_pts;
                for (int v : sub) sub_pts.push_back(poly.vertices[v]);
                if (affine_dimension(sub_pts) != dim - 1) continue;
                // ∂0: keep only facets avoiding the apex.
                if (std::binary_search(sub.begin(), sub.end(), tmin)) continue;

                int child_id = -1;
                auto child_tops = triangulate(sub, &child_id);
                children.push_back(child_id);
                child_cut.push_back(static_cast<int>(i));
                for (auto s : child_tops) {
                    s.push_back(tmin);
                    std::sort(s.begin(), s.end());
                    tops.push_back(std::move(s));
                }
            }
        }

        DeltaFace& f = dc.faces[id];
        f.verts = verts;
        f.t_min = tmin;
        f.dim = dim;
        f.children = std::move(children);
        f.child_cut = std::move(child_cut);
        top_cache[verts] = tops;
        return tops;
    }
};

}  // namespace

DeltaComplex build_delta_complex(const LabeledGraph& g) {
    SolutionPolytope poly = solution_polytope(g);
    if (poly.vertices.empty()) fail("E_EMPTY_POLYTOPE", "the graph has no perfect matching");

    DeltaComplex dc;
    dc.graph = g;
    dc.matchings = poly.matchings;
    dc.vertices = poly.vertices;
    dc.dim = poly.dim;

    std::vector<int> all(poly.vertices.size());
    for (size_t i = 0; i < all.size(); ++i) all[i] = static_cast<int>(i);

    Builder b{poly, dc, {}, {}};
    int root_id = -1;
    auto tops = b.triangulate(all, &root_id);

    // The simplex set of the complex: all faces of all top simplices.
    std::set<std::vector<int>> faces;
    for (const auto& s : tops) {
        const size_t n = s.size();
        for (unsigned mask = 1; mask < (1u << n); ++mask) {
            std::vector<int> f;
            for (size_t i = 0; i < n; ++i)
                if (mask & (1u << i)) f.push_back(s[i]);
            faces.insert(std::move(f));
        }
    }
    for (const auto& f : faces) dc.simplices[static_cast<int>(f.size()) - 1].push_back(f);
    return dc;
}

Location locate(const DeltaComplex& dc, const WeightVector& t) {
    if (!contains(dc.graph, t)) fail("E_NOT_IN_POLYTOPE", "weight vector outside the polytope");

    // Recursive ray shooting from each level's apex through t to the ∂0
    // boundary; the barycentric weight of the apex is 1 - 1/lambda.
    auto descend = [&](auto&& self, int face_id, const WeightVector& p) -> Location {
        const DeltaFace& f = dc.faces[face_id];
        const WeightVector& apex = dc.vertices[f.t_min];
        if (p == apex) return {{f.t_min}, {Rat(1)}};

        Rat lambda;
        bool bounded = false;
        for (size_t i = 0; i < p.size(); ++i) {
            if (p[i] < apex[i]) {  // coordinate decreasing along the ray
                Rat bound = apex[i] / (apex[i] - p[i]);
                if (!bounded || bound < lambda) lambda = bound;
                bounded = true;
            }
        }
        if (!bounded) fail("E_NOT_IN_POLYTOPE", "ray from the apex never leaves the face");

        WeightVector exit(p.size());
        for (size_t i = 0; i < p.size(); ++i) exit[i] = apex[i] + lambda * (p[i] - apex[i]);

        int child = -1;
        for (size_t k = 0; k < f.children.size(); ++k)
            if (exit[f.child_cut[k]] == 0) {
                child = f.children[k];
                break;
            }
        if (child < 0) fail("E_NOT_IN_POLYTOPE", "exit point misses every boundary facet");

        Location sub = self(self, child, exit);
        if (lambda == 1) return sub;  // p already lies on the ∂0 boundary

        Location out;
        const Rat inv = 1 / lambda;
        bool apex_placed = false;
        for (size_t k = 0; k <= sub.simplex.size(); ++k) {
            const bool at_end = (k == sub.simplex.size());
            if (!apex_placed && (at_end || sub.simplex[k] > f.t_min)) {
                out.simplex.push_back(f.t_min);
                out.bary.push_back(1 - inv);
                apex_placed = true;
            }
            if (!at_end) {
                out.simplex.push_back(sub.simplex[k]);
                out.bary.push_back(inv * sub.bary[k]);
            }
        }
        return out;
    };

    return descend(descend, 0, t);
}

}  // namespace gu
