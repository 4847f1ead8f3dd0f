#include "core/homology.hpp"

#include <algorithm>

#include "core/errors.hpp"
#include "core/weight_ring.hpp"

namespace gu {

Evaluator::Evaluator(TangleComplex c) : complex(std::move(c)) {
    require_valid(complex);
    dc = build_delta_complex(complex.graph);
    if (complex.n < 1 || complex.n > 24)
        fail("E_RANGE", "the number of boundary pairs must lie in 1..24",
             nlohmann::json{{"n", complex.n}});
    upsilon_len = 1 << (complex.n - 1);

    // Align gradings with the canonical matching order once.
    gr_aligned.assign(complex.generators.size(),
                      std::vector<Rat>(dc.matchings.size()));
    for (size_t g = 0; g < complex.generators.size(); ++g)
        for (size_t m = 0; m < dc.matchings.size(); ++m) {
            const std::string key = dc.matchings[m].canonical_id();
            for (const auto& [k, v] : complex.generators[g].gr)
                if (k == key) {
                    gr_aligned[g][m] = v;
                    break;
                }
        }
}

std::vector<Rat> Evaluator::gr_at(const WeightVector& t) const {
    const Location loc = locate(dc, t);
    std::vector<Rat> out(complex.generators.size(), Rat(0));
    for (size_t g = 0; g < out.size(); ++g)
        for (size_t j = 0; j < loc.simplex.size(); ++j)
            out[g] += loc.bary[j] * gr_aligned[g][loc.simplex[j]];
    return out;
}

TModifiedComplex Evaluator::t_modify(const WeightVector& t) const {
    TModifiedComplex tc;
    tc.t = t;
    tc.gr = gr_at(t);
    for (const auto& g : complex.generators) tc.ids.push_back(g.id);

    // Arrows between the same pair may cancel mod 2 after specialization, so
    // accumulate full Hahn sums first.
    std::map<std::pair<int, int>, HahnElement> sums;
    for (const auto& a : complex.arrows)
        sums[{a.from, a.to}] =
            hahn_add(sums[{a.from, a.to}], specialize(a.exp, t));

    for (const auto& [key, h] : sums) {
        if (h.empty()) continue;
        const Rat expected = tc.gr[key.second] - tc.gr[key.first] + 1;
        if (h.size() != 1 || h[0] != expected || expected < 0)
            fail("E_INHOMOGENEOUS",
                 "specialized entry '" + tc.ids[key.first] + "' -> '" +
                     tc.ids[key.second] +
                     "' is not the homogeneous monomial u^{gr_t(y) - gr_t(x) + 1}",
                 nlohmann::json{{"from", tc.ids[key.first]},
                                {"to", tc.ids[key.second]},
                                {"entry", hahn_str(h)},
                                {"expected_exponent", rat_str(expected)}});
        tc.entries[key] = h[0];
    }
    return tc;
}

namespace {

// Sparse matrix with synchronized row and column views.
struct Working {
    std::vector<std::map<int, Rat>> row;  // row[x][y] = exponent of x -> y
    std::vector<std::map<int, Rat>> col;  // col[y][x] = same entry
    const std::vector<std::string>* ids = nullptr;

    // Adds u^e at (x, y) over F2: an equal-exponent collision cancels; a
    // different exponent would break homogeneity, which valid input cannot do.
    void add(int x, int y, const Rat& e) {
        auto it = row[x].find(y);
        if (it == row[x].end()) {
            row[x][y] = e;
            col[y][x] = e;
            return;
        }
        if (it->second != e)
            fail("E_INHOMOGENEOUS",
                 "reduction produced two different exponents at one entry; "
                 "the input complex is not homogeneous",
                 nlohmann::json{{"from", (*ids)[x]}, {"to", (*ids)[y]}});
        row[x].erase(y);
        col[y].erase(x);
    }
};

}  // namespace

HomologyStructure reduce(const TModifiedComplex& tc) {
    const int G = static_cast<int>(tc.ids.size());
    Working w;
    w.row.resize(G);
    w.col.resize(G);
    w.ids = &tc.ids;
    for (const auto& [key, e] : tc.entries) {
        w.row[key.first][key.second] = e;
        w.col[key.second][key.first] = e;
    }

    std::vector<bool> alive(G, true);
    HomologyStructure out;

    for (;;) {
        // Pivot: minimal valuation among non-diagonal live entries, ties by
        // (source id, target id).
        int px = -1, py = -1;
        Rat pe;
        bool any_entry = false;
        for (int x = 0; x < G; ++x) {
            if (!alive[x]) continue;
            for (const auto& [y, e] : w.row[x]) {
                any_entry = true;
                if (x == y) continue;
                const bool better =
                    px < 0 || e < pe ||
                    (e == pe && (tc.ids[x] < tc.ids[px] ||
                                 (tc.ids[x] == tc.ids[px] &&
                                  tc.ids[y] < tc.ids[py])));
                if (better) {
                    px = x;
                    py = y;
                    pe = e;
                }
            }
        }
        if (px < 0) {
            if (any_entry)
                fail("E_D_SQUARED",
                     "reduction reached a state with only diagonal entries; "
                     "the input differential does not square to zero");
            break;
        }

        const int x = px, y = py;
        const Rat a = pe;

        // Change of basis e_w += u^{c-a} e_x for every other entry w -> y:
        // clears column y; the mirrored column update may seed new entries.
        {
            const auto col_y = w.col[y];
            for (const auto& [ww, c] : col_y) {
                if (ww == x) continue;
                const Rat shift = c - a;
                const auto row_x = w.row[x];
                for (const auto& [v, e] : row_x) w.add(ww, v, e + shift);
                const auto col_w = w.col[ww];
                for (const auto& [u, e] : col_w) w.add(u, x, e + shift);
            }
        }

        // Change of basis e_y += u^{d-a} e_v for every other entry x -> v:
        // clears row x.  The diagonal slot (x, x) cannot be occupied here on
        // valid input, so ordering within the row is immaterial.
        {
            const auto row_x0 = w.row[x];
            for (const auto& [v, d] : row_x0) {
                if (v == y) continue;
                const Rat shift = d - a;
                const auto row_v = w.row[v];
                for (const auto& [z, e] : row_v) w.add(y, z, e + shift);
                const auto col_y = w.col[y];
                for (const auto& [u, e] : col_y) w.add(u, v, e + shift);
            }
        }

        // d^2 = 0 forces the cancelled pair to detach completely.
        const bool clean = w.row[x].size() == 1 && w.row[x].count(y) == 1 &&
                           w.col[y].size() == 1 && w.col[y].count(x) == 1 &&
                           w.row[y].empty() && w.col[x].empty();
        if (!clean)
            fail("E_D_SQUARED",
                 "cancellation left residual entries; the input differential "
                 "does not square to zero",
                 nlohmann::json{{"from", tc.ids[x]}, {"to", tc.ids[y]}});

        w.row[x].clear();
        w.col[y].clear();
        alive[x] = alive[y] = false;
        if (a > 0) out.torsion.push_back({tc.gr[y], a});
    }

    for (int g = 0; g < G; ++g)
        if (alive[g]) out.free_gradings.push_back(tc.gr[g]);
    std::sort(out.free_gradings.begin(), out.free_gradings.end());
    std::sort(out.torsion.begin(), out.torsion.end());
    return out;
}

std::vector<Rat> Evaluator::upsilon_at(const WeightVector& t) const {
    HomologyStructure h = reduce(t_modify(t));
    if (static_cast<int>(h.free_gradings.size()) != upsilon_len)
        fail("E_RANK",
             "free rank does not match the boundary contract 2^(n-1)",
             nlohmann::json{{"expected", upsilon_len},
                            {"got", h.free_gradings.size()}});
    return h.free_gradings;
}

Rat d_invariant(const Evaluator& ev) {
    const auto& g = ev.complex.graph;
    if (!g.is_theta() || g.kappa() != 1)
        fail("E_SHAPE_MISMATCH",
             "the d-invariant requires a one-edge theta complex",
             nlohmann::json{{"kappa", g.kappa()}});
    return ev.upsilon_at({Rat(2)})[0];
}

}  // namespace gu
