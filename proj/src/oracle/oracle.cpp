#include "oracle/oracle.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "core/errors.hpp"

namespace gu {

std::vector<Matching> brute_matchings(const LabeledGraph& g) {
    const size_t kappa = g.kappa();
    if (kappa > 20)
        fail("E_TOO_LARGE", "exhaustive enumeration is limited to 20 edges",
             nlohmann::json{{"kappa", kappa}});
    std::vector<Matching> out;
    for (unsigned long mask = 0; mask < (1ul << kappa); ++mask) {
        std::vector<int> deg_pos(g.pos.size(), 0), deg_neg(g.neg.size(), 0);
        for (size_t e = 0; e < kappa; ++e)
            if (mask >> e & 1) {
                ++deg_neg[g.edges[e].first];
                ++deg_pos[g.edges[e].second];
            }
        bool perfect = true;
        for (int d : deg_pos) perfect = perfect && d == 1;
        for (int d : deg_neg) perfect = perfect && d == 1;
        if (!perfect) continue;
        Matching m;
        for (size_t e = 0; e < kappa; ++e)
            if (mask >> e & 1) m.edge_ids.push_back(static_cast<int>(e) + 1);
        out.push_back(std::move(m));
    }
    std::sort(out.begin(), out.end(), [](const Matching& a, const Matching& b) {
        return a.canonical_id() < b.canonical_id();
    });
    return out;
}

namespace {

// F2 set arithmetic: symmetric difference accumulated into `a`.
void set_xor(std::set<int>& a, const std::set<int>& b) {
    for (int v : b) {
        auto [it, inserted] = a.insert(v);
        if (!inserted) a.erase(it);
    }
}

}  // namespace

Barcode persistence_reduce(const TModifiedComplex& tc) {
    const int G = static_cast<int>(tc.ids.size());
    Barcode out;
    if (G == 0) return out;

    // Scale all gradings to integers; every entry exponent is a grading
    // difference plus one, hence also integral after scaling.
    mpz_class N = 1;
    for (const auto& g : tc.gr) N = lcm(N, g.get_den());
    std::vector<mpz_class> gh(G);
    for (int i = 0; i < G; ++i) {
        Rat scaled = tc.gr[i] * Rat(N);
        gh[i] = scaled.get_num();
    }

    // Birth order: scaled grading descending, generator id ascending.
    std::vector<int> ord(G);
    for (int i = 0; i < G; ++i) ord[i] = i;
    std::sort(ord.begin(), ord.end(), [&](int a, int b) {
        if (gh[a] != gh[b]) return gh[a] > gh[b];
        return tc.ids[a] < tc.ids[b];
    });
    std::vector<int> pos(G);
    for (int i = 0; i < G; ++i) pos[ord[i]] = i;
    std::vector<mpz_class> grow(G);  // scaled grading by sorted position
    for (int i = 0; i < G; ++i) grow[i] = gh[ord[i]];

    // Boundary columns in sorted coordinates.  The coefficient of row i in
    // column j is always v^{grow[i] - grow[j] + N}, so plain row sets suffice.
    std::vector<std::set<int>> col(G);
    for (const auto& [key, e] : tc.entries) {
        (void)e;
        col[pos[key.first]].insert(pos[key.second]);
    }

    // Step A: standard left-to-right reduction.  Adding an earlier column
    // multiplies it by v^{grow[j'] ... } with a nonnegative exponent, so every
    // operation is legal over the valuation ring.
    std::vector<std::set<int>> reduced = col;
    std::vector<std::set<int>> V(G);
    for (int j = 0; j < G; ++j) V[j].insert(j);
    std::map<int, int> pivot_of_low;       // low row -> column
    std::vector<int> kernel_cols;          // columns with reduced[j] empty
    for (int j = 0; j < G; ++j) {
        while (!reduced[j].empty()) {
            const int low = *reduced[j].rbegin();
            auto it = pivot_of_low.find(low);
            if (it == pivot_of_low.end()) {
                pivot_of_low[low] = j;
                break;
            }
            set_xor(reduced[j], reduced[it->second]);
            set_xor(V[j], V[it->second]);
        }
        if (reduced[j].empty()) kernel_cols.push_back(j);
    }

    // Kernel basis: V[j] for kernel columns; element j has top index j.
    std::map<int, int> kernel_index_of_top;
    for (size_t k = 0; k < kernel_cols.size(); ++k)
        kernel_index_of_top[kernel_cols[k]] = static_cast<int>(k);

    // Step B: express every nonzero reduced column over the kernel basis by
    // top elimination; the result is one presentation column per image
    // generator, with uniform shift N - grow[j].
    struct PCol {
        std::set<int> rows;  // kernel indices
        mpz_class shift;
    };
    std::vector<PCol> pres;
    for (int j = 0; j < G; ++j) {
        if (reduced[j].empty()) continue;
        std::set<int> x = reduced[j];
        PCol pc;
        pc.shift = N - grow[j];
        while (!x.empty()) {
            const int top = *x.rbegin();
            auto it = kernel_index_of_top.find(top);
            if (it == kernel_index_of_top.end())
                fail("E_D_SQUARED",
                     "an image element does not lie in the kernel; the input "
                     "differential does not square to zero");
            pc.rows.insert(it->second);
            set_xor(x, V[kernel_cols[it->second]]);
        }
        pres.push_back(std::move(pc));
    }

    // Step C: column-reduce the presentation to distinct lows.  On a low
    // collision the column whose low entry has the larger exponent absorbs
    // the other (the only direction with a nonnegative multiplier).
    std::map<int, int> pres_pivot;  // low kernel row -> index into `final_cols`
    std::vector<PCol> final_cols;
    for (auto cur : pres) {
        for (;;) {
            if (cur.rows.empty()) break;
            const int low = *cur.rows.rbegin();
            auto it = pres_pivot.find(low);
            if (it == pres_pivot.end()) {
                pres_pivot[low] = static_cast<int>(final_cols.size());
                final_cols.push_back(std::move(cur));
                break;
            }
            PCol& piv = final_cols[it->second];
            if (cur.shift >= piv.shift) {
                set_xor(cur.rows, piv.rows);
            } else {
                std::swap(cur, piv);
            }
        }
    }

    // Read off: for pivot columns, the low row is a torsion (or instantly
    // killed) kernel generator; the remaining kernel rows are free.
    std::set<int> killed;
    for (const auto& [low, idx] : pres_pivot) {
        killed.insert(low);
        const PCol& pc = final_cols[idx];
        const mpz_class birth = grow[kernel_cols[low]];
        const mpz_class order = birth + pc.shift;
        if (order < 0)
            fail("E_D_SQUARED", "negative torsion order in oracle reduction");
        if (order > 0)
            out.finite_bars.push_back(
                {Rat(birth) / Rat(N), Rat(order) / Rat(N)});
    }
    for (size_t k = 0; k < kernel_cols.size(); ++k)
        if (!killed.count(static_cast<int>(k)))
            out.infinite_bars.push_back(Rat(grow[kernel_cols[k]]) / Rat(N));

    std::sort(out.infinite_bars.begin(), out.infinite_bars.end());
    std::sort(out.finite_bars.begin(), out.finite_bars.end());
    return out;
}

}  // namespace gu
