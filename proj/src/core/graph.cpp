#include "core/graph.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace gu {

namespace {

// Union-find over an index range.
struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(int a, int b) { parent[find(a)] = find(b); }
};

}  // namespace

LabeledGraph validate_graph(const std::vector<std::string>& pos,
                            const std::vector<std::string>& neg,
                            const std::vector<RawEdge>& raw_edges) {
    if (pos.empty() && neg.empty()) fail("E_PARSE", "graph has no vertices");

    LabeledGraph g;
    g.pos = pos;
    g.neg = neg;

    std::map<std::string, int> pos_idx, neg_idx;
    for (size_t i = 0; i < pos.size(); ++i) {
        if (!pos_idx.emplace(pos[i], static_cast<int>(i)).second)
            fail("E_PARSE", "duplicate vertex id \"" + pos[i] + "\" in the positive part");
        if (neg_idx.count(pos[i]))
            fail("E_PARSE", "vertex id \"" + pos[i] + "\" appears in both parts");
    }
    for (size_t i = 0; i < neg.size(); ++i) {
        if (pos_idx.count(neg[i]))
            fail("E_PARSE", "vertex id \"" + neg[i] + "\" appears in both parts");
        if (!neg_idx.emplace(neg[i], static_cast<int>(i)).second)
            fail("E_PARSE", "duplicate vertex id \"" + neg[i] + "\" in the negative part");
    }

    // Edge indices must be a permutation of 1..kappa.
    const int kappa = static_cast<int>(raw_edges.size());
    std::vector<const RawEdge*> by_index(kappa, nullptr);
    for (const RawEdge& e : raw_edges) {
        if (e.index < 1 || e.index > kappa)
            fail("E_INDEX", "edge index " + std::to_string(e.index) + " outside 1.." +
                                std::to_string(kappa) + " (gapped labeling)");
        if (by_index[e.index - 1])
            fail("E_INDEX", "duplicate edge index " + std::to_string(e.index));
        by_index[e.index - 1] = &e;
    }

    g.edges.resize(kappa);
    for (int j = 0; j < kappa; ++j) {
        const RawEdge& e = *by_index[j];
        const bool a_pos = pos_idx.count(e.end_a), a_neg = neg_idx.count(e.end_a);
        const bool b_pos = pos_idx.count(e.end_b), b_neg = neg_idx.count(e.end_b);
        if ((!a_pos && !a_neg) || (!b_pos && !b_neg))
            fail("E_PARSE", "edge " + std::to_string(j + 1) + " references an unknown vertex");
        if ((a_pos && b_pos) || (a_neg && b_neg))
            fail("E_BIPARTITE", "edge " + std::to_string(j + 1) +
                                    " joins two vertices of the same part",
                 {{"edge", j + 1}});
        const std::string& nv = a_neg ? e.end_a : e.end_b;
        const std::string& pv = a_pos ? e.end_a : e.end_b;
        g.edges[j] = {neg_idx[nv], pos_idx[pv]};
    }

    g.pos_inc.assign(pos.size(), {});
    g.neg_inc.assign(neg.size(), {});
    for (int j = 0; j < kappa; ++j) {
        g.neg_inc[g.edges[j].first].push_back(j + 1);
        g.pos_inc[g.edges[j].second].push_back(j + 1);
    }
    for (size_t i = 0; i < pos.size(); ++i)
        if (g.pos_inc[i].empty())
            fail("E_ISOLATED", "vertex \"" + pos[i] + "\" meets no edge");
    for (size_t i = 0; i < neg.size(); ++i)
        if (g.neg_inc[i].empty())
            fail("E_ISOLATED", "vertex \"" + neg[i] + "\" meets no edge");

    // Connected components over the union of both parts (neg after pos).
    UnionFind uf(static_cast<int>(pos.size() + neg.size()));
    for (const auto& [nv, pv] : g.edges) uf.unite(pv, static_cast<int>(pos.size()) + nv);

    std::map<int, int> root_to_comp;
    auto comp_id = [&](int root) {
        auto it = root_to_comp.find(root);
        if (it != root_to_comp.end()) return it->second;
        const int id = static_cast<int>(root_to_comp.size());
        root_to_comp.emplace(root, id);
        return id;
    };
    g.comp_of_pos.resize(pos.size());
    g.comp_of_neg.resize(neg.size());
    for (size_t i = 0; i < pos.size(); ++i) g.comp_of_pos[i] = comp_id(uf.find(static_cast<int>(i)));
    for (size_t i = 0; i < neg.size(); ++i)
        g.comp_of_neg[i] = comp_id(uf.find(static_cast<int>(pos.size() + i)));
    g.n_components = static_cast<int>(root_to_comp.size());

    // Balance: equal part sizes within every component.
    std::vector<int> balance(g.n_components, 0);
    for (int c : g.comp_of_pos) balance[c] += 1;
    for (int c : g.comp_of_neg) balance[c] -= 1;
    for (int c = 0; c < g.n_components; ++c)
        if (balance[c] != 0)
            fail("E_UNBALANCED",
                 "component " + std::to_string(c) + " has unequal part sizes", {{"component", c}});

    return g;
}

LabeledGraph validate_graph(const std::vector<std::string>& pos,
                            const std::vector<std::string>& neg,
                            const std::vector<std::pair<std::string, std::string>>& edges) {
    std::vector<RawEdge> raw;
    raw.reserve(edges.size());
    for (size_t j = 0; j < edges.size(); ++j)
        raw.push_back({static_cast<int>(j + 1), edges[j].first, edges[j].second});
    return validate_graph(pos, neg, raw);
}

std::vector<Matching> enumerate_matchings(const LabeledGraph& g) {
    std::vector<Matching> out;
    std::vector<char> pos_used(g.pos.size(), 0);
    std::vector<int> chosen;  // edge id chosen per negative vertex

    // Backtracking over negative vertices in index order.
    auto rec = [&](auto&& self, size_t nv) -> void {
        if (nv == g.neg.size()) {
            Matching m{chosen};
            std::sort(m.edge_ids.begin(), m.edge_ids.end());
            out.push_back(std::move(m));
            return;
        }
        for (int e : g.neg_inc[nv]) {
            const int pv = g.edges[e - 1].second;
            if (pos_used[pv]) continue;
            pos_used[pv] = 1;
            chosen.push_back(e);
            self(self, nv + 1);
            chosen.pop_back();
            pos_used[pv] = 0;
        }
    };
    rec(rec, 0);

    std::sort(out.begin(), out.end(), [](const Matching& a, const Matching& b) {
        return a.canonical_id() < b.canonical_id();
    });
    return out;
}

std::vector<Rat> matching_weight(const LabeledGraph& g, const Matching& m) {
    std::vector<char> in_m(g.kappa() + 1, 0);
    for (int e : m.edge_ids) {
        if (e < 1 || e > g.kappa())
            fail("E_NOT_MATCHING", "edge index " + std::to_string(e) + " out of range");
        if (in_m[e]) fail("E_NOT_MATCHING", "edge index " + std::to_string(e) + " repeated");
        in_m[e] = 1;
    }
    // Perfect: every vertex meets exactly one chosen edge.
    auto check_side = [&](const std::vector<std::vector<int>>& inc, const char* side) {
        for (size_t v = 0; v < inc.size(); ++v) {
            int hits = 0;
            for (int e : inc[v]) hits += in_m[e];
            if (hits != 1)
                fail("E_NOT_MATCHING", std::string("vertex ") + side + std::to_string(v) +
                                           " is covered " + std::to_string(hits) + " times");
        }
    };
    check_side(g.pos_inc, "+");
    check_side(g.neg_inc, "-");

    std::vector<Rat> t(g.kappa(), Rat(0));
    for (int e : m.edge_ids) t[e - 1] = Rat(2);
    return t;
}

bool coloring_ideal_is_trivial(const LabeledGraph& g) {
    // Per component, compare the mod-2 multiset of vertex monomials (sorted
    // incident edge lists) between the two parts: the generator is
    // sum_+ u(v) - sum_- u(v), which vanishes over F2 exactly when every
    // monomial occurs an even number of times in total.
    for (int c = 0; c < g.n_components; ++c) {
        std::map<std::vector<int>, int> parity;
        for (size_t v = 0; v < g.pos.size(); ++v)
            if (g.comp_of_pos[v] == c) parity[g.pos_inc[v]] ^= 1;
        for (size_t v = 0; v < g.neg.size(); ++v)
            if (g.comp_of_neg[v] == c) parity[g.neg_inc[v]] ^= 1;
        for (const auto& [mono, odd] : parity)
            if (odd) return false;
    }
    return true;
}

}  // namespace gu
