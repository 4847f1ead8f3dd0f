#include "core/complex.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "core/errors.hpp"

namespace gu {

int TangleComplex::gen_index(const std::string& id) const {
    for (size_t i = 0; i < generators.size(); ++i)
        if (generators[i].id == id) return static_cast<int>(i);
    return -1;
}

namespace {

// Grading lookup aligned to a matching list; -1 entries mark missing keys.
std::vector<std::vector<int>> grading_slots(const TangleComplex& c,
                                            const std::vector<Matching>& ms) {
    std::vector<std::vector<int>> slot(c.generators.size(),
                                       std::vector<int>(ms.size(), -1));
    for (size_t g = 0; g < c.generators.size(); ++g) {
        for (size_t k = 0; k < c.generators[g].gr.size(); ++k) {
            const std::string& key = c.generators[g].gr[k].first;
            for (size_t m = 0; m < ms.size(); ++m) {
                if (ms[m].canonical_id() == key) {
                    slot[g][m] = static_cast<int>(k);
                    break;
                }
            }
        }
    }
    return slot;
}

}  // namespace

std::vector<ValidationIssue> validate_complex(const TangleComplex& c) {
    std::vector<ValidationIssue> issues;
    const auto ms = enumerate_matchings(c.graph);

    if (!coloring_ideal_is_trivial(c.graph)) {
        issues.push_back({"E_UNSUPPORTED_IDEAL",
                          "the coloring ideal of the carrier graph is not trivial",
                          nullptr});
    }

    std::set<std::string> matching_ids;
    for (const auto& m : ms) matching_ids.insert(m.canonical_id());

    const auto slot = grading_slots(c, ms);
    for (size_t g = 0; g < c.generators.size(); ++g) {
        const auto& gen = c.generators[g];
        std::set<std::string> seen;
        for (const auto& [key, val] : gen.gr) {
            (void)val;
            if (!seen.insert(key).second) {
                issues.push_back({"E_MISSING_GRADING",
                                  "duplicate grading key '" + key +
                                      "' on generator '" + gen.id + "'",
                                  nullptr});
            } else if (!matching_ids.count(key)) {
                issues.push_back({"E_MISSING_GRADING",
                                  "grading key '" + key + "' on generator '" +
                                      gen.id + "' is not a perfect matching",
                                  nullptr});
            }
        }
        for (size_t m = 0; m < ms.size(); ++m) {
            if (slot[g][m] < 0) {
                issues.push_back(
                    {"E_MISSING_GRADING",
                     "generator '" + gen.id + "' has no grading for matching '" +
                         ms[m].canonical_id() + "'",
                     nlohmann::json{{"generator", gen.id},
                                    {"matching", ms[m].canonical_id()}}});
            }
        }
    }

    // Arrow-level checks.
    std::set<std::pair<std::pair<int, int>, EdgeMonomial>> arrow_set;
    for (const auto& a : c.arrows) {
        const auto& x = c.generators[a.from];
        const auto& y = c.generators[a.to];
        if (!arrow_set.insert({{a.from, a.to}, a.exp}).second) {
            issues.push_back({"E_PARSE",
                              "arrow '" + x.id + "' -> '" + y.id +
                                  "' is listed twice with the same exponents",
                              nullptr});
        }
        for (size_t m = 0; m < ms.size(); ++m) {
            if (slot[a.from][m] < 0 || slot[a.to][m] < 0) continue;
            Rat lhs = x.gr[slot[a.from][m]].second - y.gr[slot[a.to][m]].second;
            for (int e : ms[m].edge_ids) lhs += 2 * Rat(a.exp[e - 1]);
            if (lhs != 1) {
                issues.push_back(
                    {"E_GRADING",
                     "arrow '" + x.id + "' -> '" + y.id +
                         "' violates the grading relation for matching '" +
                         ms[m].canonical_id() + "'",
                     nlohmann::json{{"from", x.id},
                                    {"to", y.id},
                                    {"matching", ms[m].canonical_id()},
                                    {"lhs", rat_str(lhs)}}});
            }
        }
    }

    // d^2 = 0 over the polynomial ring: every two-step monomial path count
    // between a fixed pair of generators must be even.
    std::map<std::pair<int, int>, std::map<EdgeMonomial, int>> two_step;
    for (const auto& a : c.arrows)
        for (const auto& b : c.arrows) {
            if (a.to != b.from) continue;
            EdgeMonomial prod = a.exp;
            for (size_t i = 0; i < prod.size(); ++i) prod[i] += b.exp[i];
            two_step[{a.from, b.to}][prod] ^= 1;
        }
    for (const auto& [pair, monos] : two_step)
        for (const auto& [mono, parity] : monos) {
            if (parity == 0) continue;
            issues.push_back(
                {"E_D_SQUARED",
                 "the differential does not square to zero on '" +
                     c.generators[pair.first].id + "' (monomial path to '" +
                     c.generators[pair.second].id + "' with odd multiplicity)",
                 nlohmann::json{{"from", c.generators[pair.first].id},
                                {"to", c.generators[pair.second].id},
                                {"exponents", mono}}});
        }

    return issues;
}

void require_valid(const TangleComplex& c) {
    auto issues = validate_complex(c);
    if (issues.empty()) return;
    nlohmann::json all = nlohmann::json::array();
    for (const auto& i : issues)
        all.push_back({{"code", i.code}, {"message", i.message}, {"details", i.details}});
    fail(issues.front().code, issues.front().message, nlohmann::json{{"issues", all}});
}

TangleComplex from_knot_cfk(const KnotCFKData& k) {
    TangleComplex c;
    c.graph = validate_graph({"p"}, {"n"},
                             {{1, "n", "p"}, {2, "n", "p"}});
    c.n = 1;
    for (const auto& g : k.generators) {
        TangleComplex::Generator gen;
        gen.id = g.id;
        gen.gr = {{"1", g.M - 2 * g.A}, {"2", g.M}};
        c.generators.push_back(std::move(gen));
    }
    for (const auto& a : k.arrows) {
        const auto& x = k.generators[a.from];
        const auto& y = k.generators[a.to];
        if (x.M - y.M + 2 * Rat(a.w) != 1) {
            fail("E_MASLOV_DROP",
                 "arrow '" + x.id + "' -> '" + y.id +
                     "' violates the Maslov drop M(x) - M(y) + 2w = 1",
                 nlohmann::json{{"from", x.id},
                                {"to", y.id},
                                {"M_from", rat_str(x.M)},
                                {"M_to", rat_str(y.M)},
                                {"w", a.w}});
        }
        c.arrows.push_back({a.from, a.to, {a.z, a.w}});
    }
    return c;
}

namespace {

void require_theta(const TangleComplex& c, const char* what) {
    if (!c.graph.is_theta())
        fail("E_SHAPE_MISMATCH",
             std::string(what) + " requires a theta complex (one positive and "
                                 "one negative vertex)");
}

}  // namespace

TangleComplex tensor(const TangleComplex& c1, const TangleComplex& c2) {
    require_theta(c1, "tensor");
    require_theta(c2, "tensor");
    if (c1.graph.kappa() != c2.graph.kappa())
        fail("E_SHAPE_MISMATCH",
             "tensor requires theta complexes with the same number of edges",
             nlohmann::json{{"kappa_left", c1.graph.kappa()},
                            {"kappa_right", c2.graph.kappa()}});
    const size_t kappa = c1.graph.kappa();

    TangleComplex out;
    out.graph = c1.graph;
    out.n = 1;

    // Generator (x, y) gets id "x|y"; gradings add per matching (looked up
    // by matching id, the two inputs may list them in different orders).
    std::set<std::string> ids;
    for (const auto& gx : c1.generators)
        for (const auto& gy : c2.generators) {
            TangleComplex::Generator g;
            g.id = gx.id + "|" + gy.id;
            if (!ids.insert(g.id).second)
                fail("E_PARSE", "generator id collision in tensor product: '" +
                                    g.id + "'");
            for (const auto& [key, val] : gx.gr) {
                bool found = false;
                for (const auto& [key2, val2] : gy.gr)
                    if (key2 == key) {
                        g.gr.push_back({key, val + val2});
                        found = true;
                        break;
                    }
                if (!found)
                    fail("E_MISSING_GRADING",
                         "generator '" + gy.id + "' has no grading for matching '" +
                             key + "'");
            }
            out.generators.push_back(std::move(g));
        }

    const int n2 = static_cast<int>(c2.generators.size());
    auto pair_index = [&](int i1, int i2) { return i1 * n2 + i2; };

    // Leibniz rule: d(x|y) = (dx)|y + x|(dy).
    for (const auto& a : c1.arrows)
        for (int i2 = 0; i2 < n2; ++i2)
            out.arrows.push_back({pair_index(a.from, i2), pair_index(a.to, i2), a.exp});
    for (int i1 = 0; i1 < static_cast<int>(c1.generators.size()); ++i1)
        for (const auto& a : c2.arrows)
            out.arrows.push_back({pair_index(i1, a.from), pair_index(i1, a.to), a.exp});

    (void)kappa;
    out.metadata = "tensor";
    return out;
}

namespace {

TangleComplex stabilize_impl(const TangleComplex& c, int slot, int extra) {
    require_theta(c, "stabilize");
    const int kappa = static_cast<int>(c.graph.kappa());
    if (slot < 1 || slot > kappa)
        fail("E_BAD_SLOT", "slot must name an existing edge",
             nlohmann::json{{"slot", slot}, {"kappa", kappa}});
    if (extra == 0) return c;

    TangleComplex out;
    std::vector<RawEdge> edges;
    const std::string& np = c.graph.neg[0];
    const std::string& pp = c.graph.pos[0];
    for (int i = 1; i <= kappa + extra; ++i) edges.push_back({i, np, pp});
    out.graph = validate_graph({pp}, {np}, edges);
    out.n = 1;

    const std::string slot_key = std::to_string(slot);
    for (const auto& g : c.generators) {
        TangleComplex::Generator ng;
        ng.id = g.id;
        ng.gr = g.gr;
        Rat slot_gr;
        bool found = false;
        for (const auto& [key, val] : g.gr)
            if (key == slot_key) {
                slot_gr = val;
                found = true;
            }
        if (!found)
            fail("E_MISSING_GRADING", "generator '" + g.id +
                                          "' has no grading for matching '" +
                                          slot_key + "'");
        for (int i = kappa + 1; i <= kappa + extra; ++i)
            ng.gr.push_back({std::to_string(i), slot_gr});
        out.generators.push_back(std::move(ng));
    }
    for (const auto& a : c.arrows) {
        TangleComplex::Arrow na = a;
        na.exp.resize(kappa + extra, a.exp[slot - 1]);
        out.arrows.push_back(std::move(na));
    }
    out.metadata = c.metadata;
    return out;
}

}  // namespace

TangleComplex stabilize(const TangleComplex& c, int slot, int extra) {
    if (extra < 1)
        fail("E_RANGE", "extra must be a positive integer",
             nlohmann::json{{"extra", extra}});
    return stabilize_impl(c, slot, extra);
}

TangleComplex relabel_edges(const TangleComplex& c, const std::vector<int>& perm) {
    const int kappa = static_cast<int>(c.graph.kappa());
    if (static_cast<int>(perm.size()) != kappa)
        fail("E_RANGE", "edge permutation has wrong length");
    std::vector<bool> hit(kappa, false);
    for (int v : perm) {
        if (v < 1 || v > kappa || hit[v - 1])
            fail("E_RANGE", "edge permutation is not a bijection");
        hit[v - 1] = true;
    }

    TangleComplex out;
    std::vector<RawEdge> edges(kappa);
    for (int old = 1; old <= kappa; ++old) {
        const auto& e = c.graph.edges[old - 1];
        edges[perm[old - 1] - 1] = {perm[old - 1], c.graph.neg[e.first],
                                    c.graph.pos[e.second]};
    }
    out.graph = validate_graph(c.graph.pos, c.graph.neg, edges);
    out.n = c.n;

    // Map each old matching's canonical id to the permuted one.
    std::map<std::string, std::string> key_map;
    for (const auto& m : enumerate_matchings(c.graph)) {
        Matching nm;
        for (int e : m.edge_ids) nm.edge_ids.push_back(perm[e - 1]);
        std::sort(nm.edge_ids.begin(), nm.edge_ids.end());
        key_map[m.canonical_id()] = nm.canonical_id();
    }

    for (const auto& g : c.generators) {
        TangleComplex::Generator ng;
        ng.id = g.id;
        for (const auto& [key, val] : g.gr) {
            auto it = key_map.find(key);
            ng.gr.push_back({it == key_map.end() ? key : it->second, val});
        }
        out.generators.push_back(std::move(ng));
    }
    for (const auto& a : c.arrows) {
        TangleComplex::Arrow na;
        na.from = a.from;
        na.to = a.to;
        na.exp.resize(kappa);
        for (int old = 1; old <= kappa; ++old)
            na.exp[perm[old - 1] - 1] = a.exp[old - 1];
        out.arrows.push_back(std::move(na));
    }
    out.metadata = c.metadata;
    return out;
}

TangleComplex glue(const TangleComplex& c1, const TangleComplex& c2) {
    require_theta(c1, "glue");
    require_theta(c2, "glue");
    const int n1 = static_cast<int>(c1.graph.kappa());
    const int n2 = static_cast<int>(c2.graph.kappa());
    if (n1 < 2 || n2 < 2)
        fail("E_SHAPE_MISMATCH",
             "glue requires theta complexes with at least two edges",
             nlohmann::json{{"kappa_left", n1}, {"kappa_right", n2}});

    // First factor: edges 1..n1-1 keep their slots, the glued edge n1 fans
    // out over slots n1..n1+n2-2.
    TangleComplex left = stabilize_impl(c1, n1, n2 - 2);

    // Second factor: its non-glued edges 1..n2-1 move to slots n1..n1+n2-2,
    // the glued edge n2 and its copies fan out over slots 1..n1-1.
    TangleComplex right = stabilize_impl(c2, n2, n1 - 2);
    std::vector<int> perm(n1 + n2 - 2);
    for (int i = 1; i <= n2 - 1; ++i) perm[i - 1] = n1 + i - 1;
    for (int i = n2; i <= n2 + n1 - 2; ++i) perm[i - 1] = i - n2 + 1;
    right = relabel_edges(right, perm);

    TangleComplex out = tensor(left, right);
    out.metadata = "glue";
    return out;
}

WeightVector diagonal_link_weights(int n, const Rat& t) {
    if (n < 1)
        fail("E_RANGE", "the link must have at least one component",
             nlohmann::json{{"n", n}});
    if (t < 0 || t > 2)
        fail("E_RANGE", "the diagonal parameter must lie in [0, 2]",
             nlohmann::json{{"t", rat_str(t)}});
    WeightVector w(2 * n, t);
    for (int i = n; i < 2 * n; ++i) w[i] = 2 - t;
    return w;
}

}  // namespace gu
