#include "graphupsilon/graphupsilon.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <optional>
#include <set>
#include <string>

#include "capi/capi_internal.hpp"
#include "core/complex.hpp"
#include "core/errors.hpp"
#include "core/homology.hpp"
#include "core/json_io.hpp"
#include "core/piecewise.hpp"
#include "core/polytope.hpp"

using nlohmann::json;

namespace gu_capi {

char* dup_string(const std::string& s) {
    char* out = static_cast<char*>(::operator new(s.size() + 1, std::nothrow));
    if (!out) return nullptr;
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

void store_error(char** err, const std::string& code, const std::string& message) {
    if (!err) return;
    *err = dup_string(json{{"code", code}, {"message", message}}.dump());
}

}  // namespace gu_capi

struct gu_graph {
    gu::LabeledGraph g;
};

// Complex handle with a lazily built evaluator so repeated invariant calls
// share the triangulated polytope.
struct gu_complex {
    gu::TangleComplex c;
    std::optional<gu::Evaluator> ev;
};

namespace {

using gu_capi::dup_string;
using gu_capi::store_error;

// Exception firewall shared by every entry point: domain errors keep their
// code, anything else maps to E_INTERNAL, and nothing ever propagates.
template <typename F>
auto guarded(char** err, F&& f) -> decltype(f()) {
    if (err) *err = nullptr;
    try {
        return f();
    } catch (const gu::DomainError& e) {
        if (err) *err = dup_string(e.to_json().dump());
    } catch (const std::exception& e) {
        store_error(err, "E_INTERNAL", e.what());
    } catch (...) {
        store_error(err, "E_INTERNAL", "unknown error");
    }
    return decltype(f()){};
}

gu::Evaluator& evaluator(gu_complex* c) {
    if (!c->ev) c->ev.emplace(c->c);
    return *c->ev;
}

gu::WeightVector parse_weights(const char* csv, const char* what) {
    if (!csv) gu::fail("E_PARSE", std::string(what) + " is missing");
    return gu::rat_parse_csv(csv);
}

int default_threads_from_env() {
    const char* env = std::getenv("THETA_UPSILON_THREADS");
    if (!env || !*env) return 0;
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (!end || *end != '\0' || v < 1)
        gu::fail("E_PARSE",
                 "THETA_UPSILON_THREADS must be a positive integer",
                 json{{"value", env}});
    return static_cast<int>(v);
}

gu::ReconstructOptions make_options(int max_depth, int threads) {
    gu::ReconstructOptions opts;
    if (max_depth > 0) opts.max_depth = max_depth;
    opts.threads = threads > 0 ? threads : default_threads_from_env();
    return opts;
}

json issue_to_json(const gu::ValidationIssue& i) {
    return json{{"code", i.code}, {"message", i.message}, {"details", i.details}};
}

}  // namespace

extern "C" {

const char* gu_version(void) { return "1.0.0"; }

void gu_string_free(char* s) { ::operator delete(s); }

gu_graph* gu_graph_parse(const char* text, char** err) {
    return guarded(err, [&]() -> gu_graph* {
        if (!text) gu::fail("E_PARSE", "graph JSON is missing");
        return new gu_graph{gu::parse_graph_json(gu::parse_json_text(text))};
    });
}

void gu_graph_free(gu_graph* g) { delete g; }

char* gu_graph_matchings(const gu_graph* g, char** err) {
    return guarded(err, [&]() -> char* {
        json out = json::array();
        for (const auto& m : gu::enumerate_matchings(g->g))
            out.push_back(m.canonical_id());
        return dup_string(out.dump());
    });
}

char* gu_graph_polytope(const gu_graph* g, char** err) {
    return guarded(err, [&]() -> char* {
        const auto poly = gu::solution_polytope(g->g);
        json vertices = json::array();
        for (size_t i = 0; i < poly.vertices.size(); ++i)
            vertices.push_back({{"matching", poly.matchings[i].canonical_id()},
                                {"t", gu::rats_to_json(poly.vertices[i])}});
        return dup_string(
            json{{"dim", poly.dim}, {"vertices", vertices}}.dump());
    });
}

char* gu_graph_decompose(const gu_graph* g, const char* t_csv, char** err) {
    return guarded(err, [&]() -> char* {
        const auto t = parse_weights(t_csv, "the weight vector --t");
        const auto comb = gu::decompose_to_matchings(g->g, t);
        json terms = json::array();
        for (const auto& [m, coeff] : comb.terms)
            terms.push_back({{"matching", m.canonical_id()},
                             {"coefficient", gu::rat_str(coeff)}});
        return dup_string(
            json{{"t", gu::rats_to_json(t)}, {"terms", terms}}.dump());
    });
}

char* gu_graph_delta_complex(const gu_graph* g, char** err) {
    return guarded(err, [&]() -> char* {
        const auto dc = gu::build_delta_complex(g->g);
        json vertices = json::array();
        for (const auto& v : dc.vertices) vertices.push_back(gu::rats_to_json(v));
        json simplices = json::object();
        for (const auto& [d, list] : dc.simplices)
            simplices[std::to_string(d)] = list;
        return dup_string(json{{"dim", dc.dim},
                               {"vertices", vertices},
                               {"simplices", simplices}}
                              .dump());
    });
}

gu_complex* gu_complex_parse(const char* text, char** err) {
    return guarded(err, [&]() -> gu_complex* {
        if (!text) gu::fail("E_PARSE", "complex JSON is missing");
        auto c = gu::parse_complex_json(gu::parse_json_text(text));
        gu::require_valid(c);
        return new gu_complex{std::move(c), std::nullopt};
    });
}

gu_complex* gu_complex_from_cfk(const char* text, char** err) {
    return guarded(err, [&]() -> gu_complex* {
        if (!text) gu::fail("E_PARSE", "knot complex JSON is missing");
        auto c = gu::from_knot_cfk(gu::parse_cfk_json(gu::parse_json_text(text)));
        gu::require_valid(c);
        return new gu_complex{std::move(c), std::nullopt};
    });
}

void gu_complex_free(gu_complex* c) { delete c; }

char* gu_complex_validate(const char* text, char** err) {
    return guarded(err, [&]() -> char* {
        if (!text) gu::fail("E_PARSE", "complex JSON is missing");
        const auto c = gu::parse_complex_json(gu::parse_json_text(text));
        const auto issues = gu::validate_complex(c);
        json jissues = json::array();
        for (const auto& i : issues) jissues.push_back(issue_to_json(i));
        return dup_string(
            json{{"valid", issues.empty()}, {"issues", jissues}}.dump());
    });
}

char* gu_complex_to_json(const gu_complex* c, char** err) {
    return guarded(err,
                   [&]() -> char* { return dup_string(gu::complex_to_json(c->c).dump()); });
}

gu_complex* gu_complex_tensor(const gu_complex* a, const gu_complex* b,
                              char** err) {
    return guarded(err, [&]() -> gu_complex* {
        return new gu_complex{gu::tensor(a->c, b->c), std::nullopt};
    });
}

gu_complex* gu_complex_stabilize(const gu_complex* c, int slot, int extra,
                                 char** err) {
    return guarded(err, [&]() -> gu_complex* {
        return new gu_complex{gu::stabilize(c->c, slot, extra), std::nullopt};
    });
}

gu_complex* gu_complex_glue(const gu_complex* a, const gu_complex* b,
                            char** err) {
    return guarded(err, [&]() -> gu_complex* {
        return new gu_complex{gu::glue(a->c, b->c), std::nullopt};
    });
}

char* gu_upsilon_eval(gu_complex* c, const char* t_csv, char** err) {
    return guarded(err, [&]() -> char* {
        const auto t = parse_weights(t_csv, "the weight vector --t");
        auto& ev = evaluator(c);
        const auto h = gu::reduce(ev.t_modify(t));
        if (static_cast<int>(h.free_gradings.size()) != ev.upsilon_len)
            gu::fail("E_RANK",
                     "free rank does not match the boundary contract 2^(n-1)",
                     json{{"expected", ev.upsilon_len},
                          {"got", h.free_gradings.size()}});
        json torsion = json::array();
        for (const auto& [gr, order] : h.torsion)
            torsion.push_back(
                {{"gr", gu::rat_str(gr)}, {"order", gu::rat_str(order)}});
        return dup_string(json{{"t", gu::rats_to_json(t)},
                               {"upsilon", gu::rats_to_json(h.free_gradings)},
                               {"free_rank", h.free_gradings.size()},
                               {"torsion", torsion}}
                              .dump());
    });
}

char* gu_upsilon_segment(gu_complex* c, const char* from_csv,
                         const char* to_csv, int max_depth, int threads,
                         char** err) {
    return guarded(err, [&]() -> char* {
        const auto t0 = parse_weights(from_csv, "the segment start --from");
        const auto t1 = parse_weights(to_csv, "the segment end --to");
        const auto fs = gu::reconstruct_segment(evaluator(c), t0, t1,
                                                make_options(max_depth, threads));
        json functions = json::array();
        std::set<gu::Rat> break_union;
        for (const auto& f : fs) {
            functions.push_back({{"index", f.index},
                                 {"breaks", gu::rats_to_json(f.breaks)},
                                 {"values", gu::rats_to_json(f.values)},
                                 {"certified", f.certified}});
            break_union.insert(f.breaks.begin(), f.breaks.end());
        }
        json table_s = json::array();
        json table_rows = json::array();
        for (const auto& s : break_union) {
            table_s.push_back(gu::rat_str(s));
            json row = json::array();
            for (const auto& f : fs) row.push_back(gu::rat_str(f.value_at(s)));
            table_rows.push_back(row);
        }
        return dup_string(json{{"from", gu::rats_to_json(t0)},
                               {"to", gu::rats_to_json(t1)},
                               {"functions", functions},
                               {"table", {{"s", table_s}, {"rows", table_rows}}}}
                              .dump());
    });
}

char* gu_tau_matrix(gu_complex* c, int threads, char** err) {
    return guarded(err, [&]() -> char* {
        const auto tau = gu::tau_matrix(evaluator(c), make_options(0, threads));
        json rows = json::array();
        for (const auto& row : tau) {
            json jrow = json::array();
            for (const auto& [present, value] : row)
                jrow.push_back(present ? json(gu::rat_str(value)) : json(nullptr));
            rows.push_back(jrow);
        }
        return dup_string(
            json{{"n", tau.size()}, {"entries", rows}}.dump());
    });
}

char* gu_d_invariant(gu_complex* c, char** err) {
    return guarded(err, [&]() -> char* {
        return dup_string(
            json{{"d", gu::rat_str(gu::d_invariant(evaluator(c)))}}.dump());
    });
}

char* gu_jump(gu_complex* c, int i, const char* a_rational, int threads,
              char** err) {
    return guarded(err, [&]() -> char* {
        if (!a_rational) gu::fail("E_PARSE", "the line parameter --a is missing");
        const auto jv = gu::jump_delta_i(evaluator(c), i,
                                         gu::rat_parse(a_rational),
                                         make_options(0, threads));
        return dup_string(json{{"i", jv.i},
                               {"a", gu::rat_str(jv.a)},
                               {"delta", gu::rat_str(jv.delta)}}
                              .dump());
    });
}

char* gu_rat_decimal(const char* rational, int significant_digits, char** err) {
    return guarded(err, [&]() -> char* {
        if (!rational) gu::fail("E_PARSE", "rational literal is missing");
        if (significant_digits < 1 || significant_digits > 1000)
            gu::fail("E_RANGE", "significant_digits must be in 1..1000",
                     json{{"got", significant_digits}});
        const gu::Rat r = gu::rat_parse(rational);
        // Extra precision keeps the final decimal rounding exact.
        const mpf_class f(r, static_cast<mp_bitcnt_t>(significant_digits) * 4 + 64);
        const int len = gmp_snprintf(nullptr, 0, "%.*Fe", significant_digits - 1,
                                     f.get_mpf_t());
        std::string buf(static_cast<size_t>(len) + 1, '\0');
        gmp_snprintf(buf.data(), buf.size(), "%.*Fe", significant_digits - 1,
                     f.get_mpf_t());
        buf.resize(static_cast<size_t>(len));
        return dup_string(buf);
    });
}

char* gu_f_i(gu_complex* c, int i, int k, int threads, char** err) {
    return guarded(err, [&]() -> char* {
        const auto comps =
            gu::f_i_components(evaluator(c), i, k, make_options(0, threads));
        return dup_string(
            json{{"i", i}, {"components", gu::rats_to_json(comps)}}.dump());
    });
}

}  // extern "C"
