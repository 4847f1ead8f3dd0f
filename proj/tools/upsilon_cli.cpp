// Command-line surface for the graphupsilon shared library.  All computation
// happens behind the C API; this translation unit only parses arguments,
// moves JSON strings around, and renders the csv/plot variants of segment
// output.  Exit codes: 0 success, 1 domain error, 2 usage error.  Errors are
// structured JSON objects on stderr.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

#include "graphupsilon/graphupsilon.h"

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitDomain = 1;
constexpr int kExitUsage = 2;

int usage_error(const std::string& message) {
    std::cerr << json{{"code", "E_USAGE"}, {"message", message}}.dump() << "\n";
    return kExitUsage;
}

// Prints a domain error payload produced by the library and releases it.
int domain_error(char* err) {
    if (err) {
        std::cerr << err << "\n";
        gu_string_free(err);
    } else {
        std::cerr << json{{"code", "E_INTERNAL"},
                          {"message", "missing error payload"}}
                         .dump()
                  << "\n";
    }
    return kExitDomain;
}

struct StringDeleter {
    void operator()(char* s) const { gu_string_free(s); }
};
using ApiString = std::unique_ptr<char, StringDeleter>;

struct GraphDeleter {
    void operator()(gu_graph* g) const { gu_graph_free(g); }
};
using GraphHandle = std::unique_ptr<gu_graph, GraphDeleter>;

struct ComplexDeleter {
    void operator()(gu_complex* c) const { gu_complex_free(c); }
};
using ComplexHandle = std::unique_ptr<gu_complex, ComplexDeleter>;

bool read_file(const std::string& path, std::string& out) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return false;
    std::ostringstream ss;
    ss << in.rdbuf();
    out = ss.str();
    return true;
}

int emit(const std::string& out_path, const std::string& payload) {
    if (out_path.empty()) {
        std::cout << payload;
        return kExitOk;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) return usage_error("cannot open output file: " + out_path);
    out << payload;
    out.flush();
    if (!out) return usage_error("cannot write output file: " + out_path);
    return kExitOk;
}

// Syntactic screen for rational arguments; semantic checks stay in the
// library.  Accepts "p" or "p/q" with a non-zero denominator.
bool rat_syntax_ok(const std::string& s) {
    static const std::regex re(R"(-?[0-9]+(/0*[1-9][0-9]*)?)");
    return std::regex_match(s, re);
}

bool weights_syntax_ok(const std::string& csv) {
    size_t start = 0;
    while (true) {
        const size_t comma = csv.find(',', start);
        const std::string tok =
            csv.substr(start, comma == std::string::npos ? std::string::npos
                                                         : comma - start);
        if (!rat_syntax_ok(tok)) return false;
        if (comma == std::string::npos) return true;
        start = comma + 1;
    }
}

int with_graph(const std::string& path,
               const std::function<int(gu_graph*)>& body) {
    std::string text;
    if (!read_file(path, text))
        return usage_error("cannot read input file: " + path);
    char* err = nullptr;
    const GraphHandle g(gu_graph_parse(text.c_str(), &err));
    if (!g) return domain_error(err);
    return body(g.get());
}

// Loads a complex file, accepting either the tangle-complex schema or (when
// the top-level object has no "graph" key) the bigraded knot schema.
ComplexHandle load_complex_text(const std::string& text, char** err) {
    const json sniff = json::parse(text, nullptr, false);
    if (sniff.is_object() && !sniff.contains("graph"))
        return ComplexHandle(gu_complex_from_cfk(text.c_str(), err));
    return ComplexHandle(gu_complex_parse(text.c_str(), err));
}

int with_complex(const std::string& path,
                 const std::function<int(gu_complex*)>& body) {
    std::string text;
    if (!read_file(path, text))
        return usage_error("cannot read input file: " + path);
    char* err = nullptr;
    const ComplexHandle c(load_complex_text(text, &err));
    if (!c) return domain_error(err);
    return body(c.get());
}

int with_two_complexes(const std::string& path_a, const std::string& path_b,
                       const std::function<int(gu_complex*, gu_complex*)>& body) {
    std::string text_a, text_b;
    if (!read_file(path_a, text_a))
        return usage_error("cannot read input file: " + path_a);
    if (!read_file(path_b, text_b))
        return usage_error("cannot read input file: " + path_b);
    char* err = nullptr;
    const ComplexHandle a(load_complex_text(text_a, &err));
    if (!a) return domain_error(err);
    const ComplexHandle b(load_complex_text(text_b, &err));
    if (!b) return domain_error(err);
    return body(a.get(), b.get());
}

// Emits a library string result followed by a newline, freeing it.  Takes
// the address of the error slot so the result expression at the call site is
// guaranteed to have filled it first.
int emit_api(const std::string& out_path, char* result, char** err) {
    if (!result) return domain_error(err ? *err : nullptr);
    const ApiString owned(result);
    return emit(out_path, std::string(result) + "\n");
}

int emit_complex(const std::string& out_path, gu_complex* c) {
    char* err = nullptr;
    return emit_api(out_path, gu_complex_to_json(c, &err), &err);
}

std::string decimal20(const std::string& rational, bool& ok) {
    char* err = nullptr;
    const ApiString s(gu_rat_decimal(rational.c_str(), 20, &err));
    if (!s) {
        gu_string_free(err);
        ok = false;
        return "";
    }
    return s.get();
}

// Renders segment output: rows over the union of breakpoints (csv), or
// gnuplot-style two-column decimal blocks, one dataset per component (plot).
int emit_segment(const std::string& out_path, const std::string& payload,
                 const std::string& format) {
    if (format == "json") return emit(out_path, payload + "\n");
    const json j = json::parse(payload);
    const auto& s = j.at("table").at("s");
    const auto& rows = j.at("table").at("rows");
    std::ostringstream out;
    if (format == "csv") {
        for (size_t k = 0; k < s.size(); ++k) {
            out << s[k].get<std::string>();
            for (const auto& v : rows[k]) out << "," << v.get<std::string>();
            out << "\n";
        }
        return emit(out_path, out.str());
    }
    const size_t n_funcs = j.at("functions").size();
    bool ok = true;
    for (size_t f = 0; f < n_funcs; ++f) {
        if (f) out << "\n\n";
        for (size_t k = 0; k < s.size(); ++k) {
            out << decimal20(s[k].get<std::string>(), ok) << " "
                << decimal20(rows[k][f].get<std::string>(), ok) << "\n";
        }
    }
    if (!ok)
        return domain_error(nullptr);
    return emit(out_path, out.str());
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact Upsilon invariants of multi-graded tangle complexes"};
    app.set_version_flag("--version", std::string(gu_version()));
    app.require_subcommand(1);

    std::string file1, file2, t_csv, from_csv, to_csv, a_rat;
    std::string format = "json", out_path;
    int slot = 0, extra = 1, index = 0, components = 5, max_depth = 0;

    const auto add_out = [&out_path](CLI::App* sub) {
        sub->add_option("--out", out_path, "write output to FILE (default stdout)");
    };

    auto* sc_matchings =
        app.add_subcommand("matchings", "List all perfect matchings of a graph");
    sc_matchings->add_option("file", file1, "graph JSON file")->required();
    add_out(sc_matchings);

    auto* sc_polytope =
        app.add_subcommand("polytope", "Vertices of the matching polytope");
    sc_polytope->add_option("file", file1, "graph JSON file")->required();
    add_out(sc_polytope);

    auto* sc_decompose = app.add_subcommand(
        "decompose", "Write a weight vector as a convex sum of matchings");
    sc_decompose->add_option("file", file1, "graph JSON file")->required();
    sc_decompose->add_option("--t", t_csv, "weight vector, e.g. 1,1,1,1")
        ->required();
    add_out(sc_decompose);

    auto* sc_delta = app.add_subcommand(
        "delta-complex", "Pulling triangulation of the matching polytope");
    sc_delta->add_option("file", file1, "graph JSON file")->required();
    add_out(sc_delta);

    auto* sc_validate = app.add_subcommand(
        "validate", "Check every structural invariant of a complex");
    sc_validate->add_option("file", file1, "complex JSON file")->required();
    add_out(sc_validate);

    auto* sc_import = app.add_subcommand(
        "import-cfk", "Convert a bigraded knot complex to a tangle complex");
    sc_import->add_option("file", file1, "knot complex JSON file")->required();
    add_out(sc_import);

    auto* sc_tensor =
        app.add_subcommand("tensor", "Tensor product of two theta complexes");
    sc_tensor->add_option("file1", file1, "first complex")->required();
    sc_tensor->add_option("file2", file2, "second complex")->required();
    add_out(sc_tensor);

    auto* sc_stabilize = app.add_subcommand(
        "stabilize", "Add parallel edges shadowing one edge of the carrier");
    sc_stabilize->add_option("file", file1, "complex JSON file")->required();
    sc_stabilize->add_option("--slot", slot, "1-based edge to shadow")->required();
    sc_stabilize->add_option("--extra", extra, "number of new edges (default 1)");
    add_out(sc_stabilize);

    auto* sc_glue = app.add_subcommand(
        "glue", "Glue two theta complexes along their last edges");
    sc_glue->add_option("file1", file1, "first complex")->required();
    sc_glue->add_option("file2", file2, "second complex")->required();
    add_out(sc_glue);

    auto* sc_upsilon =
        app.add_subcommand("upsilon", "Evaluate or reconstruct Upsilon");
    sc_upsilon->require_subcommand(1);
    auto* sc_eval =
        sc_upsilon->add_subcommand("eval", "Homology at one weight vector");
    sc_eval->add_option("file", file1, "complex JSON file")->required();
    sc_eval->add_option("--t", t_csv, "weight vector, e.g. 3/2,1/2")->required();
    add_out(sc_eval);
    auto* sc_segment = sc_upsilon->add_subcommand(
        "segment", "Piecewise-linear profile along a segment");
    sc_segment->add_option("file", file1, "complex JSON file")->required();
    sc_segment->add_option("--from", from_csv, "segment start")->required();
    sc_segment->add_option("--to", to_csv, "segment end")->required();
    sc_segment->add_option("--format", format, "json|csv|plot (default json)")
        ->check(CLI::IsMember({"json", "csv", "plot"}));
    sc_segment->add_option("--max-depth", max_depth,
                           "subdivision budget (default 20)");
    add_out(sc_segment);

    auto* sc_inv =
        app.add_subcommand("invariants", "Derived invariants of a complex");
    sc_inv->require_subcommand(1);
    auto* sc_tau = sc_inv->add_subcommand(
        "tau", "One-sided derivative matrix at the matching vertices");
    sc_tau->add_option("file", file1, "complex JSON file")->required();
    add_out(sc_tau);
    auto* sc_d =
        sc_inv->add_subcommand("d", "Upsilon(2) of a one-edge theta complex");
    sc_d->add_option("file", file1, "complex JSON file")->required();
    add_out(sc_d);
    auto* sc_jumps = sc_inv->add_subcommand(
        "jumps", "Derivative jump along the line t^i_a");
    sc_jumps->add_option("file", file1, "complex JSON file")->required();
    sc_jumps->add_option("--i", index, "edge index (1-based)")->required();
    sc_jumps->add_option("--a", a_rat, "line parameter, a rational")->required();
    add_out(sc_jumps);
    auto* sc_fi = sc_inv->add_subcommand(
        "fi", "Components of the jump homomorphism f_i");
    sc_fi->add_option("file", file1, "complex JSON file")->required();
    sc_fi->add_option("--i", index, "edge index (1-based)")->required();
    sc_fi->add_option("--k", components, "component count (default 5)");
    add_out(sc_fi);

    auto* sc_selftest =
        app.add_subcommand("selftest", "Run the built-in exact checks");
    add_out(sc_selftest);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        return usage_error(e.what());
    }

    if (const char* env = std::getenv("THETA_UPSILON_THREADS"); env && *env) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (!end || *end != '\0' || v < 1)
            return usage_error(
                "THETA_UPSILON_THREADS must be a positive integer");
    }

    if (*sc_matchings)
        return with_graph(file1, [&](gu_graph* g) {
            char* err = nullptr;
            return emit_api(out_path, gu_graph_matchings(g, &err), &err);
        });

    if (*sc_polytope)
        return with_graph(file1, [&](gu_graph* g) {
            char* err = nullptr;
            return emit_api(out_path, gu_graph_polytope(g, &err), &err);
        });

    if (*sc_decompose) {
        if (!weights_syntax_ok(t_csv))
            return usage_error("--t must be comma-separated rationals");
        return with_graph(file1, [&](gu_graph* g) {
            char* err = nullptr;
            return emit_api(out_path,
                            gu_graph_decompose(g, t_csv.c_str(), &err), &err);
        });
    }

    if (*sc_delta)
        return with_graph(file1, [&](gu_graph* g) {
            char* err = nullptr;
            return emit_api(out_path, gu_graph_delta_complex(g, &err), &err);
        });

    if (*sc_validate) {
        std::string text;
        if (!read_file(file1, text))
            return usage_error("cannot read input file: " + file1);
        char* err = nullptr;
        const ApiString report(gu_complex_validate(text.c_str(), &err));
        if (!report) return domain_error(err);
        const int rc = emit(out_path, std::string(report.get()) + "\n");
        if (rc != kExitOk) return rc;
        return json::parse(report.get()).at("valid").get<bool>() ? kExitOk
                                                                 : kExitDomain;
    }

    if (*sc_import) {
        std::string text;
        if (!read_file(file1, text))
            return usage_error("cannot read input file: " + file1);
        char* err = nullptr;
        const ComplexHandle c(gu_complex_from_cfk(text.c_str(), &err));
        if (!c) return domain_error(err);
        return emit_complex(out_path, c.get());
    }

    if (*sc_tensor)
        return with_two_complexes(file1, file2, [&](gu_complex* a, gu_complex* b) {
            char* err = nullptr;
            const ComplexHandle t(gu_complex_tensor(a, b, &err));
            if (!t) return domain_error(err);
            return emit_complex(out_path, t.get());
        });

    if (*sc_stabilize)
        return with_complex(file1, [&](gu_complex* c) {
            char* err = nullptr;
            const ComplexHandle s(gu_complex_stabilize(c, slot, extra, &err));
            if (!s) return domain_error(err);
            return emit_complex(out_path, s.get());
        });

    if (*sc_glue)
        return with_two_complexes(file1, file2, [&](gu_complex* a, gu_complex* b) {
            char* err = nullptr;
            const ComplexHandle g(gu_complex_glue(a, b, &err));
            if (!g) return domain_error(err);
            return emit_complex(out_path, g.get());
        });

    if (*sc_eval) {
        if (!weights_syntax_ok(t_csv))
            return usage_error("--t must be comma-separated rationals");
        return with_complex(file1, [&](gu_complex* c) {
            char* err = nullptr;
            return emit_api(out_path, gu_upsilon_eval(c, t_csv.c_str(), &err),
                            &err);
        });
    }

    if (*sc_segment) {
        if (!weights_syntax_ok(from_csv) || !weights_syntax_ok(to_csv))
            return usage_error("--from/--to must be comma-separated rationals");
        if (max_depth < 0) return usage_error("--max-depth must be >= 0");
        return with_complex(file1, [&](gu_complex* c) {
            char* err = nullptr;
            const ApiString payload(gu_upsilon_segment(
                c, from_csv.c_str(), to_csv.c_str(), max_depth, 0, &err));
            if (!payload) return domain_error(err);
            return emit_segment(out_path, payload.get(), format);
        });
    }

    if (*sc_tau)
        return with_complex(file1, [&](gu_complex* c) {
            char* err = nullptr;
            return emit_api(out_path, gu_tau_matrix(c, 0, &err), &err);
        });

    if (*sc_d)
        return with_complex(file1, [&](gu_complex* c) {
            char* err = nullptr;
            return emit_api(out_path, gu_d_invariant(c, &err), &err);
        });

    if (*sc_jumps) {
        if (!rat_syntax_ok(a_rat))
            return usage_error("--a must be a rational such as 2/3");
        return with_complex(file1, [&](gu_complex* c) {
            char* err = nullptr;
            return emit_api(out_path,
                            gu_jump(c, index, a_rat.c_str(), 0, &err), &err);
        });
    }

    if (*sc_fi)
        return with_complex(file1, [&](gu_complex* c) {
            char* err = nullptr;
            return emit_api(out_path, gu_f_i(c, index, components, 0, &err),
                            &err);
        });

    if (*sc_selftest) {
        char* report = nullptr;
        char* err = nullptr;
        const int failed = gu_selftest(&report, &err);
        if (failed < 0) {
            gu_string_free(report);
            return domain_error(err);
        }
        const ApiString owned(report);
        const int rc = emit(out_path, report ? std::string(report) : "");
        if (rc != kExitOk) return rc;
        if (failed > 0) {
            std::cerr << json{{"code", "E_SELFTEST"},
                              {"message",
                               std::to_string(failed) + " checks failed"}}
                             .dump()
                      << "\n";
            return kExitDomain;
        }
        return kExitOk;
    }

    return usage_error("no subcommand given");
}
