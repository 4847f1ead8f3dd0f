#include "core/json_io.hpp"

#include <set>

#include "core/errors.hpp"
#include "core/rational.hpp"

namespace gu {

namespace {

void check_keys(const nlohmann::json& j, const std::set<std::string>& allowed,
                const std::string& where) {
    if (!j.is_object()) fail("E_PARSE", where + " must be a JSON object");
    for (const auto& item : j.items())
        if (!allowed.count(item.key()))
            fail("E_PARSE", "unknown key '" + item.key() + "' in " + where);
}

const nlohmann::json& need(const nlohmann::json& j, const std::string& key,
                           const std::string& where) {
    auto it = j.find(key);
    if (it == j.end())
        fail("E_PARSE", "missing key '" + key + "' in " + where);
    return *it;
}

std::string need_string(const nlohmann::json& j, const std::string& key,
                        const std::string& where) {
    const auto& v = need(j, key, where);
    if (!v.is_string())
        fail("E_PARSE", "key '" + key + "' in " + where + " must be a string");
    return v.get<std::string>();
}

int need_int(const nlohmann::json& j, const std::string& key,
             const std::string& where) {
    const auto& v = need(j, key, where);
    if (!v.is_number_integer())
        fail("E_PARSE", "key '" + key + "' in " + where + " must be an integer");
    return v.get<int>();
}

std::string opt_metadata(const nlohmann::json& j) {
    auto it = j.find("metadata");
    if (it == j.end()) return "";
    if (!it->is_string()) fail("E_PARSE", "'metadata' must be a string");
    return it->get<std::string>();
}

}  // namespace

nlohmann::json parse_json_text(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
    if (j.is_discarded()) fail("E_PARSE", "input is not valid JSON");
    return j;
}

Rat rat_from_json(const nlohmann::json& v, const std::string& where) {
    if (v.is_string()) return rat_parse(v.get<std::string>());
    if (v.is_number_integer()) return Rat(v.get<long>());
    fail("E_PARSE", where + " must be a rational string \"p/q\"");
}

nlohmann::json rats_to_json(const std::vector<Rat>& v) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& r : v) out.push_back(rat_str(r));
    return out;
}

LabeledGraph parse_graph_json(const nlohmann::json& j) {
    check_keys(j, {"pos", "neg", "edges", "metadata"}, "graph");
    const auto& jp = need(j, "pos", "graph");
    const auto& jn = need(j, "neg", "graph");
    const auto& je = need(j, "edges", "graph");
    if (!jp.is_array() || !jn.is_array() || !je.is_array())
        fail("E_PARSE", "'pos', 'neg' and 'edges' must be arrays");

    std::vector<std::string> pos, neg;
    for (const auto& v : jp) {
        if (!v.is_string()) fail("E_PARSE", "vertex names must be strings");
        pos.push_back(v.get<std::string>());
    }
    for (const auto& v : jn) {
        if (!v.is_string()) fail("E_PARSE", "vertex names must be strings");
        neg.push_back(v.get<std::string>());
    }
    std::vector<RawEdge> edges;
    int index = 0;
    for (const auto& e : je) {
        ++index;
        if (!e.is_array() || e.size() != 2 || !e[0].is_string() || !e[1].is_string())
            fail("E_PARSE", "each edge must be a pair of vertex names",
                 nlohmann::json{{"edge_index", index}});
        edges.push_back({index, e[0].get<std::string>(), e[1].get<std::string>()});
    }
    return validate_graph(pos, neg, edges);
}

nlohmann::json graph_to_json(const LabeledGraph& g, const std::string& metadata) {
    nlohmann::json j;
    j["pos"] = g.pos;
    j["neg"] = g.neg;
    nlohmann::json edges = nlohmann::json::array();
    for (const auto& [ni, pi] : g.edges)
        edges.push_back({g.neg[ni], g.pos[pi]});
    j["edges"] = edges;
    if (!metadata.empty()) j["metadata"] = metadata;
    return j;
}

TangleComplex parse_complex_json(const nlohmann::json& j) {
    check_keys(j, {"graph", "generators", "arrows", "metadata"}, "complex");
    TangleComplex c;
    c.graph = parse_graph_json(need(j, "graph", "complex"));
    c.n = static_cast<int>(c.graph.n_pos());
    c.metadata = opt_metadata(j);

    const auto& jg = need(j, "generators", "complex");
    if (!jg.is_array()) fail("E_PARSE", "'generators' must be an array");
    std::set<std::string> ids;
    for (const auto& g : jg) {
        check_keys(g, {"id", "gr"}, "generator");
        TangleComplex::Generator gen;
        gen.id = need_string(g, "id", "generator");
        if (!ids.insert(gen.id).second)
            fail("E_PARSE", "duplicate generator id '" + gen.id + "'");
        const auto& jgr = need(g, "gr", "generator '" + gen.id + "'");
        if (!jgr.is_object())
            fail("E_PARSE", "'gr' of generator '" + gen.id + "' must be an object");
        for (const auto& item : jgr.items())
            gen.gr.push_back({item.key(),
                              rat_from_json(item.value(),
                                            "grading '" + item.key() +
                                                "' of generator '" + gen.id + "'")});
        c.generators.push_back(std::move(gen));
    }

    const auto& ja = need(j, "arrows", "complex");
    if (!ja.is_array()) fail("E_PARSE", "'arrows' must be an array");
    const size_t kappa = c.graph.kappa();
    for (const auto& a : ja) {
        check_keys(a, {"from", "to", "exp"}, "arrow");
        TangleComplex::Arrow arr;
        const std::string from = need_string(a, "from", "arrow");
        const std::string to = need_string(a, "to", "arrow");
        arr.from = c.gen_index(from);
        arr.to = c.gen_index(to);
        if (arr.from < 0)
            fail("E_PARSE", "arrow source '" + from + "' is not a generator");
        if (arr.to < 0)
            fail("E_PARSE", "arrow target '" + to + "' is not a generator");
        const auto& je = need(a, "exp", "arrow '" + from + "' -> '" + to + "'");
        if (!je.is_array() || je.size() != kappa)
            fail("E_PARSE",
                 "arrow exponents must be an array of length " +
                     std::to_string(kappa),
                 nlohmann::json{{"from", from}, {"to", to}});
        for (const auto& v : je) {
            if (!v.is_number_integer() || v.get<long long>() < 0)
                fail("E_PARSE", "arrow exponents must be nonnegative integers",
                     nlohmann::json{{"from", from}, {"to", to}});
            arr.exp.push_back(v.get<int>());
        }
        c.arrows.push_back(std::move(arr));
    }
    return c;
}

nlohmann::json complex_to_json(const TangleComplex& c) {
    nlohmann::json j;
    j["graph"] = graph_to_json(c.graph);
    nlohmann::json gens = nlohmann::json::array();
    for (const auto& g : c.generators) {
        nlohmann::json gr = nlohmann::json::object();
        for (const auto& [key, val] : g.gr) gr[key] = rat_str(val);
        gens.push_back({{"id", g.id}, {"gr", gr}});
    }
    j["generators"] = gens;
    nlohmann::json arrows = nlohmann::json::array();
    for (const auto& a : c.arrows)
        arrows.push_back({{"from", c.generators[a.from].id},
                          {"to", c.generators[a.to].id},
                          {"exp", a.exp}});
    j["arrows"] = arrows;
    if (!c.metadata.empty()) j["metadata"] = c.metadata;
    return j;
}

KnotCFKData parse_cfk_json(const nlohmann::json& j) {
    check_keys(j, {"generators", "arrows", "metadata"}, "knot complex");
    KnotCFKData k;
    const auto& jg = need(j, "generators", "knot complex");
    if (!jg.is_array()) fail("E_PARSE", "'generators' must be an array");
    std::set<std::string> ids;
    for (const auto& g : jg) {
        check_keys(g, {"id", "M", "A"}, "knot generator");
        KnotCFKData::Generator gen;
        gen.id = need_string(g, "id", "knot generator");
        if (!ids.insert(gen.id).second)
            fail("E_PARSE", "duplicate generator id '" + gen.id + "'");
        gen.M = rat_from_json(need(g, "M", "knot generator '" + gen.id + "'"),
                              "'M' of generator '" + gen.id + "'");
        gen.A = rat_from_json(need(g, "A", "knot generator '" + gen.id + "'"),
                              "'A' of generator '" + gen.id + "'");
        k.generators.push_back(std::move(gen));
    }
    const auto& ja = need(j, "arrows", "knot complex");
    if (!ja.is_array()) fail("E_PARSE", "'arrows' must be an array");
    auto gen_index = [&](const std::string& id) {
        for (size_t i = 0; i < k.generators.size(); ++i)
            if (k.generators[i].id == id) return static_cast<int>(i);
        return -1;
    };
    for (const auto& a : ja) {
        check_keys(a, {"from", "to", "z", "w"}, "knot arrow");
        KnotCFKData::Arrow arr;
        const std::string from = need_string(a, "from", "knot arrow");
        const std::string to = need_string(a, "to", "knot arrow");
        arr.from = gen_index(from);
        arr.to = gen_index(to);
        if (arr.from < 0)
            fail("E_PARSE", "arrow source '" + from + "' is not a generator");
        if (arr.to < 0)
            fail("E_PARSE", "arrow target '" + to + "' is not a generator");
        arr.z = need_int(a, "z", "knot arrow");
        arr.w = need_int(a, "w", "knot arrow");
        if (arr.z < 0 || arr.w < 0)
            fail("E_PARSE", "basepoint multiplicities must be nonnegative",
                 nlohmann::json{{"from", from}, {"to", to}});
        k.arrows.push_back(arr);
    }
    return k;
}

}  // namespace gu
