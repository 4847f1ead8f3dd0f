#pragma once

#include <string>

#include <json.hpp>

#include "core/complex.hpp"
#include "core/graph.hpp"

namespace gu {

// Parses text as JSON; E_PARSE with the parser's message on failure.
nlohmann::json parse_json_text(const std::string& text);

// Strict parsers: unknown keys are rejected (E_PARSE); "metadata" is the only
// optional extra field.  Rational values are strings "p/q" (plain integers,
// either JSON strings or JSON integer literals, are also accepted).
LabeledGraph parse_graph_json(const nlohmann::json& j);
TangleComplex parse_complex_json(const nlohmann::json& j);
KnotCFKData parse_cfk_json(const nlohmann::json& j);

nlohmann::json graph_to_json(const LabeledGraph& g, const std::string& metadata = "");
nlohmann::json complex_to_json(const TangleComplex& c);

// Rational <-> JSON helpers shared by the serializers.
Rat rat_from_json(const nlohmann::json& v, const std::string& where);
nlohmann::json rats_to_json(const std::vector<Rat>& v);

}  // namespace gu
