#pragma once

// JSON file formats.
//
// Framework file:
//   {"version": 1,
//    "bodies": [{"id": 1, "label": "A"}, ...],
//    "constraints": [{"kind": "line_plane_distance", "i": 1, "j": 2,
//                     "line_i": {"point": [0,2,0], "direction": [0,0,1]},
//                     "plane_j": {"point": [0,1,0], "normal": [0,1,0]},
//                     "distance": 1}, ...]}
// Numbers are integers, strings holding decimals or "num/den" rationals, or JSON floats
// (read through their shortest decimal spelling). Angles are {"cos": c} or {"degrees": d}.
//
// Graph file:
//   {"vertexCount": 3, "edges": [{"u": 0, "v": 1, "color": "red"}, ...]}
// with colors "red", "black" or "none" (the default).

#include "bodycad/model.hpp"
#include "bodycad/sparsity.hpp"

#include <filesystem>
#include <string>
#include <string_view>

#include <json.hpp>

namespace bodycad
{

/// Throws ParseError naming the line (for syntax errors) or the field path.
Framework parse_framework(std::string_view text);
Framework load_framework(const std::filesystem::path& path);
nlohmann::ordered_json framework_to_json(const Framework& fw);
std::string serialize_framework(const Framework& fw);

MultiGraph parse_graph(std::string_view text);
MultiGraph load_graph(const std::filesystem::path& path);
nlohmann::ordered_json graph_to_json(const MultiGraph& g);
std::string serialize_graph(const MultiGraph& g);

/// Integer when integral and small, otherwise the "num/den" string.
nlohmann::ordered_json rational_to_json(const Rational& value);
std::string read_text_file(const std::filesystem::path& path);

}  // namespace bodycad
