#include "bodycad/framework_io.hpp"

#include "bodycad/errors.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>

namespace bodycad
{

using Json = nlohmann::ordered_json;

namespace
{

enum class Slot
{
  Point,
  PointI,
  PointJ,
  Line,
  LineI,
  LineJ,
  Plane,
  PlaneI,
  PlaneJ,
  Direction,
  Normal,
  Distance,
  Angle,
};

struct Field
{
  const char* key;
  Slot slot;
};

std::vector<Field> layout(ConstraintKind kind)
{
  using enum ConstraintKind;
  using enum Slot;
  switch (kind)
  {
  case PointPointCoincidence: return {{"point", Point}};
  case PointPointDistance: return {{"point_i", PointI}, {"point_j", PointJ}, {"distance", Distance}};
  case PointLineCoincidence: return {{"point_i", PointI}, {"line_j", LineJ}};
  case PointLineDistance: return {{"point_i", PointI}, {"line_j", LineJ}, {"distance", Distance}};
  case PointPlaneCoincidence: return {{"point_i", PointI}, {"plane_j", PlaneJ}};
  case PointPlaneDistance: return {{"point_i", PointI}, {"plane_j", PlaneJ}, {"distance", Distance}};
  case LineLineParallel: return {{"point_i", PointI}, {"point_j", PointJ}, {"direction", Direction}};
  case LineLinePerpendicular: return {{"line_i", LineI}, {"line_j", LineJ}};
  case LineLineFixedAngular: return {{"line_i", LineI}, {"line_j", LineJ}, {"angle", Angle}};
  case LineLineCoincidence: return {{"line", Line}};
  case LineLineDistance: return {{"line_i", LineI}, {"line_j", LineJ}, {"distance", Distance}};
  case LinePlaneParallel:
  case LinePlanePerpendicular:
  case LinePlaneCoincidence: return {{"line_i", LineI}, {"plane_j", PlaneJ}};
  case LinePlaneFixedAngular: return {{"line_i", LineI}, {"plane_j", PlaneJ}, {"angle", Angle}};
  case LinePlaneDistance: return {{"line_i", LineI}, {"plane_j", PlaneJ}, {"distance", Distance}};
  case PlanePlaneParallel: return {{"point_i", PointI}, {"point_j", PointJ}, {"normal", Normal}};
  case PlanePlanePerpendicular: return {{"plane_i", PlaneI}, {"plane_j", PlaneJ}};
  case PlanePlaneFixedAngular: return {{"plane_i", PlaneI}, {"plane_j", PlaneJ}, {"angle", Angle}};
  case PlanePlaneCoincidence: return {{"plane", Plane}};
  case PlanePlaneDistance:
    return {{"point_i", PointI}, {"point_j", PointJ}, {"normal", Normal}, {"distance", Distance}};
  }
  return {};
}

[[noreturn]] void fail(const std::string& path, const std::string& message)
{
  throw ParseError(path + ": " + message);
}

const Json& require(const Json& object, const char* key, const std::string& path)
{
  if (!object.is_object())
    fail(path, "expected an object");
  const auto it = object.find(key);
  if (it == object.end())
    fail(path, std::string("missing field '") + key + "'");
  return *it;
}

Rational read_number(const Json& value, const std::string& path)
{
  try
  {
    if (value.is_number_integer())
      return value.is_number_unsigned() ? Rational(value.get<std::uint64_t>())
                                        : Rational(value.get<std::int64_t>());
    if (value.is_number_float())
      return rational_from_double(value.get<double>());
    if (value.is_string())
      return parse_rational(value.get<std::string>());
  }
  catch (const ParseError& e)
  {
    fail(path, e.what());
  }
  fail(path, "expected a number, a decimal string or a \"num/den\" string");
}

int read_int(const Json& value, const std::string& path)
{
  if (!value.is_number_integer())
    fail(path, "expected an integer");
  const auto x = value.get<std::int64_t>();
  if (x < std::numeric_limits<int>::min() || x > std::numeric_limits<int>::max())
    fail(path, "integer out of range");
  return static_cast<int>(x);
}

Vec3 read_vec3(const Json& value, const std::string& path)
{
  if (!value.is_array() || value.size() != 3)
    fail(path, "expected a coordinate triple");
  return Vec3(read_number(value[0], path + "[0]"), read_number(value[1], path + "[1]"),
              read_number(value[2], path + "[2]"));
}

/// {point, <directionKey>} or a pair of triples.
std::pair<Vec3, Vec3> read_element(const Json& value, const char* directionKey,
                                   const std::string& path)
{
  if (value.is_array() && value.size() == 2)
    return {read_vec3(value[0], path + "[0]"), read_vec3(value[1], path + "[1]")};
  if (!value.is_object())
    fail(path, std::string("expected {\"point\", \"") + directionKey + "\"} or a pair of triples");
  for (const auto& [key, item] : value.items())
    if (key != "point" && key != directionKey)
      fail(path, "unexpected field '" + key + "'");
  return {read_vec3(require(value, "point", path), path + ".point"),
          read_vec3(require(value, directionKey, path), path + "." + directionKey)};
}

bool is_exact_degree(const Rational& degrees, Rational& cosine)
{
  if (degrees == 0)
    cosine = 1;
  else if (degrees == 60)
    cosine = Rational(1, 2);
  else if (degrees == 90)
    cosine = 0;
  else if (degrees == 120)
    cosine = Rational(-1, 2);
  else if (degrees == 180)
    cosine = -1;
  else
    return false;
  return true;
}

Angle read_angle(const Json& value, const std::string& path)
{
  if (!value.is_object())
    fail(path, "expected {\"cos\": c} or {\"degrees\": d}");
  for (const auto& [key, item] : value.items())
    if (key != "cos" && key != "degrees" && key != "approximate")
      fail(path, "unexpected field '" + key + "'");
  const bool hasCos = value.contains("cos");
  const bool hasDegrees = value.contains("degrees");
  if (hasCos == hasDegrees)
    fail(path, "exactly one of 'cos' and 'degrees' is required");

  Angle angle;
  if (hasCos)
  {
    angle.cosine = read_number(value["cos"], path + ".cos");
    if (value.contains("approximate"))
    {
      if (!value["approximate"].is_boolean())
        fail(path + ".approximate", "expected a boolean");
      angle.approximate = value["approximate"].get<bool>();
    }
    return angle;
  }
  const Rational degrees = read_number(value["degrees"], path + ".degrees");
  if (!is_exact_degree(degrees, angle.cosine))
  {
    angle.cosine = rational_from_double(std::cos(to_double(degrees) * std::numbers::pi / 180.0));
    angle.approximate = true;
  }
  return angle;
}

CadConstraint read_constraint(const Json& value, const std::string& path)
{
  if (!value.is_object())
    fail(path, "expected an object");
  const Json& kindValue = require(value, "kind", path);
  if (!kindValue.is_string())
    fail(path + ".kind", "expected a string");
  const auto kind = kind_from_name(kindValue.get<std::string>());
  if (!kind)
    fail(path + ".kind", "unknown constraint kind '" + kindValue.get<std::string>() + "'");

  CadConstraint c;
  c.kind = *kind;
  c.i = read_int(require(value, "i", path), path + ".i");
  c.j = read_int(require(value, "j", path), path + ".j");

  const auto fields = layout(*kind);
  for (const auto& [key, item] : value.items())
  {
    const bool known = key == "kind" || key == "i" || key == "j" ||
                       std::any_of(fields.begin(), fields.end(),
                                   [&](const Field& f) { return key == f.key; });
    if (!known)
      fail(path, "unexpected field '" + key + "' for " + kindValue.get<std::string>());
  }

  for (const Field& f : fields)
  {
    const Json& item = require(value, f.key, path);
    const std::string at = path + "." + f.key;
    switch (f.slot)
    {
    case Slot::Point:
    case Slot::PointI: c.pointI = read_vec3(item, at); break;
    case Slot::PointJ: c.pointJ = read_vec3(item, at); break;
    case Slot::Line:
    case Slot::LineI: std::tie(c.pointI, c.directionI) = read_element(item, "direction", at); break;
    case Slot::LineJ: std::tie(c.pointJ, c.directionJ) = read_element(item, "direction", at); break;
    case Slot::Plane:
    case Slot::PlaneI: std::tie(c.pointI, c.directionI) = read_element(item, "normal", at); break;
    case Slot::PlaneJ: std::tie(c.pointJ, c.directionJ) = read_element(item, "normal", at); break;
    case Slot::Direction:
    case Slot::Normal: c.directionI = read_vec3(item, at); break;
    case Slot::Distance: c.distance = read_number(item, at); break;
    case Slot::Angle: c.angle = read_angle(item, at); break;
    }
  }
  return c;
}

Json parse_json(std::string_view text)
{
  try
  {
    return Json::parse(text.begin(), text.end());
  }
  catch (const nlohmann::json::parse_error& e)
  {
    const auto offset = std::min<std::size_t>(e.byte, text.size());
    const auto line = 1 + std::count(text.begin(), text.begin() + static_cast<long>(offset), '\n');
    throw ParseError("line " + std::to_string(line) + ": " + e.what());
  }
}

Json vec3_to_json(const Vec3& v)
{
  return Json::array({rational_to_json(v.x()), rational_to_json(v.y()), rational_to_json(v.z())});
}

Json element_to_json(const Vec3& point, const Vec3& direction, const char* directionKey)
{
  Json out = Json::object();
  out["point"] = vec3_to_json(point);
  out[directionKey] = vec3_to_json(direction);
  return out;
}

}  // namespace

Json rational_to_json(const Rational& value)
{
  if (denominator(value) == 1)
  {
    const Integer n = numerator(value);
    if (n >= std::numeric_limits<std::int64_t>::min() && n <= std::numeric_limits<std::int64_t>::max())
      return n.convert_to<std::int64_t>();
  }
  return to_string(value);
}

std::string read_text_file(const std::filesystem::path& path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw ParseError(path.string() + ": cannot open file");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

Framework parse_framework(std::string_view text)
{
  const Json doc = parse_json(text);
  if (!doc.is_object())
    fail("$", "expected an object");
  for (const auto& [key, item] : doc.items())
    if (key != "version" && key != "bodies" && key != "constraints")
      fail("$", "unexpected field '" + key + "'");
  if (read_int(require(doc, "version", "$"), "$.version") != 1)
    fail("$.version", "unsupported version");

  Framework fw;
  const Json& bodies = require(doc, "bodies", "$");
  if (!bodies.is_array())
    fail("$.bodies", "expected an array");
  for (std::size_t k = 0; k < bodies.size(); ++k)
  {
    const std::string at = "$.bodies[" + std::to_string(k) + "]";
    Body body;
    body.id = read_int(require(bodies[k], "id", at), at + ".id");
    if (body.id != static_cast<int>(k) + 1)
      fail(at + ".id", "body ids must be 1..n in order");
    body.label = std::to_string(body.id);
    if (bodies[k].contains("label"))
    {
      if (!bodies[k]["label"].is_string())
        fail(at + ".label", "expected a string");
      body.label = bodies[k]["label"].get<std::string>();
    }
    fw.bodies.push_back(std::move(body));
  }

  const Json& constraints = require(doc, "constraints", "$");
  if (!constraints.is_array())
    fail("$.constraints", "expected an array");
  for (std::size_t k = 0; k < constraints.size(); ++k)
    fw.constraints.push_back(read_constraint(constraints[k], "$.constraints[" + std::to_string(k) + "]"));
  return fw;
}

Framework load_framework(const std::filesystem::path& path)
{
  try
  {
    return parse_framework(read_text_file(path));
  }
  catch (const ParseError& e)
  {
    throw ParseError(path.string() + ": " + e.what());
  }
}

Json framework_to_json(const Framework& fw)
{
  Json doc = Json::object();
  doc["version"] = 1;
  doc["bodies"] = Json::array();
  for (const auto& b : fw.bodies)
    doc["bodies"].push_back(Json{{"id", b.id}, {"label", b.label}});
  doc["constraints"] = Json::array();
  for (const auto& c : fw.constraints)
  {
    Json item = Json::object();
    item["kind"] = std::string(kind_info(c.kind).name);
    item["i"] = c.i;
    item["j"] = c.j;
    for (const Field& f : layout(c.kind))
    {
      switch (f.slot)
      {
      case Slot::Point:
      case Slot::PointI: item[f.key] = vec3_to_json(c.pointI); break;
      case Slot::PointJ: item[f.key] = vec3_to_json(c.pointJ); break;
      case Slot::Line:
      case Slot::LineI: item[f.key] = element_to_json(c.pointI, c.directionI, "direction"); break;
      case Slot::LineJ: item[f.key] = element_to_json(c.pointJ, c.directionJ, "direction"); break;
      case Slot::Plane:
      case Slot::PlaneI: item[f.key] = element_to_json(c.pointI, c.directionI, "normal"); break;
      case Slot::PlaneJ: item[f.key] = element_to_json(c.pointJ, c.directionJ, "normal"); break;
      case Slot::Direction:
      case Slot::Normal: item[f.key] = vec3_to_json(c.directionI); break;
      case Slot::Distance: item[f.key] = rational_to_json(c.distance.value_or(Rational(0))); break;
      case Slot::Angle:
      {
        const Angle a = c.angle.value_or(Angle{});
        Json angle{{"cos", rational_to_json(a.cosine)}};
        if (a.approximate)
          angle["approximate"] = true;
        item[f.key] = angle;
        break;
      }
      }
    }
    doc["constraints"].push_back(std::move(item));
  }
  return doc;
}

std::string serialize_framework(const Framework& fw)
{
  return framework_to_json(fw).dump(2) + "\n";
}

MultiGraph parse_graph(std::string_view text)
{
  const Json doc = parse_json(text);
  if (!doc.is_object())
    fail("$", "expected an object");
  for (const auto& [key, item] : doc.items())
    if (key != "vertexCount" && key != "edges")
      fail("$", "unexpected field '" + key + "'");
  const int n = read_int(require(doc, "vertexCount", "$"), "$.vertexCount");
  if (n < 0)
    fail("$.vertexCount", "must be nonnegative");
  MultiGraph g(n);
  const Json& edges = require(doc, "edges", "$");
  if (!edges.is_array())
    fail("$.edges", "expected an array");
  for (std::size_t k = 0; k < edges.size(); ++k)
  {
    const std::string at = "$.edges[" + std::to_string(k) + "]";
    const int u = read_int(require(edges[k], "u", at), at + ".u");
    const int v = read_int(require(edges[k], "v", at), at + ".v");
    EdgeColor color = EdgeColor::None;
    if (edges[k].contains("color"))
    {
      const Json& c = edges[k]["color"];
      if (c == "red")
        color = EdgeColor::Red;
      else if (c == "black")
        color = EdgeColor::Black;
      else if (c != "none")
        fail(at + ".color", "expected \"red\", \"black\" or \"none\"");
    }
    try
    {
      g.add_edge(u, v, color);
    }
    catch (const Error& e)
    {
      fail(at, e.what());
    }
  }
  return g;
}

MultiGraph load_graph(const std::filesystem::path& path)
{
  try
  {
    return parse_graph(read_text_file(path));
  }
  catch (const ParseError& e)
  {
    throw ParseError(path.string() + ": " + e.what());
  }
}

Json graph_to_json(const MultiGraph& g)
{
  Json doc = Json::object();
  doc["vertexCount"] = g.vertex_count();
  doc["edges"] = Json::array();
  for (const auto& e : g.edges())
  {
    const char* color = e.color == EdgeColor::Red ? "red" : e.color == EdgeColor::Black ? "black" : "none";
    doc["edges"].push_back(Json{{"u", e.u}, {"v", e.v}, {"color", color}});
  }
  return doc;
}

std::string serialize_graph(const MultiGraph& g)
{
  return graph_to_json(g).dump(2) + "\n";
}

}  // namespace bodycad
