#pragma once

#include "bodycad/scalar.hpp"

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace bodycad
{

using BodyId = int;

/// The 21 cad constraint kinds, numbered in their canonical order.
enum class ConstraintKind : int
{
  PointPointCoincidence = 1,
  PointPointDistance,
  PointLineCoincidence,
  PointLineDistance,
  PointPlaneCoincidence,
  PointPlaneDistance,
  LineLineParallel,
  LineLinePerpendicular,
  LineLineFixedAngular,
  LineLineCoincidence,
  LineLineDistance,
  LinePlaneParallel,
  LinePlanePerpendicular,
  LinePlaneFixedAngular,
  LinePlaneCoincidence,
  LinePlaneDistance,
  PlanePlaneParallel,
  PlanePlanePerpendicular,
  PlanePlaneFixedAngular,
  PlanePlaneCoincidence,
  PlanePlaneDistance,
};

enum class ElementType
{
  Point,
  Line,
  Plane,
};

enum class PrimitiveClass
{
  Angular,
  Blind,
};

/// How the payload stores its geometry.
enum class Sharing
{
  None,             ///< one element per body
  SharedElement,    ///< a single element affixed to both bodies (the coincidence kinds)
  SharedDirection,  ///< two points and one common direction (parallel kinds and plane-plane distance)
};

struct KindInfo
{
  ConstraintKind kind;
  std::string_view name;  ///< snake_case wire name
  ElementType first;
  ElementType second;
  int angular;  ///< primitive angular rows
  int blind;    ///< primitive blind rows
  bool hasDistance;
  bool hasAngle;
  Sharing sharing;
};

const KindInfo& kind_info(ConstraintKind kind);
std::optional<ConstraintKind> kind_from_name(std::string_view name);
const std::array<ConstraintKind, 21>& all_kinds();
std::string_view to_string(PrimitiveClass cls);

struct Point
{
  Vec3 position = Vec3::Zero();
  friend bool operator==(const Point&, const Point&) = default;
};

struct Line
{
  Vec3 point = Vec3::Zero();
  Vec3 direction = Vec3::Zero();
  friend bool operator==(const Line&, const Line&) = default;
};

struct Plane
{
  Vec3 point = Vec3::Zero();
  Vec3 normal = Vec3::Zero();
  friend bool operator==(const Plane&, const Plane&) = default;
};

/// Fixed angle payload. The cosine is stored so that validation stays rational;
/// `approximate` marks cosines derived from a decimal degree value.
struct Angle
{
  Rational cosine;
  bool approximate = false;
  friend bool operator==(const Angle&, const Angle&) = default;
};

/// One cad constraint between bodies i and j with its geometric payload in world
/// coordinates. Use the factory functions below; field usage per kind:
///   - pointI/directionI describe the element on body i, pointJ/directionJ the one on j
///     (directions are line directions or plane normals, unnormalized);
///   - SharedElement kinds store the single element in pointI/directionI;
///   - SharedDirection kinds store both points and the common direction in directionI.
struct CadConstraint
{
  BodyId i = 0;
  BodyId j = 0;
  ConstraintKind kind = ConstraintKind::PointPointCoincidence;
  Vec3 pointI = Vec3::Zero();
  Vec3 pointJ = Vec3::Zero();
  Vec3 directionI = Vec3::Zero();
  Vec3 directionJ = Vec3::Zero();
  std::optional<Rational> distance;
  std::optional<Angle> angle;

  Line line_i() const { return {pointI, directionI}; }
  Line line_j() const { return {pointJ, directionJ}; }
  Plane plane_i() const { return {pointI, directionI}; }
  Plane plane_j() const { return {pointJ, directionJ}; }

  friend bool operator==(const CadConstraint& a, const CadConstraint& b)
  {
    return a.i == b.i && a.j == b.j && a.kind == b.kind && a.pointI == b.pointI &&
           a.pointJ == b.pointJ && a.directionI == b.directionI &&
           a.directionJ == b.directionJ && a.distance == b.distance && a.angle == b.angle;
  }
};

// Factories, one per kind. Arguments follow the element order (body i first).
CadConstraint point_point_coincidence(BodyId i, BodyId j, const Vec3& p);
CadConstraint point_point_distance(BodyId i, BodyId j, const Vec3& pi, const Vec3& pj,
                                   const Rational& a);
CadConstraint point_line_coincidence(BodyId i, BodyId j, const Vec3& pi, const Line& lj);
CadConstraint point_line_distance(BodyId i, BodyId j, const Vec3& pi, const Line& lj,
                                  const Rational& a);
CadConstraint point_plane_coincidence(BodyId i, BodyId j, const Vec3& pi, const Plane& pj);
CadConstraint point_plane_distance(BodyId i, BodyId j, const Vec3& pi, const Plane& pj,
                                   const Rational& a);
CadConstraint line_line_parallel(BodyId i, BodyId j, const Vec3& pi, const Vec3& pj,
                                 const Vec3& d);
CadConstraint line_line_perpendicular(BodyId i, BodyId j, const Line& li, const Line& lj);
CadConstraint line_line_fixed_angular(BodyId i, BodyId j, const Line& li, const Line& lj,
                                      const Angle& alpha);
CadConstraint line_line_coincidence(BodyId i, BodyId j, const Line& l);
CadConstraint line_line_distance(BodyId i, BodyId j, const Line& li, const Line& lj,
                                 const Rational& a);
CadConstraint line_plane_parallel(BodyId i, BodyId j, const Line& li, const Plane& pj);
CadConstraint line_plane_perpendicular(BodyId i, BodyId j, const Line& li, const Plane& pj);
CadConstraint line_plane_fixed_angular(BodyId i, BodyId j, const Line& li, const Plane& pj,
                                       const Angle& alpha);
CadConstraint line_plane_coincidence(BodyId i, BodyId j, const Line& li, const Plane& pj);
CadConstraint line_plane_distance(BodyId i, BodyId j, const Line& li, const Plane& pj,
                                  const Rational& a);
CadConstraint plane_plane_parallel(BodyId i, BodyId j, const Vec3& pi, const Vec3& pj,
                                   const Vec3& n);
CadConstraint plane_plane_perpendicular(BodyId i, BodyId j, const Plane& pi, const Plane& pj);
CadConstraint plane_plane_fixed_angular(BodyId i, BodyId j, const Plane& pi, const Plane& pj,
                                        const Angle& alpha);
CadConstraint plane_plane_coincidence(BodyId i, BodyId j, const Plane& p);
CadConstraint plane_plane_distance(BodyId i, BodyId j, const Vec3& pi, const Vec3& pj,
                                   const Vec3& n, const Rational& a);

struct Body
{
  BodyId id = 0;
  std::string label;
  friend bool operator==(const Body&, const Body&) = default;
};

struct Framework
{
  std::vector<Body> bodies;
  std::vector<CadConstraint> constraints;

  int body_count() const { return static_cast<int>(bodies.size()); }
  friend bool operator==(const Framework&, const Framework&) = default;
};

/// A framework with bodies 1..n labelled "1".."n" and no constraints.
Framework make_framework(int bodyCount);

struct Violation
{
  static constexpr std::size_t kFramework = static_cast<std::size_t>(-1);

  std::size_t constraint = kFramework;  ///< index into Framework::constraints
  std::string message;
};

/// Geometric consistency of every payload at the given coordinates. Exact, except for
/// angles marked approximate which are compared with `angleTolerance`.
std::vector<Violation> validate(const Framework& fw, double angleTolerance = 1e-9);

struct CadGraph
{
  struct Edge
  {
    BodyId u = 0;
    BodyId v = 0;
    ConstraintKind kind{};
    friend bool operator==(const Edge&, const Edge&) = default;
  };

  int vertexCount = 0;  ///< vertices are body ids 1..vertexCount
  std::vector<Edge> edges;
  friend bool operator==(const CadGraph&, const CadGraph&) = default;
};

CadGraph cad_graph_of(const Framework& fw);

struct PrimitiveEdge
{
  BodyId u = 0;
  BodyId v = 0;
  PrimitiveClass cls{};
  std::size_t source = 0;  ///< index of the cad edge it came from
  int ordinal = 0;         ///< position among the source's primitives
  friend bool operator==(const PrimitiveEdge&, const PrimitiveEdge&) = default;
};

/// Red edges are primitive angular constraints, black edges primitive blind ones. Edges
/// are listed by source in input order, angular before blind within a source.
struct PrimitiveCadGraph
{
  int vertexCount = 0;
  std::vector<PrimitiveEdge> edges;

  std::vector<PrimitiveEdge> red() const;
  std::vector<PrimitiveEdge> black() const;
  friend bool operator==(const PrimitiveCadGraph&, const PrimitiveCadGraph&) = default;
};

PrimitiveCadGraph primitive_graph_of(const CadGraph& g);

// Tangency ----------------------------------------------------------------------------

struct Sphere
{
  Vec3 center = Vec3::Zero();
  Rational radius;
};

struct Cylinder
{
  Line axis;
  Rational radius;
};

using TangentShape = std::variant<Sphere, Cylinder>;
using TangentTarget = std::variant<Sphere, Cylinder, Plane, Line, Point>;

/// `shape` sits on body i, `target` on body j. `internal` selects internal tangency
/// (|r1 - r2|) for shape/shape contact; the default is external (r1 + r2).
struct TangencyConstraint
{
  BodyId i = 0;
  BodyId j = 0;
  TangentShape shape;
  TangentTarget target;
  bool internal = false;
};

/// Replaces spheres by their centers and cylinders by their axes, yielding a distance
/// constraint. A cylinder tangent to a point or sphere gives a point-line distance with
/// the bodies swapped, since the point-line factory puts the point on body i.
CadConstraint reduce_tangency(const TangencyConstraint& t);

}  // namespace bodycad
