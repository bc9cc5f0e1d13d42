#include "bodycad/model.hpp"

#include "bodycad/errors.hpp"

#include <algorithm>
#include <cmath>

namespace bodycad
{

namespace
{

using enum ConstraintKind;
constexpr auto kPt = ElementType::Point;
constexpr auto kLn = ElementType::Line;
constexpr auto kPl = ElementType::Plane;

constexpr std::array<KindInfo, 21> kKinds{{
  {PointPointCoincidence, "point_point_coincidence", kPt, kPt, 0, 3, false, false, Sharing::SharedElement},
  {PointPointDistance, "point_point_distance", kPt, kPt, 0, 1, true, false, Sharing::None},
  {PointLineCoincidence, "point_line_coincidence", kPt, kLn, 0, 2, false, false, Sharing::None},
  {PointLineDistance, "point_line_distance", kPt, kLn, 0, 1, true, false, Sharing::None},
  {PointPlaneCoincidence, "point_plane_coincidence", kPt, kPl, 0, 1, false, false, Sharing::None},
  {PointPlaneDistance, "point_plane_distance", kPt, kPl, 0, 1, true, false, Sharing::None},
  {LineLineParallel, "line_line_parallel", kLn, kLn, 2, 0, false, false, Sharing::SharedDirection},
  {LineLinePerpendicular, "line_line_perpendicular", kLn, kLn, 1, 0, false, false, Sharing::None},
  {LineLineFixedAngular, "line_line_fixed_angular", kLn, kLn, 1, 0, false, true, Sharing::None},
  {LineLineCoincidence, "line_line_coincidence", kLn, kLn, 2, 2, false, false, Sharing::SharedElement},
  {LineLineDistance, "line_line_distance", kLn, kLn, 0, 1, true, false, Sharing::None},
  {LinePlaneParallel, "line_plane_parallel", kLn, kPl, 1, 0, false, false, Sharing::None},
  {LinePlanePerpendicular, "line_plane_perpendicular", kLn, kPl, 2, 0, false, false, Sharing::None},
  {LinePlaneFixedAngular, "line_plane_fixed_angular", kLn, kPl, 1, 0, false, true, Sharing::None},
  {LinePlaneCoincidence, "line_plane_coincidence", kLn, kPl, 1, 1, false, false, Sharing::None},
  {LinePlaneDistance, "line_plane_distance", kLn, kPl, 1, 1, true, false, Sharing::None},
  {PlanePlaneParallel, "plane_plane_parallel", kPl, kPl, 2, 0, false, false, Sharing::SharedDirection},
  {PlanePlanePerpendicular, "plane_plane_perpendicular", kPl, kPl, 1, 0, false, false, Sharing::None},
  {PlanePlaneFixedAngular, "plane_plane_fixed_angular", kPl, kPl, 1, 0, false, true, Sharing::None},
  {PlanePlaneCoincidence, "plane_plane_coincidence", kPl, kPl, 2, 1, false, false, Sharing::SharedElement},
  {PlanePlaneDistance, "plane_plane_distance", kPl, kPl, 2, 1, true, false, Sharing::SharedDirection},
}};

constexpr std::array<ConstraintKind, 21> kAllKinds = [] {
  std::array<ConstraintKind, 21> out{};
  for (std::size_t k = 0; k < out.size(); ++k)
    out[k] = kKinds[k].kind;
  return out;
}();

CadConstraint make(BodyId i, BodyId j, ConstraintKind kind)
{
  CadConstraint c;
  c.i = i;
  c.j = j;
  c.kind = kind;
  return c;
}

CadConstraint with_elements(CadConstraint c, const Vec3& pi, const Vec3& di, const Vec3& pj,
                            const Vec3& dj)
{
  c.pointI = pi;
  c.directionI = di;
  c.pointJ = pj;
  c.directionJ = dj;
  return c;
}

const Vec3 kZero = Vec3::Zero();

}  // namespace

const KindInfo& kind_info(ConstraintKind kind)
{
  return kKinds.at(static_cast<std::size_t>(kind) - 1);
}

std::optional<ConstraintKind> kind_from_name(std::string_view name)
{
  for (const auto& info : kKinds)
    if (info.name == name)
      return info.kind;
  return std::nullopt;
}

const std::array<ConstraintKind, 21>& all_kinds()
{
  return kAllKinds;
}

std::string_view to_string(PrimitiveClass cls)
{
  return cls == PrimitiveClass::Angular ? "angular" : "blind";
}

CadConstraint point_point_coincidence(BodyId i, BodyId j, const Vec3& p)
{
  return with_elements(make(i, j, PointPointCoincidence), p, kZero, kZero, kZero);
}

CadConstraint point_point_distance(BodyId i, BodyId j, const Vec3& pi, const Vec3& pj,
                                   const Rational& a)
{
  auto c = with_elements(make(i, j, PointPointDistance), pi, kZero, pj, kZero);
  c.distance = a;
  return c;
}

CadConstraint point_line_coincidence(BodyId i, BodyId j, const Vec3& pi, const Line& lj)
{
  return with_elements(make(i, j, PointLineCoincidence), pi, kZero, lj.point, lj.direction);
}

CadConstraint point_line_distance(BodyId i, BodyId j, const Vec3& pi, const Line& lj,
                                  const Rational& a)
{
  auto c = with_elements(make(i, j, PointLineDistance), pi, kZero, lj.point, lj.direction);
  c.distance = a;
  return c;
}

CadConstraint point_plane_coincidence(BodyId i, BodyId j, const Vec3& pi, const Plane& pj)
{
  return with_elements(make(i, j, PointPlaneCoincidence), pi, kZero, pj.point, pj.normal);
}

CadConstraint point_plane_distance(BodyId i, BodyId j, const Vec3& pi, const Plane& pj,
                                   const Rational& a)
{
  auto c = with_elements(make(i, j, PointPlaneDistance), pi, kZero, pj.point, pj.normal);
  c.distance = a;
  return c;
}

CadConstraint line_line_parallel(BodyId i, BodyId j, const Vec3& pi, const Vec3& pj,
                                 const Vec3& d)
{
  return with_elements(make(i, j, LineLineParallel), pi, d, pj, kZero);
}

CadConstraint line_line_perpendicular(BodyId i, BodyId j, const Line& li, const Line& lj)
{
  return with_elements(make(i, j, LineLinePerpendicular), li.point, li.direction, lj.point,
                       lj.direction);
}

CadConstraint line_line_fixed_angular(BodyId i, BodyId j, const Line& li, const Line& lj,
                                      const Angle& alpha)
{
  auto c = with_elements(make(i, j, LineLineFixedAngular), li.point, li.direction, lj.point,
                         lj.direction);
  c.angle = alpha;
  return c;
}

CadConstraint line_line_coincidence(BodyId i, BodyId j, const Line& l)
{
  return with_elements(make(i, j, LineLineCoincidence), l.point, l.direction, kZero, kZero);
}

CadConstraint line_line_distance(BodyId i, BodyId j, const Line& li, const Line& lj,
                                 const Rational& a)
{
  auto c = with_elements(make(i, j, LineLineDistance), li.point, li.direction, lj.point,
                         lj.direction);
  c.distance = a;
  return c;
}

CadConstraint line_plane_parallel(BodyId i, BodyId j, const Line& li, const Plane& pj)
{
  return with_elements(make(i, j, LinePlaneParallel), li.point, li.direction, pj.point,
                       pj.normal);
}

CadConstraint line_plane_perpendicular(BodyId i, BodyId j, const Line& li, const Plane& pj)
{
  return with_elements(make(i, j, LinePlanePerpendicular), li.point, li.direction, pj.point,
                       pj.normal);
}

CadConstraint line_plane_fixed_angular(BodyId i, BodyId j, const Line& li, const Plane& pj,
                                       const Angle& alpha)
{
  auto c = with_elements(make(i, j, LinePlaneFixedAngular), li.point, li.direction, pj.point,
                         pj.normal);
  c.angle = alpha;
  return c;
}

CadConstraint line_plane_coincidence(BodyId i, BodyId j, const Line& li, const Plane& pj)
{
  return with_elements(make(i, j, LinePlaneCoincidence), li.point, li.direction, pj.point,
                       pj.normal);
}

CadConstraint line_plane_distance(BodyId i, BodyId j, const Line& li, const Plane& pj,
                                  const Rational& a)
{
  auto c = with_elements(make(i, j, LinePlaneDistance), li.point, li.direction, pj.point,
                         pj.normal);
  c.distance = a;
  return c;
}

CadConstraint plane_plane_parallel(BodyId i, BodyId j, const Vec3& pi, const Vec3& pj,
                                   const Vec3& n)
{
  return with_elements(make(i, j, PlanePlaneParallel), pi, n, pj, kZero);
}

CadConstraint plane_plane_perpendicular(BodyId i, BodyId j, const Plane& pi, const Plane& pj)
{
  return with_elements(make(i, j, PlanePlanePerpendicular), pi.point, pi.normal, pj.point,
                       pj.normal);
}

CadConstraint plane_plane_fixed_angular(BodyId i, BodyId j, const Plane& pi, const Plane& pj,
                                        const Angle& alpha)
{
  auto c = with_elements(make(i, j, PlanePlaneFixedAngular), pi.point, pi.normal, pj.point,
                         pj.normal);
  c.angle = alpha;
  return c;
}

CadConstraint plane_plane_coincidence(BodyId i, BodyId j, const Plane& p)
{
  return with_elements(make(i, j, PlanePlaneCoincidence), p.point, p.normal, kZero, kZero);
}

CadConstraint plane_plane_distance(BodyId i, BodyId j, const Vec3& pi, const Vec3& pj,
                                   const Vec3& n, const Rational& a)
{
  auto c = with_elements(make(i, j, PlanePlaneDistance), pi, n, pj, kZero);
  c.distance = a;
  return c;
}

Framework make_framework(int bodyCount)
{
  Framework fw;
  for (int id = 1; id <= bodyCount; ++id)
    fw.bodies.push_back({id, std::to_string(id)});
  return fw;
}

// Validation --------------------------------------------------------------------------

namespace
{

class Checker
{
public:
  Checker(std::size_t index, std::vector<Violation>& out, double angleTolerance)
    : index_(index), out_(out), angleTolerance_(angleTolerance)
  {
  }

  void fail(std::string message) { out_.push_back({index_, std::move(message)}); }

  void nonzero(const Vec3& d, const char* what)
  {
    if (d.isZero())
      fail(std::string(what) + " is the zero vector");
  }

  void zero(const Rational& value, const char* what)
  {
    if (value != 0)
      fail(what);
  }

  void zero(const Vec3& value, const char* what)
  {
    if (!value.isZero())
      fail(what);
  }

  /// lhs == rhs, either exactly or (for approximate angles) within tolerance.
  void equal(const Rational& lhs, const Rational& rhs, bool approximate, const char* what)
  {
    if (approximate)
    {
      const double scale = std::max({1.0, std::abs(to_double(lhs)), std::abs(to_double(rhs))});
      if (std::abs(to_double(lhs - rhs)) > angleTolerance_ * scale)
        fail(what);
    }
    else if (lhs != rhs)
    {
      fail(what);
    }
  }

  /// <di,dj>^2 == cos^2 |di|^2 |dj|^2, the scale-free form of a fixed angle.
  void angle_between(const Vec3& di, const Vec3& dj, const Rational& cosSquared,
                     bool approximate, const char* what)
  {
    const Rational dot = di.dot(dj);
    equal(dot * dot, cosSquared * di.squaredNorm() * dj.squaredNorm(), approximate, what);
  }

private:
  std::size_t index_;
  std::vector<Violation>& out_;
  double angleTolerance_;
};

}  // namespace

std::vector<Violation> validate(const Framework& fw, double angleTolerance)
{
  std::vector<Violation> out;
  const int n = fw.body_count();
  for (int k = 0; k < n; ++k)
    if (fw.bodies[k].id != k + 1)
      out.push_back({Violation::kFramework, "body ids must be 1..n in order; found id " +
                                                std::to_string(fw.bodies[k].id) + " at position " +
                                                std::to_string(k + 1)});

  for (std::size_t idx = 0; idx < fw.constraints.size(); ++idx)
  {
    const CadConstraint& c = fw.constraints[idx];
    const KindInfo& info = kind_info(c.kind);
    Checker check(idx, out, angleTolerance);

    if (c.i < 1 || c.i > n || c.j < 1 || c.j > n)
    {
      check.fail("references an unknown body");
      continue;
    }
    if (c.i == c.j)
    {
      check.fail("joins a body to itself");
      continue;
    }
    if (info.hasDistance && !c.distance)
    {
      check.fail("distance payload missing");
      continue;
    }
    if (info.hasAngle && !c.angle)
    {
      check.fail("angle payload missing");
      continue;
    }
    if (info.hasDistance && *c.distance < 0)
    {
      check.fail("negative distance");
      continue;
    }
    if (info.hasAngle && (c.angle->cosine < -1 || c.angle->cosine > 1))
    {
      check.fail("cosine outside [-1, 1]");
      continue;
    }

    if (info.first != ElementType::Point)
      check.nonzero(c.directionI, "direction on body i");
    if (info.second != ElementType::Point && info.sharing == Sharing::None)
      check.nonzero(c.directionJ, "direction on body j");

    const Rational a2 = info.hasDistance ? Rational(*c.distance * *c.distance) : Rational(0);
    const Vec3 offset = c.pointI - c.pointJ;

    switch (c.kind)
    {
    case PointPointCoincidence:
    case LineLineParallel:
    case LineLineCoincidence:
    case PlanePlaneParallel:
    case PlanePlaneCoincidence:
      break;
    case PointPointDistance:
      check.equal(offset.squaredNorm(), a2, false, "realized point-point distance differs from payload");
      break;
    case PointLineCoincidence:
      check.zero(Vec3(offset.cross(c.directionJ)), "point does not lie on the line");
      break;
    case PointLineDistance:
    {
      // |offset x d|^2 / |d|^2 is the squared distance from the point to the line.
      const Rational dist2 = Vec3(offset.cross(c.directionJ)).squaredNorm();
      check.equal(dist2, a2 * c.directionJ.squaredNorm(), false,
                  "realized point-line distance differs from payload");
      break;
    }
    case PointPlaneCoincidence:
      check.zero(Rational(offset.dot(c.directionJ)), "point does not lie in the plane");
      break;
    case PointPlaneDistance:
    case PlanePlaneDistance:
    {
      const Vec3& n = c.kind == PointPlaneDistance ? c.directionJ : c.directionI;
      const Rational h = offset.dot(n);
      check.equal(h * h, a2 * n.squaredNorm(), false, "realized plane distance differs from payload");
      break;
    }
    case LineLinePerpendicular:
    case LinePlaneParallel:
    case PlanePlanePerpendicular:
      check.zero(Rational(c.directionI.dot(c.directionJ)),
                 c.kind == LinePlaneParallel ? "line is not parallel to the plane"
                                             : "elements are not perpendicular");
      break;
    case LineLineFixedAngular:
    case PlanePlaneFixedAngular:
    {
      const Rational cos2 = c.angle->cosine * c.angle->cosine;
      check.angle_between(c.directionI, c.directionJ, cos2, c.angle->approximate,
                          "realized angle differs from payload");
      break;
    }
    case LinePlaneFixedAngular:
    {
      // The line makes angle alpha with the plane, i.e. pi/2 - alpha with its normal.
      const Rational sin2 = 1 - c.angle->cosine * c.angle->cosine;
      check.angle_between(c.directionI, c.directionJ, sin2, c.angle->approximate,
                          "realized line-plane angle differs from payload");
      break;
    }
    case LineLineDistance:
    {
      const Vec3 normal = c.directionI.cross(c.directionJ);
      if (normal.isZero())
      {
        const Rational dist2 = Vec3(offset.cross(c.directionI)).squaredNorm();
        check.equal(dist2, a2 * c.directionI.squaredNorm(), false,
                    "realized line-line distance differs from payload");
      }
      else
      {
        const Rational h = offset.dot(normal);
        check.equal(h * h, a2 * normal.squaredNorm(), false,
                    "realized line-line distance differs from payload");
      }
      break;
    }
    case LinePlanePerpendicular:
      check.zero(Vec3(c.directionI.cross(c.directionJ)), "line is not perpendicular to the plane");
      break;
    case LinePlaneCoincidence:
      check.zero(Rational(c.directionI.dot(c.directionJ)), "line is not parallel to the plane");
      check.zero(Rational(offset.dot(c.directionJ)), "line point does not lie in the plane");
      break;
    case LinePlaneDistance:
    {
      check.zero(Rational(c.directionI.dot(c.directionJ)), "line is not parallel to the plane");
      const Rational h = offset.dot(c.directionJ);
      check.equal(h * h, a2 * c.directionJ.squaredNorm(), false,
                  "realized line-plane distance differs from payload");
      break;
    }
    }
  }
  return out;
}

// Graphs ------------------------------------------------------------------------------

CadGraph cad_graph_of(const Framework& fw)
{
  CadGraph g;
  g.vertexCount = fw.body_count();
  g.edges.reserve(fw.constraints.size());
  for (const auto& c : fw.constraints)
    g.edges.push_back({c.i, c.j, c.kind});
  return g;
}

std::vector<PrimitiveEdge> PrimitiveCadGraph::red() const
{
  std::vector<PrimitiveEdge> out;
  std::copy_if(edges.begin(), edges.end(), std::back_inserter(out),
               [](const PrimitiveEdge& e) { return e.cls == PrimitiveClass::Angular; });
  return out;
}

std::vector<PrimitiveEdge> PrimitiveCadGraph::black() const
{
  std::vector<PrimitiveEdge> out;
  std::copy_if(edges.begin(), edges.end(), std::back_inserter(out),
               [](const PrimitiveEdge& e) { return e.cls == PrimitiveClass::Blind; });
  return out;
}

PrimitiveCadGraph primitive_graph_of(const CadGraph& g)
{
  PrimitiveCadGraph out;
  out.vertexCount = g.vertexCount;
  for (std::size_t s = 0; s < g.edges.size(); ++s)
  {
    const auto& e = g.edges[s];
    const KindInfo& info = kind_info(e.kind);
    int ordinal = 0;
    for (int k = 0; k < info.angular; ++k)
      out.edges.push_back({e.u, e.v, PrimitiveClass::Angular, s, ordinal++});
    for (int k = 0; k < info.blind; ++k)
      out.edges.push_back({e.u, e.v, PrimitiveClass::Blind, s, ordinal++});
  }
  return out;
}

// Tangency ----------------------------------------------------------------------------

namespace
{

void require_positive(const Rational& r)
{
  if (r <= 0)
    throw InvalidRadius("tangency radius must be positive, got " + to_string(r));
}

}  // namespace

CadConstraint reduce_tangency(const TangencyConstraint& t)
{
  const bool shapeIsSphere = std::holds_alternative<Sphere>(t.shape);
  const Rational r1 = shapeIsSphere ? std::get<Sphere>(t.shape).radius
                                    : std::get<Cylinder>(t.shape).radius;
  require_positive(r1);

  const auto offset = [&](const Rational& r2) {
    require_positive(r2);
    return t.internal ? Rational(abs(r1 - r2)) : Rational(r1 + r2);
  };

  if (shapeIsSphere)
  {
    const Vec3& center = std::get<Sphere>(t.shape).center;
    return std::visit(
      [&](const auto& target) -> CadConstraint {
        using T = std::decay_t<decltype(target)>;
        if constexpr (std::is_same_v<T, bodycad::Sphere>)
          return point_point_distance(t.i, t.j, center, target.center, offset(target.radius));
        else if constexpr (std::is_same_v<T, Cylinder>)
          return point_line_distance(t.i, t.j, center, target.axis, offset(target.radius));
        else if constexpr (std::is_same_v<T, bodycad::Plane>)
          return point_plane_distance(t.i, t.j, center, target, r1);
        else if constexpr (std::is_same_v<T, bodycad::Line>)
          return point_line_distance(t.i, t.j, center, target, r1);
        else
          return point_point_distance(t.i, t.j, center, target.position, r1);
      },
      t.target);
  }

  const Line& axis = std::get<Cylinder>(t.shape).axis;
  return std::visit(
    [&](const auto& target) -> CadConstraint {
      using T = std::decay_t<decltype(target)>;
      if constexpr (std::is_same_v<T, bodycad::Sphere>)
        return point_line_distance(t.j, t.i, target.center, axis, offset(target.radius));
      else if constexpr (std::is_same_v<T, Cylinder>)
        return line_line_distance(t.i, t.j, axis, target.axis, offset(target.radius));
      else if constexpr (std::is_same_v<T, bodycad::Plane>)
        return line_plane_distance(t.i, t.j, axis, target, r1);
      else if constexpr (std::is_same_v<T, bodycad::Line>)
        return line_line_distance(t.i, t.j, axis, target, r1);
      else
        return point_line_distance(t.j, t.i, target.position, axis, r1);
    },
    t.target);
}

}  // namespace bodycad
