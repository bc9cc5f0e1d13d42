#include "bodycad/compiler.hpp"

namespace bodycad
{

Vec3 perpendicular_from_line(const Vec3& p, const Line& line)
{
  const Vec3& d = line.direction;
  if (d.isZero())
    throw DegenerateDirection("line with zero direction");
  const Vec3 w = p - line.point;
  const Rational t = w.dot(d) / d.squaredNorm();
  return w - t * d;
}

Vec3 closest_point_on_first(const Line& first, const Line& second)
{
  const Vec3& di = first.direction;
  const Vec3& dj = second.direction;
  const Vec3 w0 = first.point - second.point;
  const Rational a = di.squaredNorm();
  const Rational b = di.dot(dj);
  const Rational c = dj.squaredNorm();
  const Rational d = di.dot(w0);
  const Rational e = dj.dot(w0);
  const Rational denom = a * c - b * b;
  if (denom == 0)
    throw DegenerateConstraint("line-line distance between parallel lines");
  const Rational t = (b * e - c * d) / denom;
  return first.point + t * di;
}

namespace
{

class Emitter
{
public:
  Emitter(const CadConstraint& c, std::size_t index) : c_(c), index_(index) {}

  void angular(const Vec6& block) { push(PrimitiveClass::Angular, block); }
  void blind(const Vec6& block) { push(PrimitiveClass::Blind, block); }
  void angular(const std::array<Vec6, 2>& blocks)
  {
    for (const auto& b : blocks)
      angular(b);
  }
  void blind(const std::array<Vec6, 2>& blocks)
  {
    for (const auto& b : blocks)
      blind(b);
  }

  std::vector<PrimitiveRow> take() { return std::move(rows_); }

private:
  void push(PrimitiveClass cls, const Vec6& block)
  {
    rows_.push_back({c_.i, c_.j, cls, block, index_, static_cast<int>(rows_.size())});
  }

  const CadConstraint& c_;
  std::size_t index_;
  std::vector<PrimitiveRow> rows_;
};

}  // namespace

std::vector<PrimitiveRow> compile(const CadConstraint& c, std::size_t index)
{
  using enum ConstraintKind;
  const KindInfo& info = kind_info(c.kind);
  if (info.hasDistance)
  {
    if (!c.distance)
      throw DegenerateConstraint(std::string(info.name) + " without a distance");
    if (*c.distance == 0)
      throw ZeroDistance(std::string(info.name) +
                         " with distance 0; use the matching coincidence constraint");
  }

  Emitter out(c, index);
  switch (c.kind)
  {
  case PointPointCoincidence:
  {
    const auto rows = cross_matrix_rows(c.pointI);
    for (int k = 0; k < 3; ++k)
    {
      Vec6 block;
      block << Vec3::Unit(k), rows[k];
      out.blind(block);
    }
    break;
  }
  case PointPointDistance:
  {
    const Vec6 bar = join4(affine(c.pointI), affine(c.pointJ));
    if (bar.isZero())
      throw DegenerateConstraint("point-point distance between coincident points");
    out.blind(bar);
    break;
  }
  case PointLineCoincidence:
    out.blind(blind_parallel(c.pointI, c.directionJ));
    break;
  case PointLineDistance:
  {
    const Vec3 dHat = perpendicular_from_line(c.pointI, c.line_j());
    if (dHat.isZero())
      throw DegenerateConstraint("point-line distance with the point on the line");
    out.blind(blind_orthogonal(c.pointI, dHat));
    break;
  }
  case PointPlaneCoincidence:
  case PointPlaneDistance:
    out.blind(blind_orthogonal(c.pointI, c.directionJ));
    break;
  case LineLineParallel:
  case PlanePlaneParallel:
    out.angular(angular_parallel(c.directionI));
    break;
  case LineLinePerpendicular:
  case LineLineFixedAngular:
  case LinePlaneParallel:
  case LinePlaneFixedAngular:
  case PlanePlanePerpendicular:
  case PlanePlaneFixedAngular:
    out.angular(angular_fixed(c.directionI, c.directionJ));
    break;
  case LineLineCoincidence:
    out.angular(angular_parallel(c.directionI));
    out.blind(blind_parallel(c.pointI, c.directionI));
    break;
  case LineLineDistance:
  {
    const Vec3 p = closest_point_on_first(c.line_i(), c.line_j());
    out.blind(blind_orthogonal(p, Vec3(c.directionI.cross(c.directionJ))));
    break;
  }
  case LinePlanePerpendicular:
    out.angular(angular_parallel(c.directionI));
    break;
  case LinePlaneCoincidence:
  case LinePlaneDistance:
    out.angular(angular_fixed(c.directionI, c.directionJ));
    out.blind(blind_orthogonal(c.pointI, c.directionJ));
    break;
  case PlanePlaneCoincidence:
  case PlanePlaneDistance:
    out.angular(angular_parallel(c.directionI));
    out.blind(blind_orthogonal(c.pointI, c.directionI));
    break;
  }
  return out.take();
}

}  // namespace bodycad
