#pragma once

// Translation of cad constraints into primitive rigidity-matrix rows.
//
// A row is stored as its body-i coefficient block against s_i* = (v, -omega); the body-j
// block is always the negation. The four building blocks return such i-blocks.

#include "bodycad/geometry.hpp"
#include "bodycad/model.hpp"

#include <array>
#include <vector>

namespace bodycad
{

/// -omega block dJ x dI: keeps the angle between dI and dJ fixed.
template <typename Scalar>
Vector6<Scalar> angular_fixed(const Vector3<Scalar>& dI, const Vector3<Scalar>& dJ)
{
  const Vector3<Scalar> axis = dJ.cross(dI);
  if (is_zero_vector(axis))
    throw DegenerateConstraint("fixed angle between parallel directions");
  Vector6<Scalar> out;
  out << Vector3<Scalar>::Zero(), axis;
  return out;
}

/// Two rows forcing the relative angular velocity to lie along d.
template <typename Scalar>
std::array<Vector6<Scalar>, 2> angular_parallel(const Vector3<Scalar>& d)
{
  const auto [u1, u2] = orthogonal_pair(d);
  std::array<Vector6<Scalar>, 2> out;
  out[0] << Vector3<Scalar>::Zero(), u1;
  out[1] << Vector3<Scalar>::Zero(), u2;
  return out;
}

/// (p:1) v (c:0): the relative velocity of p stays orthogonal to c.
template <typename Scalar>
Vector6<Scalar> blind_orthogonal(const Vector3<Scalar>& p, const Vector3<Scalar>& c)
{
  if (is_zero_vector(c))
    throw DegenerateDirection("blind_orthogonal: zero direction");
  return join4(affine(p), direction(c));
}

/// Two rows forcing the relative velocity of p to lie along c.
template <typename Scalar>
std::array<Vector6<Scalar>, 2> blind_parallel(const Vector3<Scalar>& p, const Vector3<Scalar>& c)
{
  const auto [u1, u2] = orthogonal_pair(c);
  return {join4(affine(p), direction(u1)), join4(affine(p), direction(u2))};
}

struct PrimitiveRow
{
  BodyId bodyI = 0;
  BodyId bodyJ = 0;
  PrimitiveClass cls{};
  Vec6 coeffI = Vec6::Zero();  ///< ordered (v-block, -omega-block)
  std::size_t constraint = 0;  ///< index of the source constraint
  int ordinal = 0;             ///< position within the source's rows

  Vec6 coeffJ() const { return -coeffI; }
};

/// Rows for one constraint, angular rows first. `index` is recorded as the source.
std::vector<PrimitiveRow> compile(const CadConstraint& c, std::size_t index = 0);

/// Foot-of-perpendicular helpers used by the point-line and line-line distance rows.
Vec3 perpendicular_from_line(const Vec3& p, const Line& line);
Vec3 closest_point_on_first(const Line& a, const Line& b);

}  // namespace bodycad
