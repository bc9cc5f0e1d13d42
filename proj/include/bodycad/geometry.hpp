#pragma once

// Small-vector Grassmann-Cayley algebra in dimension 3: the join of two 4-vectors as a
// 2-tensor, the star operator, and screw actions on points. Every rigidity-matrix row is
// built from these.
//
// 2-tensor coordinates are the 2x2 minors of the matrix with rows p, q, ordered
//   (|M14|, |M24|, |M34|, |M23|, -|M13|, |M12|),  |Mab| = p_a q_b - p_b q_a.

#include "bodycad/errors.hpp"
#include "bodycad/scalar.hpp"

#include <array>
#include <utility>

namespace bodycad
{

/// Instantaneous screw. The 6-vector form is (-omega, v); a point p moves with velocity
/// omega x p + v.
template <typename Scalar>
struct Screw
{
  Vector3<Scalar> omega = Vector3<Scalar>::Zero();
  Vector3<Scalar> v = Vector3<Scalar>::Zero();

  Vector6<Scalar> coordinates() const
  {
    Vector6<Scalar> s;
    s << -omega, v;
    return s;
  }

  static Screw from_coordinates(const Vector6<Scalar>& s)
  {
    return Screw{Vector3<Scalar>(-s.template head<3>()), Vector3<Scalar>(s.template tail<3>())};
  }

  friend bool operator==(const Screw& a, const Screw& b)
  {
    return a.omega == b.omega && a.v == b.v;
  }
};

/// (p : w), the 4-vector obtained by appending w.
template <typename Scalar>
Vector4<Scalar> extend(const Vector3<Scalar>& p, const Scalar& w)
{
  Vector4<Scalar> out;
  out << p, w;
  return out;
}

/// (p : 1)
template <typename Scalar>
Vector4<Scalar> affine(const Vector3<Scalar>& p)
{
  return extend(p, Scalar(1));
}

/// (c : 0)
template <typename Scalar>
Vector4<Scalar> direction(const Vector3<Scalar>& c)
{
  return extend(c, Scalar(0));
}

template <typename Scalar>
Vector6<Scalar> join4(const Vector4<Scalar>& p, const Vector4<Scalar>& q)
{
  const auto minor = [&](int a, int b) -> Scalar { return p(a) * q(b) - p(b) * q(a); };
  Vector6<Scalar> out;
  out << minor(0, 3), minor(1, 3), minor(2, 3), minor(1, 2), Scalar(-minor(0, 2)), minor(0, 1);
  return out;
}

/// Swaps the first and last three coordinates. Involution.
template <typename Scalar>
Vector6<Scalar> star(const Vector6<Scalar>& s)
{
  Vector6<Scalar> out;
  out << s.template tail<3>(), s.template head<3>();
  return out;
}

template <typename Scalar>
Vector3<Scalar> screw_point_velocity(const Screw<Scalar>& s, const Vector3<Scalar>& p)
{
  return s.omega.cross(p) + s.v;
}

/// s v (p:1) = (p' : -<p, p'>)
template <typename Scalar>
Vector4<Scalar> screw_join_point(const Screw<Scalar>& s, const Vector3<Scalar>& p)
{
  const Vector3<Scalar> velocity = screw_point_velocity(s, p);
  return extend(velocity, Scalar(-p.dot(velocity)));
}

/// s v (p:1) v q = <p', q_xyz> - q_w <p, p'>.
///
/// Against the join convention above this equals -<s*, (p:1) v q>; only the vanishing of
/// the pairing is used when building rows, so the sign is immaterial there.
template <typename Scalar>
Scalar triple_join(const Screw<Scalar>& s, const Vector3<Scalar>& p, const Vector4<Scalar>& q)
{
  const Vector3<Scalar> velocity = screw_point_velocity(s, p);
  return velocity.dot(q.template head<3>()) - q(3) * p.dot(velocity);
}

/// Rows of the cross-product matrix [c]x, i.e. row k dotted with x gives (c x x)_k.
template <typename Scalar>
std::array<Vector3<Scalar>, 3> cross_matrix_rows(const Vector3<Scalar>& c)
{
  const Scalar zero(0);
  return {Vector3<Scalar>(zero, Scalar(-c.z()), c.y()),
          Vector3<Scalar>(c.z(), zero, Scalar(-c.x())),
          Vector3<Scalar>(Scalar(-c.y()), c.x(), zero)};
}

/// Two independent vectors orthogonal to c: the rows of [c]x minus the one with the
/// smallest squared norm (ties to the lowest index), emitted cyclically after the
/// dropped row. For c = (a,b,c) with b dominant this is (-b,a,0), (0,-c,b).
template <typename Scalar>
std::pair<Vector3<Scalar>, Vector3<Scalar>> orthogonal_pair(const Vector3<Scalar>& c)
{
  if (is_zero_vector(c))
    throw DegenerateDirection("orthogonal_pair: zero direction");

  const auto rows = cross_matrix_rows(c);
  int dropped = 0;
  Scalar smallest = rows[0].squaredNorm();
  for (int k = 1; k < 3; ++k)
  {
    const Scalar norm = rows[k].squaredNorm();
    if (norm < smallest)
    {
      smallest = norm;
      dropped = k;
    }
  }
  return {rows[(dropped + 1) % 3], rows[(dropped + 2) % 3]};
}

}  // namespace bodycad
