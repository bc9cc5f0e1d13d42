#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/eigen.hpp>
#include <Eigen/Dense>

#include <cmath>
#include <string>
#include <string_view>
#include <type_traits>

namespace bodycad
{

/// Exact rational scalar used for every verdict-bearing computation.
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;
using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                              boost::multiprecision::et_off>;

template <typename Scalar>
using Vector3 = Eigen::Matrix<Scalar, 3, 1>;
template <typename Scalar>
using Vector4 = Eigen::Matrix<Scalar, 4, 1>;
template <typename Scalar>
using Vector6 = Eigen::Matrix<Scalar, 6, 1>;
template <typename Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using Vec3 = Vector3<Rational>;
using Vec4 = Vector4<Rational>;
using Vec6 = Vector6<Rational>;
using MatrixQ = MatrixX<Rational>;
using VectorQ = VectorX<Rational>;

template <typename Scalar>
inline constexpr bool is_exact_v = !std::is_floating_point_v<Scalar>;

/// Zero test: exact for rationals, absolute tolerance for floating point.
template <typename Scalar>
bool is_zero(const Scalar& value, double tolerance = 0.0)
{
  if constexpr (is_exact_v<Scalar>)
    return value == 0;
  else
    return std::abs(value) <= tolerance;
}

template <typename Derived>
bool is_zero_vector(const Eigen::MatrixBase<Derived>& v, double tolerance = 0.0)
{
  for (Eigen::Index i = 0; i < v.size(); ++i)
    if (!is_zero(v(i), tolerance))
      return false;
  return true;
}

/// Parses "7", "-3/4", "0.125", "1e-3", "-2.5E2" exactly (base-10 expansion, no binary
/// floating point). Throws ParseError on malformed input or a zero denominator.
Rational parse_rational(std::string_view text);

/// Exact rational from a double: uses the shortest round-trip decimal spelling, so a
/// JSON literal such as 0.1 becomes exactly 1/10.
Rational rational_from_double(double value);

/// "n" for integers, "n/d" otherwise.
std::string to_string(const Rational& value);

inline double to_double(const Rational& value)
{
  return value.convert_to<double>();
}

}  // namespace bodycad
