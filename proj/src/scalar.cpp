#include "bodycad/scalar.hpp"

#include "bodycad/errors.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdlib>

namespace bodycad
{

namespace
{

Integer power_of_ten(long exponent)
{
  Integer result = 1;
  for (long i = 0; i < exponent; ++i)
    result *= 10;
  return result;
}

Rational parse_decimal(std::string_view text, std::string_view whole)
{
  if (text.empty())
    throw ParseError("empty number in '" + std::string(whole) + "'");

  std::size_t pos = 0;
  bool negative = false;
  if (text[pos] == '+' || text[pos] == '-')
  {
    negative = text[pos] == '-';
    ++pos;
  }

  std::string digits;
  long fractionDigits = 0;
  bool seenPoint = false;
  for (; pos < text.size(); ++pos)
  {
    const char ch = text[pos];
    if (std::isdigit(static_cast<unsigned char>(ch)))
    {
      digits.push_back(ch);
      if (seenPoint)
        ++fractionDigits;
    }
    else if (ch == '.' && !seenPoint)
    {
      seenPoint = true;
    }
    else
    {
      break;
    }
  }
  if (digits.empty())
    throw ParseError("malformed number '" + std::string(whole) + "'");

  long exponent = 0;
  if (pos < text.size() && (text[pos] == 'e' || text[pos] == 'E'))
  {
    ++pos;
    std::string_view rest = text.substr(pos);
    if (!rest.empty() && rest.front() == '+')
      rest.remove_prefix(1);
    const auto [end, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), exponent);
    if (ec != std::errc{} || end != rest.data() + rest.size() || rest.empty())
      throw ParseError("malformed exponent in '" + std::string(whole) + "'");
    pos = text.size();
  }
  if (pos != text.size())
    throw ParseError("malformed number '" + std::string(whole) + "'");
  if (exponent > 4096 || exponent < -4096)
    throw ParseError("exponent out of range in '" + std::string(whole) + "'");

  // Leading zeros would make the integer constructor read octal.
  const auto significant = digits.find_first_not_of('0');
  Rational value{significant == std::string::npos ? Integer(0) : Integer(digits.substr(significant))};
  const long shift = exponent - fractionDigits;
  if (shift > 0)
    value *= Rational(power_of_ten(shift));
  else if (shift < 0)
    value /= Rational(power_of_ten(-shift));
  return negative ? Rational(-value) : value;
}

std::string_view trim(std::string_view s)
{
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
    s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
    s.remove_suffix(1);
  return s;
}

}  // namespace

Rational parse_rational(std::string_view text)
{
  const std::string_view whole = trim(text);
  const auto slash = whole.find('/');
  if (slash == std::string_view::npos)
    return parse_decimal(whole, whole);

  const Rational num = parse_decimal(trim(whole.substr(0, slash)), whole);
  const Rational den = parse_decimal(trim(whole.substr(slash + 1)), whole);
  if (den == 0)
    throw ParseError("zero denominator in '" + std::string(whole) + "'");
  return num / den;
}

Rational rational_from_double(double value)
{
  if (!std::isfinite(value))
    throw ParseError("non-finite number");
  std::array<char, 64> buffer{};
  const auto [end, ec] = std::to_chars(buffer.data(), buffer.data() + buffer.size(), value);
  if (ec != std::errc{})
    throw ParseError("cannot format number");
  return parse_rational(std::string_view(buffer.data(), end - buffer.data()));
}

std::string to_string(const Rational& value)
{
  return value.str();
}

}  // namespace bodycad
