#include "vincstat/rational.hpp"

#include "vincstat/error.hpp"

namespace vincstat {

std::string to_string(const Rational& value) {
  return boost::multiprecision::numerator(value).str() + "/" +
         boost::multiprecision::denominator(value).str();
}

Rational parse_rational(std::string_view text) {
  try {
    const auto slash = text.find('/');
    if (slash == std::string_view::npos) {
      return Rational(BigInt(std::string(text)));
    }
    BigInt num(std::string(text.substr(0, slash)));
    BigInt den(std::string(text.substr(slash + 1)));
    if (den == 0) {
      throw Error(ErrorKind::MalformedToken, "zero denominator");
    }
    return Rational(num, den);
  } catch (const Error&) {
    throw;
  } catch (const std::exception&) {
    throw Error(ErrorKind::MalformedToken,
                "not a rational: '" + std::string(text) + "'");
  }
}

double to_double(const Rational& value) {
  return value.convert_to<double>();
}

BigInt factorial(int n) {
  BigInt f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

Rational pow(const Rational& x, int e) {
  Rational result = 1;
  Rational base = x;
  while (e > 0) {
    if (e & 1) result *= base;
    base *= base;
    e >>= 1;
  }
  return result;
}

}  // namespace vincstat
