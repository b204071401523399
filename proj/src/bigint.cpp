#include "semeq/bigint.hpp"

#include "semeq/errors.hpp"

namespace semeq {

BigInt ipow(const BigInt& base, const BigInt& exp) {
  if (exp < 0) throw Error("ipow: negative exponent");
  BigInt result = 1;
  BigInt b = base;
  BigInt e = exp;
  while (e > 0) {
    if (bit_test(e, 0)) result *= b;
    e >>= 1;
    if (e > 0) b *= b;
  }
  return result;
}

std::size_t approx_digits(const BigInt& v) {
  // 1 bit ~ 0.302 decimal digits; overestimate slightly
  std::size_t bits = msb(v == 0 ? BigInt(1) : abs(v)) + 1;
  return bits * 302 / 1000 + 1;
}

std::string rat_to_string(const BigRat& r) {
  if (denominator(r) == 1) return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}

BigRat rat_from_string(const std::string& s) {
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return BigRat(BigInt(s));
    BigInt num(s.substr(0, slash));
    BigInt den(s.substr(slash + 1));
    if (den == 0) throw ParseError("rational with zero denominator: " + s);
    return BigRat(num, den);
  } catch (const std::runtime_error& e) {
    throw ParseError("bad rational literal '" + s + "'");
  }
}

}  // namespace semeq
