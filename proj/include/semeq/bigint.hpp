#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>

namespace semeq {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

// base^exp for non-negative exp, by repeated squaring.
BigInt ipow(const BigInt& base, const BigInt& exp);

// Decimal digits of |v|, cheap upper estimate (used for value-size guards).
std::size_t approx_digits(const BigInt& v);

std::string rat_to_string(const BigRat& r);
BigRat rat_from_string(const std::string& s);  // "p/q" or "p"

}  // namespace semeq
