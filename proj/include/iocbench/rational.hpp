#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/rational.hpp>
#include "json.hpp"

#include <cstdint>
#include <string>

namespace iocbench {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::rational<BigInt>;

inline Rational make_rational(std::int64_t num, std::int64_t den = 1) { return Rational(BigInt(num), BigInt(den)); }

/// Fixed-point text with `places` decimals, rounded half away from zero.
std::string to_decimal(const Rational& r, int places);

double to_double(const Rational& r);

/// {"num": n, "den": d} in lowest terms.
nlohmann::json rational_to_json(const Rational& r);
Rational rational_from_json(const nlohmann::json& j);

}  // namespace iocbench
