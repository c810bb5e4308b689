#pragma once

#include <cstdint>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace dynclique {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

/** Exact binomial coefficient; 0 when k < 0 or k > n. */
BigInt binomial(std::int64_t n, std::int64_t k);

/** binomial(x, 2) as a plain integer. */
inline constexpr std::int64_t choose2(std::int64_t x)
{
    return x * (x - 1) / 2;
}

BigRational pow_rat(const BigRational& base, std::uint64_t exponent);

/**
 * Parses "a/b", an integer, or a decimal literal ("0.25") into an exact
 * rational. Throws std::invalid_argument on malformed input.
 */
BigRational parse_rational(std::string_view text);

double to_double(const BigRational& value);

}  // namespace dynclique
