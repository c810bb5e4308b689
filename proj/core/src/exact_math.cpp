#include "dynclique/exact_math.hpp"

#include <stdexcept>
#include <string>

namespace dynclique {

BigInt binomial(std::int64_t n, std::int64_t k)
{
    if (k < 0 || k > n)
        return 0;
    k = std::min(k, n - k);
    BigInt result = 1;
    for (std::int64_t i = 1; i <= k; ++i) {
        result *= n - k + i;
        result /= i;  // exact: result is binomial(n-k+i, i) after each step
    }
    return result;
}

BigRational pow_rat(const BigRational& base, std::uint64_t exponent)
{
    BigRational result = 1;
    BigRational acc = base;
    while (exponent > 0) {
        if (exponent & 1)
            result *= acc;
        acc *= acc;
        exponent >>= 1;
    }
    return result;
}

BigRational parse_rational(std::string_view text)
{
    const std::string s(text);
    if (s.empty())
        throw std::invalid_argument("empty rational literal");
    try {
        if (auto slash = s.find('/'); slash != std::string::npos) {
            const BigInt num(s.substr(0, slash));
            const BigInt den(s.substr(slash + 1));
            if (den == 0)
                throw std::invalid_argument("zero denominator");
            return BigRational(num, den);
        }
        if (auto dot = s.find('.'); dot != std::string::npos) {
            const std::string integral = s.substr(0, dot);
            const std::string fraction = s.substr(dot + 1);
            if (fraction.find_first_not_of("0123456789") != std::string::npos)
                throw std::invalid_argument("malformed decimal");
            BigInt scale = 1;
            for (std::size_t i = 0; i < fraction.size(); ++i)
                scale *= 10;
            const bool negative = !integral.empty() && integral[0] == '-';
            const BigInt whole(integral.empty() || integral == "-" ? std::string("0") : integral);
            const BigInt frac(fraction.empty() ? std::string("0") : fraction);
            BigInt num = whole * scale + (negative ? -frac : frac);
            return BigRational(num, scale);
        }
        return BigRational(BigInt(s));
    } catch (const std::runtime_error&) {
        throw std::invalid_argument("malformed rational literal: " + s);
    }
}

double to_double(const BigRational& value)
{
    return value.convert_to<double>();
}

}  // namespace dynclique
