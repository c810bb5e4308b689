#include "dynclique/params.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace dynclique {

double ProbabilitySpec::resolve(int n) const
{
    double p = value;
    if (kind == Kind::Exponent) {
        if (n < 1)
            throw std::domain_error("probability exponent requires n >= 1");
        p = std::pow(static_cast<double>(n), value);
    }
    if (!(p > 0.0) || !(p < 1.0))
        throw std::domain_error("edge probability must lie in the open interval (0, 1); got " +
                                std::to_string(p));
    return p;
}

void SimParams::validate() const
{
    if (n < 1)
        throw std::invalid_argument("vertex count must be positive");
    p_spec.resolve(n);  // throws if outside (0, 1)
    if (!(lambda > 0.0))
        throw std::invalid_argument("rate lambda must be positive");
    if (times.empty())
        throw std::invalid_argument("sample-time grid must be non-empty");
    if (times.front() < 0.0)
        throw std::invalid_argument("sample times must be >= 0");
    for (std::size_t i = 1; i < times.size(); ++i) {
        if (!(times[i] > times[i - 1]))
            throw std::invalid_argument("sample times must be strictly increasing");
    }
    if (replications < 1)
        throw std::invalid_argument("replication count must be positive");
}

}  // namespace dynclique
