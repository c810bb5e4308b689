#pragma once

#include <cstdint>
#include <vector>

namespace dynclique {

/**
 * Edge probability, either given explicitly or as the exponent a in p = n^a.
 * Exponent form requires a < 0 so that the resolved p lands in (0, 1).
 */
struct ProbabilitySpec {
    enum class Kind { Explicit, Exponent };

    Kind kind = Kind::Explicit;
    double value = 0.5;

    static ProbabilitySpec explicit_p(double p) { return {Kind::Explicit, p}; }
    static ProbabilitySpec exponent(double alpha) { return {Kind::Exponent, alpha}; }

    /** Resolved edge probability; throws std::domain_error outside (0, 1). */
    double resolve(int n) const;
};

/** Full experiment configuration for the dynamic graph process. */
struct SimParams {
    int n = 0;
    ProbabilitySpec p_spec;
    double lambda = 1.0;
    std::vector<double> times;  // strictly increasing, all >= 0
    std::size_t replications = 1;
    std::uint64_t seed = 0;

    double p() const { return p_spec.resolve(n); }

    /** Throws std::invalid_argument on any violated invariant. */
    void validate() const;
};

}  // namespace dynclique
