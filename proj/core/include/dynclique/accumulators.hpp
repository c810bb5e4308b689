#pragma once

#include <cmath>
#include <cstddef>

namespace dynclique {

/** Point estimate with its spread; standard_error = sqrt(variance / count). */
struct MomentEstimate {
    double mean = 0.0;
    double variance = 0.0;
    std::size_t count = 0;
    double standard_error = 0.0;
};

/**
 * Streaming mean/variance accumulator (Welford update) that merges pairwise,
 * so per-worker partials combine into the same totals as a serial pass.
 */
class RunningMoments {
  public:
    void add(double x)
    {
        ++count_;
        const double delta = x - mean_;
        mean_ += delta / static_cast<double>(count_);
        m2_ += delta * (x - mean_);
    }

    void merge(const RunningMoments& other)
    {
        if (other.count_ == 0)
            return;
        if (count_ == 0) {
            *this = other;
            return;
        }
        const double total = static_cast<double>(count_ + other.count_);
        const double delta = other.mean_ - mean_;
        m2_ += other.m2_ +
               delta * delta * static_cast<double>(count_) * static_cast<double>(other.count_) /
                   total;
        mean_ += delta * static_cast<double>(other.count_) / total;
        count_ += other.count_;
    }

    std::size_t count() const { return count_; }
    double mean() const { return mean_; }

    /** Unbiased sample variance; 0 with fewer than two observations. */
    double variance() const
    {
        return count_ > 1 ? m2_ / static_cast<double>(count_ - 1) : 0.0;
    }

    MomentEstimate estimate() const
    {
        MomentEstimate est;
        est.mean = mean_;
        est.variance = variance();
        est.count = count_;
        est.standard_error =
            count_ > 0 ? std::sqrt(est.variance / static_cast<double>(count_)) : 0.0;
        return est;
    }

  private:
    std::size_t count_ = 0;
    double mean_ = 0.0;
    double m2_ = 0.0;
};

}  // namespace dynclique
