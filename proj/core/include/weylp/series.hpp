#pragma once

#include <cmath>
#include <cstdint>
#include <limits>

#include "weylp/errors.hpp"

namespace weylp {

// Natural log of a nonnegative quantity; -inf encodes zero. Quantities live in
// log domain end to end, so callers only exponentiate once the combined
// exponent is known to be in range.
struct LogValue {
    double log_magnitude = -std::numeric_limits<double>::infinity();

    bool is_zero() const { return std::isinf(log_magnitude) && log_magnitude < 0; }
};

struct SignedSeriesValue {
    double value = 0.0;
    // True when catastrophic cancellation was detected and the compensated
    // summation was escalated to the higher-precision path.
    bool condition_flag = false;
};

// Log-domain form of the same quantity, for callers that combine it with
// exponents too large for a plain double (sign * exp(log_magnitude)).
struct SignedLogSeriesValue {
    double log_magnitude = -std::numeric_limits<double>::infinity();
    int sign = 0;
    bool condition_flag = false;
};

// Compensated accumulator (Neumaier variant of Kahan summation); the
// compensation term carries the bits a plain double accumulator drops.
class NeumaierSum {
  public:
    void add(double x) {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x)) {
            comp_ += (sum_ - t) + x;
        } else {
            comp_ += (x - t) + sum_;
        }
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

  private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

// log(e^a + e^b), robust to -inf arguments.
double log_add_exp(double a, double b);

// log Sigma_{i=0..n} z^i/i!  (peak-centered ratio accumulation).
LogValue log_partial_exp(std::int64_t n, double z);

// Sigma_{i=0..n} (-z)^i/i!, the pre-multiplied form of the alternating
// truncated series; callers wanting e^z * sum apply the factor in log domain.
SignedSeriesValue alternating_partial_exp(std::int64_t n, double z);

// Same quantity with the magnitude kept in log domain (never under/overflows).
SignedLogSeriesValue alternating_partial_exp_log(std::int64_t n, double z);

// P(Poi(x) > n), evaluated as the regularized lower incomplete gamma P(n+1, x)
// so small tails keep full relative accuracy.
double poisson_tail(double x, std::int64_t n);

// Cramer rate for Poisson(1) sums: I(theta) = theta log theta - (theta - 1).
double poisson_rate(double theta);

// log c_i = -1/2 log i! for the Weyl coefficient scale c_i = 1/sqrt(i!).
double log_weyl_coeff(std::int64_t i);

}  // namespace weylp
