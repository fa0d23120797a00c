#pragma once

#include <cstdint>
#include <vector>

#include "weylp/kernels.hpp"
#include "weylp/rng.hpp"
#include "weylp/sampler.hpp"

namespace weylp {

// Binomial estimate of one persistence probability, tagged with the scale
// (T or sqrt(n)) it contributes to an exponent fit.
struct PersistenceEstimate {
    std::uint64_t trials = 0;
    std::uint64_t successes = 0;
    double p_hat = 0.0;
    double ci_low = 0.0;   // 95% Wilson score interval
    double ci_high = 0.0;
    double log_p = 0.0;    // -inf when successes == 0; such points never enter fits
    double scale = 0.0;
    RngStream seed{0, 0};
};

struct FitPoint {
    double scale = 0.0;
    double log_p = 0.0;
    double weight = 0.0;  // inverse variance of log p_hat
};

struct ExponentFit {
    double slope = 0.0;
    double intercept = 0.0;
    double slope_stderr = 0.0;
    double r_squared = 0.0;
    std::vector<FitPoint> points;
};

enum class Side { HalfLine, WholeLine };

// A_n / B_n / C_n factor estimates over the three adjacent windows
// [0, sqrt(n)-alpha], [sqrt(n)-alpha, sqrt(n)+alpha], [sqrt(n)+alpha,
// sqrt(n)+3 alpha], plus the estimate over their union for the product
// consistency check (the full-interval probability dominates the product).
struct ProductDecomposition {
    PersistenceEstimate part_a;
    PersistenceEstimate part_b;
    PersistenceEstimate part_c;
    PersistenceEstimate full;
};

PersistenceEstimate estimate(const PathBatch& batch, double scale);

// One estimate per T on the stationary kernel's grid {0..T}; independent
// stream block per entry.
std::vector<PersistenceEstimate> sweep_T(const KernelSpec& kernel,
                                         const std::vector<double>& T_list, double step,
                                         std::uint64_t trials, const RngStream& seed,
                                         const SampleOptions& options = {});

// One estimate per degree; scale = sqrt(n). HalfLine sweeps [0, sqrt(n)+3a],
// WholeLine sweeps the symmetric interval and requires n even (an odd-degree
// polynomial changes sign somewhere on the line). n = 0 degenerates to the
// single point {0}.
std::vector<PersistenceEstimate> sweep_n(Side side, const std::vector<std::int64_t>& n_list,
                                         double step, std::uint64_t trials,
                                         const RngStream& seed,
                                         const SampleOptions& options = {});

// Weighted least squares of log p against scale over points with at least one
// success; weights are the inverse delta-method variance trials*p/(1-p).
// Throws InsufficientData below 3 usable points or for a degenerate design.
ExponentFit fit_exponent(const std::vector<PersistenceEstimate>& estimates);

// The regression core on explicit (scale, log_p, weight) triples.
ExponentFit fit_line(const std::vector<FitPoint>& points);

ProductDecomposition product_decomposition(std::int64_t n, double step, std::uint64_t trials,
                                           const RngStream& seed,
                                           const SampleOptions& options = {});

}  // namespace weylp
