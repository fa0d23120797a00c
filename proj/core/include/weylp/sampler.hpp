#pragma once

#include <cstdint>
#include <vector>

#include "weylp/grid.hpp"
#include "weylp/kernels.hpp"
#include "weylp/rng.hpp"

namespace weylp {

// Random polynomial ensemble of degree n with i.i.d. standard normal
// coefficients scaled by 1/sqrt(i!). alpha_n = sqrt(n)/log(n) is the
// transition-window width used throughout; it degenerates to 0 for n <= 1.
struct WeylModel {
    std::int64_t n = 0;
    double alpha_n = 0.0;

    static WeylModel for_degree(std::int64_t n);

    // Largest |x| the sampler accepts: sqrt(n) + 3*alpha_n. Beyond this the
    // top coefficient dominates the path sign and sampling adds nothing.
    double envelope() const;
};

struct SampleOptions {
    bool early_abort = true;      // stop scanning a path at its first value <= 0
    bool collect_minima = false;  // record each path's minimum (forces full scans)
    unsigned workers = 1;         // threads; results are identical for any value
};

// Outcome of sign-sampling a batch of paths on a grid.
struct PathBatch {
    GridSpec grid{0.0, 0.0, 1.0};
    std::uint64_t trials = 0;
    std::uint64_t survived = 0;  // paths strictly positive at every grid point
    RngStream seed{0, 0};
    // Per-path minimum over the grid, in trial order; filled only when
    // SampleOptions::collect_minima is set.
    std::vector<double> min_values;
};

// Trials are processed in fixed-size chunks, one RNG substream per chunk, so
// results are bit-identical for any worker count. Callers that need several
// independent batches from one master seed should space their stream indices
// by kStreamBlock.
inline constexpr std::uint64_t kTrialChunk = 16384;
inline constexpr std::uint64_t kStreamBlock = std::uint64_t{1} << 32;

// Draws `trials` coefficient vectors and counts paths of the standardized
// polynomial that stay strictly positive at every grid point. The path value
// at x is sum_i a_i * w_i(x) with weights w_i(x) = x^i / sqrt(i!) normalized
// so that sum_i w_i(x)^2 = 1; every trial consumes exactly n+1 normals
// regardless of early abort.
PathBatch sample_weyl_signs(const WeylModel& model, const GridSpec& grid,
                            std::uint64_t trials, const RngStream& rng,
                            const SampleOptions& options = {});

// Same contract for a stationary kernel on the grid {0, step, ..., ~T}. Paths
// are generated from the Cholesky factor of the grid correlation matrix
// (diagonal jitter escalating 1e-12 -> 1e-8 if needed); each trial consumes
// exactly one normal per grid point.
PathBatch sample_stationary_signs(const KernelSpec& kernel, double T, double step,
                                  std::uint64_t trials, const RngStream& rng,
                                  const SampleOptions& options = {});

}  // namespace weylp
