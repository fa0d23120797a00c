#include "weylp/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

#include <Eigen/Cholesky>
#include <Eigen/Dense>

#include "weylp/errors.hpp"
#include "weylp/parallel.hpp"
#include "weylp/series.hpp"

namespace weylp {

namespace {

constexpr double kEnvelopeSlack = 1e-9;

struct ChunkResult {
    std::uint64_t survived = 0;
    std::vector<double> minima;
};

// Shared per-batch driver: evaluate(path_values <- coeffs) is provided by the
// model-specific closure; trials are split into fixed chunks, one RNG
// substream per chunk, merged in chunk order.
template <typename TrialFn>
PathBatch run_batch(const GridSpec& grid, std::uint64_t trials, const RngStream& rng,
                    const SampleOptions& options, std::size_t normals_per_trial,
                    TrialFn&& trial_fn) {
    if (trials < 1) throw ConfigInvalidError("sampler: trials must be >= 1");

    const std::uint64_t chunk_count = (trials + kTrialChunk - 1) / kTrialChunk;
    std::vector<ChunkResult> results(static_cast<std::size_t>(chunk_count));

    run_chunks(chunk_count, options.workers, [&](std::uint64_t c) {
        ChunkResult& out = results[static_cast<std::size_t>(c)];
        const std::uint64_t lo = c * kTrialChunk;
        const std::uint64_t hi = std::min(trials, lo + kTrialChunk);
        GaussianStream normals(rng.substream(c));
        std::vector<double> coeffs(normals_per_trial);
        if (options.collect_minima) out.minima.reserve(static_cast<std::size_t>(hi - lo));
        for (std::uint64_t t = lo; t < hi; ++t) {
            // Fixed RNG consumption per trial: draw everything up front so
            // early abort cannot shift later trials' randomness.
            normals.fill(coeffs.data(), coeffs.size());
            const double min_value = trial_fn(coeffs, options);
            if (min_value > 0.0) ++out.survived;
            if (options.collect_minima) out.minima.push_back(min_value);
        }
    });

    PathBatch batch;
    batch.grid = grid;
    batch.trials = trials;
    batch.seed = rng;
    for (const ChunkResult& r : results) {
        batch.survived += r.survived;
        batch.min_values.insert(batch.min_values.end(), r.minima.begin(), r.minima.end());
    }
    return batch;
}

}  // namespace

WeylModel WeylModel::for_degree(std::int64_t n) {
    if (n < 0) throw ConfigInvalidError("WeylModel: degree must be >= 0");
    WeylModel model;
    model.n = n;
    model.alpha_n = n >= 2 ? std::sqrt(static_cast<double>(n)) / std::log(static_cast<double>(n))
                           : 0.0;
    return model;
}

double WeylModel::envelope() const {
    return std::sqrt(static_cast<double>(n)) + 3.0 * alpha_n;
}

PathBatch sample_weyl_signs(const WeylModel& model, const GridSpec& grid, std::uint64_t trials,
                            const RngStream& rng, const SampleOptions& options) {
    const std::int64_t m = grid.count();
    if (m > kMaxGridPoints) {
        std::ostringstream msg;
        msg << "sample_weyl_signs: grid has " << m << " points, cap is " << kMaxGridPoints;
        throw GridTooLargeError(msg.str());
    }
    const double env = model.envelope() + kEnvelopeSlack;
    if (grid.start < -env || grid.end > env) {
        std::ostringstream msg;
        msg << "sample_weyl_signs: grid [" << grid.start << ", " << grid.end
            << "] exceeds the model envelope +-" << model.envelope();
        throw ConfigInvalidError(msg.str());
    }

    // Standardized weights w_i(x) = sign(x)^i exp(i log|x| - log sqrt(i!)
    // - log sqrt(sum_k x^{2k}/k!)); every |w_i| <= 1 and sum_i w_i^2 = 1, so
    // the path value at each grid point is an exact unit-variance Gaussian.
    const std::size_t terms = static_cast<std::size_t>(model.n) + 1;
    std::vector<double> weights(static_cast<std::size_t>(m) * terms, 0.0);
    for (std::int64_t j = 0; j < m; ++j) {
        const double x = grid.point(j);
        double* row = weights.data() + static_cast<std::size_t>(j) * terms;
        if (x == 0.0) {
            row[0] = 1.0;
            continue;
        }
        const double log_abs_x = std::log(std::abs(x));
        const double half_log_den = 0.5 * log_partial_exp(model.n, x * x).log_magnitude;
        for (std::size_t i = 0; i < terms; ++i) {
            const double log_w =
                static_cast<double>(i) * log_abs_x + log_weyl_coeff(static_cast<std::int64_t>(i)) -
                half_log_den;
            double w = std::exp(log_w);
            if (x < 0.0 && (i & 1U)) w = -w;
            row[i] = w;
        }
    }

    return run_batch(grid, trials, rng, options, terms,
                     [&](const std::vector<double>& coeffs, const SampleOptions& opts) {
                         double min_value = std::numeric_limits<double>::infinity();
                         for (std::int64_t j = 0; j < m; ++j) {
                             const double* row = weights.data() + static_cast<std::size_t>(j) * terms;
                             double v = 0.0;
                             for (std::size_t i = 0; i < terms; ++i) v += row[i] * coeffs[i];
                             if (v < min_value) min_value = v;
                             if (v <= 0.0 && opts.early_abort && !opts.collect_minima) break;
                         }
                         return min_value;
                     });
}

PathBatch sample_stationary_signs(const KernelSpec& kernel, double T, double step,
                                  std::uint64_t trials, const RngStream& rng,
                                  const SampleOptions& options) {
    if (!kernel.stationary())
        throw ConfigInvalidError("sample_stationary_signs: kernel must be stationary");
    if (!(T >= 0.0)) throw ConfigInvalidError("sample_stationary_signs: T must be >= 0");
    const GridSpec grid(0.0, T, step);
    const std::int64_t m = grid.count();

    const Eigen::MatrixXd corr = build_corr_matrix(kernel, grid);

    // Analytic kernels on fine grids are numerically rank-deficient; escalate
    // a diagonal jitter until the factorization succeeds.
    Eigen::MatrixXd lower;
    bool factored = false;
    const double jitters[] = {0.0, 1e-12, 1e-11, 1e-10, 1e-9, 1e-8};
    for (double jitter : jitters) {
        Eigen::MatrixXd shifted = corr;
        if (jitter > 0.0)
            shifted.diagonal().array() += jitter;
        Eigen::LLT<Eigen::MatrixXd> llt(shifted);
        if (llt.info() == Eigen::Success) {
            lower = llt.matrixL();
            factored = true;
            break;
        }
    }
    if (!factored) {
        std::ostringstream msg;
        msg << "sample_stationary_signs: Cholesky failed for " << m
            << " points at step " << step << " even with 1e-8 jitter (grid too fine)";
        throw FactorizationFailedError(msg.str());
    }

    // Packed row-major lower triangle: row j holds the coefficients that turn
    // the first j+1 innovations into the path value at grid point j.
    std::vector<double> packed(static_cast<std::size_t>(m) * (static_cast<std::size_t>(m) + 1) / 2);
    {
        std::size_t k = 0;
        for (std::int64_t j = 0; j < m; ++j)
            for (std::int64_t i = 0; i <= j; ++i) packed[k++] = lower(j, i);
    }

    return run_batch(grid, trials, rng, options, static_cast<std::size_t>(m),
                     [&](const std::vector<double>& innovations, const SampleOptions& opts) {
                         double min_value = std::numeric_limits<double>::infinity();
                         const double* row = packed.data();
                         for (std::int64_t j = 0; j < m; ++j) {
                             double v = 0.0;
                             for (std::int64_t i = 0; i <= j; ++i) v += row[i] * innovations[i];
                             row += j + 1;
                             if (v < min_value) min_value = v;
                             if (v <= 0.0 && opts.early_abort && !opts.collect_minima) break;
                         }
                         return min_value;
                     });
}

}  // namespace weylp
