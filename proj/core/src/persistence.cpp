#include "weylp/persistence.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "weylp/errors.hpp"

namespace weylp {

namespace {

constexpr double kZ95 = 1.959963984540054;  // two-sided 95% normal quantile
constexpr double kNegInf = -std::numeric_limits<double>::infinity();

}  // namespace

PersistenceEstimate estimate(const PathBatch& batch, double scale) {
    if (batch.trials < 1) throw ConfigInvalidError("estimate: empty batch");
    PersistenceEstimate e;
    e.trials = batch.trials;
    e.successes = batch.survived;
    e.scale = scale;
    e.seed = batch.seed;
    const double n = static_cast<double>(batch.trials);
    const double p = static_cast<double>(batch.survived) / n;
    e.p_hat = p;
    e.log_p = batch.survived == 0 ? kNegInf : std::log(p);

    // Wilson score interval. At p = 0 (resp. 1) the exact lower (upper)
    // endpoint is 0 (1); pin those rather than leave rounding residue.
    const double z2 = kZ95 * kZ95;
    const double denom = 1.0 + z2 / n;
    const double center = (p + z2 / (2.0 * n)) / denom;
    const double half =
        kZ95 * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
    e.ci_low = batch.survived == 0 ? 0.0 : std::max(0.0, center - half);
    e.ci_high = batch.survived == batch.trials ? 1.0 : std::min(1.0, center + half);
    return e;
}

std::vector<PersistenceEstimate> sweep_T(const KernelSpec& kernel,
                                         const std::vector<double>& T_list, double step,
                                         std::uint64_t trials, const RngStream& seed,
                                         const SampleOptions& options) {
    std::vector<PersistenceEstimate> out;
    out.reserve(T_list.size());
    for (std::size_t k = 0; k < T_list.size(); ++k) {
        const RngStream stream = seed.substream(k * kStreamBlock);
        const PathBatch batch =
            sample_stationary_signs(kernel, T_list[k], step, trials, stream, options);
        out.push_back(estimate(batch, T_list[k]));
    }
    return out;
}

std::vector<PersistenceEstimate> sweep_n(Side side, const std::vector<std::int64_t>& n_list,
                                         double step, std::uint64_t trials,
                                         const RngStream& seed, const SampleOptions& options) {
    std::vector<PersistenceEstimate> out;
    out.reserve(n_list.size());
    for (std::size_t k = 0; k < n_list.size(); ++k) {
        const std::int64_t n = n_list[k];
        if (side == Side::WholeLine && (n % 2) != 0) {
            std::ostringstream msg;
            msg << "sweep_n: whole-line persistence needs even degree, got " << n
                << " (odd-degree polynomials change sign)";
            throw OddDegreeWholeLineError(msg.str());
        }
        const WeylModel model = WeylModel::for_degree(n);
        const double edge = model.envelope();
        const GridSpec grid = n == 0 ? GridSpec(0.0, 0.0, step)
                              : side == Side::HalfLine ? GridSpec(0.0, edge, step)
                                                       : GridSpec(-edge, edge, step);
        const RngStream stream = seed.substream(k * kStreamBlock);
        const PathBatch batch = sample_weyl_signs(model, grid, trials, stream, options);
        out.push_back(estimate(batch, std::sqrt(static_cast<double>(n))));
    }
    return out;
}

ExponentFit fit_line(const std::vector<FitPoint>& points) {
    if (points.size() < 3)
        throw InsufficientDataError("fit_line: need at least 3 points with successes");

    double wsum = 0.0, xbar = 0.0, ybar = 0.0;
    for (const FitPoint& pt : points) {
        if (!(pt.weight > 0.0) || !std::isfinite(pt.weight) || !std::isfinite(pt.log_p))
            throw InsufficientDataError("fit_line: nonpositive or non-finite weight/value");
        wsum += pt.weight;
        xbar += pt.weight * pt.scale;
        ybar += pt.weight * pt.log_p;
    }
    xbar /= wsum;
    ybar /= wsum;

    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (const FitPoint& pt : points) {
        const double dx = pt.scale - xbar;
        const double dy = pt.log_p - ybar;
        sxx += pt.weight * dx * dx;
        sxy += pt.weight * dx * dy;
        syy += pt.weight * dy * dy;
    }
    if (!(sxx > 0.0))
        throw InsufficientDataError("fit_line: all points share one scale, slope undefined");

    ExponentFit fit;
    fit.points = points;
    fit.slope = sxy / sxx;
    fit.intercept = ybar - fit.slope * xbar;
    // Var(log p_i) = 1/w_i by construction, so Var(slope) = 1/sxx.
    fit.slope_stderr = std::sqrt(1.0 / sxx);
    if (syy > 0.0) {
        const double residual = syy - fit.slope * sxy;
        fit.r_squared = std::min(1.0, std::max(0.0, 1.0 - residual / syy));
    } else {
        fit.r_squared = 1.0;  // all values identical and slope 0: perfect fit
    }
    return fit;
}

ExponentFit fit_exponent(const std::vector<PersistenceEstimate>& estimates) {
    std::vector<FitPoint> points;
    points.reserve(estimates.size());
    for (const PersistenceEstimate& e : estimates) {
        if (e.successes == 0) continue;  // log p = -inf carries no usable value
        // Delta method: Var(log p_hat) = (1-p)/(trials*p). A full-success
        // point would get infinite weight; cap it at the half-count level so
        // the fit stays finite.
        const double n = static_cast<double>(e.trials);
        const double p = std::min(e.p_hat, 1.0 - 0.5 / n);
        points.push_back(FitPoint{e.scale, e.log_p, n * p / (1.0 - p)});
    }
    return fit_line(points);
}

ProductDecomposition product_decomposition(std::int64_t n, double step, std::uint64_t trials,
                                           const RngStream& seed, const SampleOptions& options) {
    if ((n % 2) != 0)
        throw ConfigInvalidError("product_decomposition: degree must be even");
    const WeylModel model = WeylModel::for_degree(n);
    const double root = std::sqrt(static_cast<double>(n));
    const double a = model.alpha_n;
    if (!(root - a > 0.0))
        throw ConfigInvalidError("product_decomposition: sqrt(n) - alpha_n must be positive");

    const GridSpec window_a(0.0, root - a, step);
    const GridSpec window_b(root - a, root + a, step);
    const GridSpec window_c(root + a, root + 3.0 * a, step);
    const GridSpec window_full(0.0, root + 3.0 * a, step);

    ProductDecomposition d;
    const GridSpec* grids[4] = {&window_a, &window_b, &window_c, &window_full};
    PersistenceEstimate* outs[4] = {&d.part_a, &d.part_b, &d.part_c, &d.full};
    for (int k = 0; k < 4; ++k) {
        const RngStream stream = seed.substream(static_cast<std::uint64_t>(k) * kStreamBlock);
        const PathBatch batch = sample_weyl_signs(model, *grids[k], trials, stream, options);
        *outs[k] = estimate(batch, root);
    }
    return d;
}

}  // namespace weylp
