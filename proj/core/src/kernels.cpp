#include "weylp/kernels.hpp"

#include <cmath>
#include <sstream>

#include "weylp/errors.hpp"

namespace weylp {

namespace {

double weyl_corr(std::int64_t n, double x, double y) {
    const double log_den =
        0.5 * (log_partial_exp(n, x * x).log_magnitude + log_partial_exp(n, y * y).log_magnitude);
    const double p = x * y;
    if (p >= 0.0) {
        const double log_num = log_partial_exp(n, p).log_magnitude;
        return std::exp(log_num - log_den);
    }
    try {
        const SignedLogSeriesValue num = alternating_partial_exp_log(n, -p);
        if (num.sign == 0) return 0.0;
        return static_cast<double>(num.sign) * std::exp(num.log_magnitude - log_den);
    } catch (const PrecisionLossError& e) {
        // Translate the enclosure of the numerator through the denominator so
        // the caller still gets usable interval information.
        const double scale = std::exp(-log_den);
        std::ostringstream msg;
        msg << "corr(WeylFinite(" << n << "), " << x << ", " << y << "): " << e.what();
        throw PrecisionLossError(msg.str(), e.fallback_lo() * scale, e.fallback_hi() * scale);
    }
}

}  // namespace

double corr(const KernelSpec& kernel, double x, double y) {
    switch (kernel.kind) {
        case KernelSpec::Kind::GaussLimit: {
            const double d = x - y;
            return std::exp(-0.5 * d * d);
        }
        case KernelSpec::Kind::Sech:
            return 1.0 / std::cosh(0.5 * (x - y));
        case KernelSpec::Kind::WeylFinite:
            return weyl_corr(kernel.n, x, y);
    }
    return 0.0;
}

double limit_gap(std::int64_t n, double x, double y) {
    const double d = x - y;
    return std::abs(corr(KernelSpec::weyl_finite(n), x, y) - std::exp(-0.5 * d * d));
}

Eigen::MatrixXd build_corr_matrix(const KernelSpec& kernel, const GridSpec& grid) {
    const std::int64_t m = grid.count();
    if (m > kMaxGridPoints) {
        std::ostringstream msg;
        msg << "build_corr_matrix: " << m << " grid points exceeds cap " << kMaxGridPoints
            << "; coarsen the grid";
        throw GridTooLargeError(msg.str());
    }
    Eigen::MatrixXd out(m, m);

    if (kernel.stationary()) {
        // Stationary kernels depend on the lag only; one evaluation per lag.
        std::vector<double> by_lag(static_cast<std::size_t>(m));
        for (std::int64_t l = 0; l < m; ++l) {
            by_lag[static_cast<std::size_t>(l)] = corr(kernel, grid.point(l), grid.point(0));
        }
        for (std::int64_t i = 0; i < m; ++i) {
            out(i, i) = 1.0;
            for (std::int64_t j = 0; j < i; ++j) {
                const double v = by_lag[static_cast<std::size_t>(i - j)];
                out(i, j) = v;
                out(j, i) = v;
            }
        }
        return out;
    }

    // Weyl kernel: memoize the per-point log denominators across the grid.
    std::vector<double> log_den(static_cast<std::size_t>(m));
    for (std::int64_t i = 0; i < m; ++i) {
        const double x = grid.point(i);
        log_den[static_cast<std::size_t>(i)] = log_partial_exp(kernel.n, x * x).log_magnitude;
    }
    for (std::int64_t i = 0; i < m; ++i) {
        out(i, i) = 1.0;
        const double xi = grid.point(i);
        for (std::int64_t j = 0; j < i; ++j) {
            const double xj = grid.point(j);
            const double p = xi * xj;
            const double half_dens =
                0.5 * (log_den[static_cast<std::size_t>(i)] + log_den[static_cast<std::size_t>(j)]);
            double v;
            if (p >= 0.0) {
                v = std::exp(log_partial_exp(kernel.n, p).log_magnitude - half_dens);
            } else {
                const SignedLogSeriesValue num = alternating_partial_exp_log(kernel.n, -p);
                v = static_cast<double>(num.sign) * std::exp(num.log_magnitude - half_dens);
            }
            out(i, j) = v;
            out(j, i) = v;
        }
    }
    return out;
}

}  // namespace weylp
