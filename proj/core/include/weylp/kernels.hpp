#pragma once

#include <cstdint>
#include <variant>

#include <Eigen/Core>

#include "weylp/grid.hpp"
#include "weylp/series.hpp"

namespace weylp {

// Correlation kernels: finite-n Weyl autocorrelation and the stationary limit
// kernels the half-line/whole-line exponents are measured against.
struct KernelSpec {
    enum class Kind { WeylFinite, GaussLimit, Sech };

    Kind kind = Kind::GaussLimit;
    std::int64_t n = 0;  // degree, WeylFinite only

    static KernelSpec weyl_finite(std::int64_t n) { return KernelSpec{Kind::WeylFinite, n}; }
    static KernelSpec gauss_limit() { return KernelSpec{Kind::GaussLimit, 0}; }
    static KernelSpec sech() { return KernelSpec{Kind::Sech, 0}; }

    bool stationary() const { return kind != Kind::WeylFinite; }
    friend bool operator==(const KernelSpec&, const KernelSpec&) = default;
};

// corr(f(x), f(y)) for the given kernel, in [-1, 1] up to 1e-12 slop.
// WeylFinite routes through the truncated-exponential series in log domain;
// mixed-sign arguments use the alternating form and may be negative for odd n.
double corr(const KernelSpec& kernel, double x, double y);

// |A_n(x,y) - e^{-(x-y)^2/2}|: pointwise distance to the limit kernel.
double limit_gap(std::int64_t n, double x, double y);

// Dense correlation matrix of the kernel over the grid; symmetric with unit
// diagonal. Throws GridTooLarge above the point cap (Cholesky cost is cubic).
Eigen::MatrixXd build_corr_matrix(const KernelSpec& kernel, const GridSpec& grid);

inline constexpr std::int64_t kMaxGridPoints = 4096;

}  // namespace weylp
