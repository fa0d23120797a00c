#include <cmath>

#include <Eigen/Dense>

#include "doctest.h"
#include "weylp/kernels.hpp"

using namespace weylp;

TEST_CASE("stationary kernels match their closed forms") {
    const auto g = KernelSpec::gauss_limit();
    const auto s = KernelSpec::sech();
    CHECK(g.stationary());
    CHECK(s.stationary());
    for (double t : {0.0, 0.3, 1.0, 2.5, 7.0}) {
        CHECK(corr(g, 1.0, 1.0 + t) == doctest::Approx(std::exp(-t * t / 2.0)).epsilon(1e-14));
        CHECK(corr(s, -2.0, -2.0 + t) ==
              doctest::Approx(1.0 / std::cosh(t / 2.0)).epsilon(1e-14));
    }
    // shift invariance is exact: only x - y enters
    CHECK(corr(g, 1.0, 2.0) == corr(g, 5.0, 6.0));
    CHECK(corr(s, 0.0, 1.5) == corr(s, -4.0, -2.5));
}

TEST_CASE("finite-degree correlation frozen values") {
    CHECK_FALSE(KernelSpec::weyl_finite(4).stationary());
    // 50-digit oracles: S_n(xy)/sqrt(S_n(x^2) S_n(y^2))
    CHECK(corr(KernelSpec::weyl_finite(2), 0.0, 1.0) ==
          doctest::Approx(0.632455532033675866399778708887).epsilon(1e-14));
    CHECK(corr(KernelSpec::weyl_finite(400), 5.0, 5.5) ==
          doctest::Approx(0.882496902584595402864892143229).epsilon(1e-13));
    // mixed signs, odd degree: alternating numerator, exactly 1/8 here
    CHECK(corr(KernelSpec::weyl_finite(3), 1.0, -1.0) == doctest::Approx(0.125).epsilon(1e-14));
}

TEST_CASE("correlation basics: diagonal, symmetry, range") {
    for (std::int64_t n : {2, 7, 64}) {
        const auto k = KernelSpec::weyl_finite(n);
        for (double x : {0.0, 0.4, 1.9, 5.0}) {
            CHECK(corr(k, x, x) == doctest::Approx(1.0).epsilon(1e-14));
            for (double y : {0.1, 1.3, -2.0}) {
                CHECK(corr(k, x, y) == doctest::Approx(corr(k, y, x)).epsilon(1e-13));
                CHECK(std::abs(corr(k, x, y)) <= 1.0 + 1e-12);
            }
        }
    }
}

TEST_CASE("limit_gap frozen value and envelope decay") {
    CHECK(limit_gap(6, 1.0, 1.5) ==
          doctest::Approx(0.00293374799465630008347145).epsilon(1e-12));
    // far inside the bulk the finite kernel is indistinguishable at doubles
    CHECK(limit_gap(400, 5.0, 5.5) <= 1e-13);
    // gap shrinks as n grows at fixed (x, y)
    CHECK(limit_gap(40, 3.0, 3.2) < limit_gap(10, 3.0, 3.2));
    CHECK(limit_gap(40, 3.0, 3.2) == doctest::Approx(1.374319458732412e-13).epsilon(1e-2));
}

TEST_CASE("correlation matrices are symmetric unit-diagonal and near-PSD") {
    struct Box {
        KernelSpec kernel;
        GridSpec grid;
    };
    const Box boxes[] = {
        {KernelSpec::gauss_limit(), GridSpec{0.0, 10.0, 0.05}},
        {KernelSpec::sech(), GridSpec{0.0, 8.0, 0.1}},
        {KernelSpec::weyl_finite(100), GridSpec{0.0, 16.5, 0.1}},
    };
    for (const auto& box : boxes) {
        const Eigen::MatrixXd m = build_corr_matrix(box.kernel, box.grid);
        REQUIRE(m.rows() == box.grid.count());
        CHECK((m - m.transpose()).cwiseAbs().maxCoeff() <= 1e-12);
        CHECK((m.diagonal().array() - 1.0).abs().maxCoeff() <= 1e-12);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
        CHECK(es.eigenvalues().minCoeff() >= -1e-8);
    }
}

TEST_CASE("grid cap is enforced") {
    CHECK_THROWS_AS(build_corr_matrix(KernelSpec::gauss_limit(), GridSpec{0.0, 5000.0, 1.0}),
                    GridTooLargeError);
}
