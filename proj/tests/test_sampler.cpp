#include <cmath>
#include <random>

#include "doctest.h"
#include "weylp/sampler.hpp"

using namespace weylp;

namespace {
constexpr std::uint64_t kSeed = 20250601;

double mean_of(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

double var_of(const std::vector<double>& v) {
    const double m = mean_of(v);
    double s = 0.0;
    for (double x : v) s += (x - m) * (x - m);
    return s / static_cast<double>(v.size() - 1);
}
}  // namespace

TEST_CASE("WeylModel window width and envelope") {
    const auto m = WeylModel::for_degree(2);
    CHECK(m.alpha_n == doctest::Approx(std::sqrt(2.0) / std::log(2.0)).epsilon(1e-12));
    CHECK(m.envelope() == doctest::Approx(std::sqrt(2.0) + 3.0 * m.alpha_n).epsilon(1e-12));
    CHECK(WeylModel::for_degree(0).alpha_n == 0.0);
    CHECK(WeylModel::for_degree(1).alpha_n == 0.0);
    CHECK_THROWS_AS(WeylModel::for_degree(-3), ConfigInvalidError);
}

TEST_CASE("sampler rejects oversized and out-of-envelope grids") {
    const auto m = WeylModel::for_degree(16);
    CHECK_THROWS_AS(
        sample_weyl_signs(m, GridSpec{0.0, 500.0, 0.1}, 10, RngStream{kSeed, 0}),
        GridTooLargeError);
    CHECK_THROWS_AS(
        sample_weyl_signs(m, GridSpec{0.0, m.envelope() + 1.0, 1.0}, 10, RngStream{kSeed, 0}),
        ConfigInvalidError);
}

TEST_CASE("results are identical across worker counts and repeat calls") {
    const auto m = WeylModel::for_degree(24);
    const GridSpec grid{0.0, 4.5, 0.09};
    SampleOptions opts;
    opts.collect_minima = true;
    PathBatch ref;
    for (unsigned workers : {1u, 2u, 4u}) {
        opts.workers = workers;
        const PathBatch b = sample_weyl_signs(m, grid, 50000, RngStream{kSeed, 7}, opts);
        if (workers == 1u) {
            ref = b;
            continue;
        }
        CHECK(b.survived == ref.survived);
        REQUIRE(b.min_values.size() == ref.min_values.size());
        CHECK(b.min_values == ref.min_values);
    }
    // stationary path, same contract
    PathBatch s1 = sample_stationary_signs(KernelSpec::gauss_limit(), 4.0, 0.1, 40000,
                                           RngStream{kSeed, 3}, opts);
    opts.workers = 4;
    PathBatch s4 = sample_stationary_signs(KernelSpec::gauss_limit(), 4.0, 0.1, 40000,
                                           RngStream{kSeed, 3}, opts);
    CHECK(s1.survived == s4.survived);
    CHECK(s1.min_values == s4.min_values);
}

TEST_CASE("distinct streams give distinct samples") {
    const auto m = WeylModel::for_degree(8);
    const GridSpec grid{0.0, 2.0, 0.25};
    const auto a = sample_weyl_signs(m, grid, 20000, RngStream{kSeed, 0});
    const auto b = sample_weyl_signs(m, grid, 20000, RngStream{kSeed, kStreamBlock});
    CHECK(a.survived != b.survived);  // equality has ~1e-2 probability mass at most
}

TEST_CASE("standardized path values are N(0,1) at a fixed point") {
    SampleOptions opts;
    opts.collect_minima = true;
    // single-point grid: the collected minima are the path values themselves
    const auto m = WeylModel::for_degree(30);
    const PathBatch w =
        sample_weyl_signs(m, GridSpec{2.7, 2.7, 1.0}, 100000, RngStream{kSeed, 11}, opts);
    REQUIRE(w.min_values.size() == 100000);
    CHECK(std::abs(mean_of(w.min_values)) <= 0.01);
    CHECK(var_of(w.min_values) == doctest::Approx(1.0).epsilon(0.01));

    const PathBatch s = sample_stationary_signs(KernelSpec::sech(), 0.0, 0.5, 100000,
                                                RngStream{kSeed, 12}, opts);
    CHECK(std::abs(mean_of(s.min_values)) <= 0.01);
    CHECK(var_of(s.min_values) == doctest::Approx(1.0).epsilon(0.01));
}

TEST_CASE("early abort does not change survival counts") {
    const auto m = WeylModel::for_degree(20);
    const GridSpec grid{0.0, m.envelope(), 0.1};
    SampleOptions fast, full;
    fast.early_abort = true;
    full.early_abort = false;
    const auto a = sample_weyl_signs(m, grid, 20000, RngStream{kSeed, 5}, fast);
    const auto b = sample_weyl_signs(m, grid, 20000, RngStream{kSeed, 5}, full);
    CHECK(a.survived == b.survived);

    const auto c = sample_stationary_signs(KernelSpec::gauss_limit(), 6.0, 0.05, 20000,
                                           RngStream{kSeed, 6}, fast);
    const auto d = sample_stationary_signs(KernelSpec::gauss_limit(), 6.0, 0.05, 20000,
                                           RngStream{kSeed, 6}, full);
    CHECK(c.survived == d.survived);
}

TEST_CASE("refining the grid can only remove survivors") {
    // the step-0.1 grid is pointwise contained in the step-0.05 grid, and the
    // per-trial coefficient draws depend only on the trial index
    const auto m = WeylModel::for_degree(30);
    const auto coarse = sample_weyl_signs(m, GridSpec{0.0, 5.0, 0.1}, 30000, RngStream{kSeed, 9});
    const auto fine = sample_weyl_signs(m, GridSpec{0.0, 5.0, 0.05}, 30000, RngStream{kSeed, 9});
    CHECK(fine.survived <= coarse.survived);
}

TEST_CASE("two-point survival matches the bivariate orthant probability") {
    // P(Z1>0, Z2>0) = 1/4 + asin(rho)/(2 pi) for standardized correlated pairs
    const double two_pi = 2.0 * 3.14159265358979323846;
    {
        const auto b = sample_weyl_signs(WeylModel::for_degree(400), GridSpec{5.0, 5.5, 0.5},
                                         200000, RngStream{kSeed, 21});
        const double rho = 0.882496902584595402864892143229;  // high-precision oracle
        const double expected = 0.25 + std::asin(rho) / two_pi;
        const double p = static_cast<double>(b.survived) / 200000.0;
        CHECK(p == doctest::Approx(expected).epsilon(0.01));
        CHECK(std::abs(p - expected) <= 3.0 * std::sqrt(expected * (1 - expected) / 200000.0));
    }
    {
        const auto b = sample_stationary_signs(KernelSpec::gauss_limit(), 1.0, 1.0, 200000,
                                               RngStream{kSeed, 22});
        const double expected = 0.25 + std::asin(std::exp(-0.5)) / two_pi;
        const double p = static_cast<double>(b.survived) / 200000.0;
        CHECK(std::abs(p - expected) <= 3.0 * std::sqrt(expected * (1 - expected) / 200000.0));
    }
}

TEST_CASE("single-point survival is a fair coin") {
    const auto b =
        sample_weyl_signs(WeylModel::for_degree(0), GridSpec{0.0, 0.0, 1.0}, 1000000,
                          RngStream{kSeed, 0});
    CHECK(static_cast<double>(b.survived) / 1000000.0 == doctest::Approx(0.5).epsilon(0.004));
}

TEST_CASE("degree-2 whole-line survival matches the quadratic sign criterion") {
    // independent oracle: f(x) = a0 + a1 x + a2 x^2/sqrt(2) > 0 for all real x
    // iff a2 > 0, a0 > 0 and a1^2 < 2 sqrt(2) a0 a2; plain std RNG, 400k draws
    std::mt19937_64 eng(12345);
    std::normal_distribution<double> normal(0.0, 1.0);
    const std::uint64_t oracle_trials = 400000;
    std::uint64_t oracle_hits = 0;
    for (std::uint64_t t = 0; t < oracle_trials; ++t) {
        const double a0 = normal(eng), a1 = normal(eng), a2 = normal(eng);
        if (a2 > 0.0 && a0 > 0.0 && a1 * a1 < 2.0 * std::sqrt(2.0) * a0 * a2) ++oracle_hits;
    }
    const double p_line = static_cast<double>(oracle_hits) / static_cast<double>(oracle_trials);

    const auto m = WeylModel::for_degree(2);
    const auto b = sample_weyl_signs(m, GridSpec{-m.envelope(), m.envelope(), 0.02}, 200000,
                                     RngStream{kSeed, 31});
    const double p_grid = static_cast<double>(b.survived) / 200000.0;
    // grid positivity is necessary for line positivity, so p_grid >= p_line,
    // and the dense grid over the envelope leaves only a small excess
    CHECK(p_grid >= p_line - 0.005);
    CHECK(p_grid <= p_line + 0.01);
}
