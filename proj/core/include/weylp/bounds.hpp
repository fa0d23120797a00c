#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "weylp/grid.hpp"
#include "weylp/rng.hpp"

namespace weylp {

// Margin tolerances: exact identities get the tight one; claims whose sup/inf
// is approximated by sweeping a grid get the loose one.
inline constexpr double kAnalyticTolerance = 1e-9;
inline constexpr double kSampledTolerance = 1e-6;

// One certified inequality sweep. worst_margin is min over the swept box of
// (bound - quantity), so nonnegative means the claim held everywhere; reports
// whose contract is a threshold search ("holds for n large enough") record
// the empirical threshold instead of failing below it.
struct BoundReport {
    std::string name;
    std::string swept_box;
    double worst_margin = 0.0;
    std::map<std::string, double> worst_point;
    bool pass = false;
    double tolerance = kAnalyticTolerance;
    std::map<std::string, double> thresholds;
};

// Nonnegativity of the even-degree truncated exponential at negative
// arguments: sum_{i<=n} (-z)^i / i! >= 0 for all z >= 0, n even.
BoundReport check_even_nonneg(const std::vector<std::int64_t>& n_list, const GridSpec& z_grid);

// Two-sided bound on S_n(x) = e^{-x} sum_{i<=n} x^i/i! over [0, n - sqrt(n)
// alpha_n]: 1 - e^{-alpha_n^2/4} <= S_n(x) <= 1. The lower side only kicks in
// for n large enough; the smallest passing n is reported.
BoundReport check_poisson_sandwich(const std::vector<std::int64_t>& n_list);

// Sandwich for l_n(x) = e^x sum_{i<=n} (-x)^i/i! on the same x-range:
// 1 - e^{2x} x^{n+1}/(n+1)! <= l_n(x) <= 1 + e^{2x} e^{-alpha_n^2/4}/sqrt(2 pi n).
BoundReport check_alternating_sandwich(const std::vector<std::int64_t>& n_list,
                                       const GridSpec& x_grid);

// Correlation decay of A_n(s, s+tau) inside the bulk |s|, |s+tau| <=
// sqrt(n) - alpha_n: same-sign pairs obey A_n <= 4 e^{-tau^2/2}; mixed-sign
// pairs obey A_n <= tau^{-2} from a finite tau up (threshold reported), and
// sup log A_n / log tau < -1 beyond it.
BoundReport check_b1(const std::vector<std::int64_t>& n_list);

// Small-gap modulus: 1 - inf A_n(s,t) over {0 <= t-s <= u} stays below
// 1/log^2 u, assembled from the three regimes (st < 0 vs u^2; st > 0 with
// n <= sqrt|log u| vs u, including the explicit determinant-sum chain vs
// n^{3n+3}(t-s)^2; st > 0 with n >= sqrt|log u| vs 1/log^2 u), plus
// boundedness of |log u|^1.5 * p_n^2(u) for the modulus p_n^2 = 2 - 2 inf A.
BoundReport check_b3(const std::vector<std::int64_t>& n_list, const std::vector<double>& u_list);

// E(value'^2)/E(value^2) for the damped path e^{-x^2/2} f_n(x) and the
// top-normalized path x^{-n} f_n(x); log-domain peak-centered sums.
double variance_ratio_g(std::int64_t n, double x);
double variance_ratio_h(std::int64_t n, double x);

// The derivative/value variance ratio of the damped path stays below C*n/x^2
// on [sqrt(n)-alpha_n, sqrt(n)] with the fitted C stable across n (+-20%),
// and the literal step condition 2 Delta^2 E(g'^2) <= E(g^2) holds at
// Delta = 0.5 across the window.
BoundReport check_variance_chain(const std::vector<std::int64_t>& n_list);

// Largest uniform step Delta*(n) with 2 Delta^2 ratio <= 1 across both
// transition windows; bounded below by 0.5 across n and stable under grid
// refinement.
BoundReport check_ldm_condition(const std::vector<std::int64_t>& n_list);

// Top-coefficient domination past sqrt(n) + alpha_n: sum_{i<n} x^i/sqrt(i!)
// <= log(n) x^n/sqrt(n!); smallest passing n reported, n = 1 is out of regime.
BoundReport check_tail_domination(const std::vector<std::int64_t>& n_list);

// Cross-check 1 - e^{-x} sum_{i<=n} x^i/i! = P(Poi(x) > n) at random (x, n)
// to 1e-10.
BoundReport check_poisson_identity(std::uint64_t samples, const RngStream& seed);

// Large-deviation chain k I(n/k) >= alpha_n^2 / 3 for k = ceil(n - sqrt(n)
// alpha_n), I the Poisson rate function.
BoundReport check_rate_chain(const std::vector<std::int64_t>& n_list);

// Every report above with its default box over n in {64, 100, 256, 1024}.
std::vector<BoundReport> default_verification_suite();

}  // namespace weylp
