#include "weylp/series.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace weylp {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
// Terms below this fraction of the running sum cannot move the result.
constexpr double kRatioBreak = 1e-20;
// Partial-sum/result ratio beyond which plain compensated summation is not
// trusted and the evaluation escalates.
constexpr double kEscalationRatio = 1e8;

double lgamma_int(std::int64_t k) { return std::lgamma(static_cast<double>(k)); }

struct AltEvaluation {
    double log_magnitude;
    int sign;
    bool escalated;
};

// Direct compensated pass; usable when no partial sum overflows and the
// cancellation stays below the escalation threshold.
bool alternating_direct(std::int64_t n, double z, AltEvaluation* out) {
    // Peak term magnitude ~ z^z/z! ~ e^z; stay far from double overflow.
    if (z > 650.0) return false;
    NeumaierSum acc;
    double term = 1.0;
    double max_partial = 1.0;
    acc.add(term);
    for (std::int64_t i = 1; i <= n; ++i) {
        term *= -z / static_cast<double>(i);
        acc.add(term);
        max_partial = std::max(max_partial, std::max(std::abs(acc.value()), std::abs(term)));
        if (std::abs(term) < kRatioBreak * std::abs(acc.value()) &&
            static_cast<double>(i) > z) {
            break;
        }
    }
    const double value = acc.value();
    if (value == 0.0 || max_partial > kEscalationRatio * std::abs(value)) return false;
    out->log_magnitude = std::log(std::abs(value));
    out->sign = value > 0.0 ? 1 : -1;
    out->escalated = false;
    return true;
}

// z <= n+1: write S = e^{-z} - T with T = Sigma_{i>n} (-z)^i/i!, an alternating
// tail with strictly decreasing term magnitudes. T = (-1)^{n+1} z^{n+1}/(n+1)! B
// with B in (0,1], so every piece is well conditioned; the only possible
// cancellation left is the single subtraction for odd n.
AltEvaluation alternating_tail_split(std::int64_t n, double z) {
    NeumaierSum bracket;
    double term = 1.0;
    bracket.add(term);
    for (std::int64_t j = 0;; ++j) {
        term *= -z / static_cast<double>(n + 2 + j);
        bracket.add(term);
        if (std::abs(term) < kRatioBreak * bracket.value()) break;
    }
    const double log_tail =
        static_cast<double>(n + 1) * std::log(z) - lgamma_int(n + 2) + std::log(bracket.value());
    const double log_head = -z;  // e^{-z}

    AltEvaluation out{};
    out.escalated = true;
    if (n % 2 == 0) {
        // Tail is negative: S = e^{-z} + |T|, no cancellation.
        out.log_magnitude = log_add_exp(log_head, log_tail);
        out.sign = 1;
        return out;
    }
    // Odd n: S = e^{-z} - |T|.
    const double hi = std::max(log_head, log_tail);
    const double lo = std::min(log_head, log_tail);
    const double diff = -std::expm1(lo - hi);  // 1 - exp(lo-hi) in (0,1]
    if (diff <= 0.0) {
        out.log_magnitude = kNegInf;
    } else {
        out.log_magnitude = hi + std::log(diff);
    }
    out.sign = log_head >= log_tail ? 1 : -1;

    // Certify against the error floor of the larger operand.
    const double certified = out.log_magnitude - (hi + std::log(1e-13));
    if (!(certified > 6.0 * std::log(10.0))) {
        const double tail_bound =
            std::exp(static_cast<double>(n + 1) * std::log(z) - lgamma_int(n + 2));
        std::ostringstream msg;
        msg << "alternating_partial_exp(" << n << ", " << z
            << "): cancellation leaves fewer than 6 certified digits";
        throw PrecisionLossError(msg.str(), std::exp(-z) - tail_bound, std::exp(-z) + tail_bound);
    }
    return out;
}

// z > n+1: factor out the dominant last term. S = (-1)^n (z^n/n!) V with
// V = Sigma_j (-1)^j (n!/(n-j)!) z^{-j} in (1 - n/z, 1], again a decreasing
// alternating series.
AltEvaluation alternating_descending(std::int64_t n, double z) {
    NeumaierSum bracket;
    double term = 1.0;
    bracket.add(term);
    for (std::int64_t j = 0; j < n; ++j) {
        term *= -static_cast<double>(n - j) / z;
        bracket.add(term);
        if (std::abs(term) < kRatioBreak * std::abs(bracket.value())) break;
    }
    AltEvaluation out{};
    out.escalated = true;
    out.log_magnitude =
        static_cast<double>(n) * std::log(z) - lgamma_int(n + 1) + std::log(bracket.value());
    out.sign = (n % 2 == 0) ? 1 : -1;
    return out;
}

AltEvaluation alternating_eval(std::int64_t n, double z) {
    if (z < 0.0 || n < 0) throw std::invalid_argument("alternating_partial_exp: need z >= 0, n >= 0");
    if (z == 0.0 || n == 0) return AltEvaluation{0.0, 1, false};
    AltEvaluation direct{};
    if (alternating_direct(n, z, &direct)) return direct;
    if (z <= static_cast<double>(n + 1)) return alternating_tail_split(n, z);
    return alternating_descending(n, z);
}

}  // namespace

double log_add_exp(double a, double b) {
    if (std::isinf(a) && a < 0) return b;
    if (std::isinf(b) && b < 0) return a;
    const double hi = std::max(a, b);
    const double lo = std::min(a, b);
    return hi + std::log1p(std::exp(lo - hi));
}

LogValue log_partial_exp(std::int64_t n, double z) {
    if (z < 0.0 || n < 0) throw std::invalid_argument("log_partial_exp: need z >= 0, n >= 0");
    if (z == 0.0) return LogValue{0.0};

    const std::int64_t peak = std::min<std::int64_t>(n, static_cast<std::int64_t>(std::floor(z)));
    const double log_peak = static_cast<double>(peak) * std::log(z) - lgamma_int(peak + 1);

    // Sum of term ratios t_i / t_peak, accumulated outward from the peak.
    NeumaierSum others;
    double ratio = 1.0;
    for (std::int64_t i = peak; i > 0; --i) {
        ratio *= static_cast<double>(i) / z;
        others.add(ratio);
        if (ratio < kRatioBreak * (1.0 + others.value())) break;
    }
    ratio = 1.0;
    for (std::int64_t i = peak + 1; i <= n; ++i) {
        ratio *= z / static_cast<double>(i);
        others.add(ratio);
        if (ratio < kRatioBreak * (1.0 + others.value())) break;
    }
    return LogValue{log_peak + std::log1p(others.value())};
}

SignedSeriesValue alternating_partial_exp(std::int64_t n, double z) {
    const AltEvaluation ev = alternating_eval(n, z);
    return SignedSeriesValue{static_cast<double>(ev.sign) * std::exp(ev.log_magnitude),
                             ev.escalated};
}

SignedLogSeriesValue alternating_partial_exp_log(std::int64_t n, double z) {
    const AltEvaluation ev = alternating_eval(n, z);
    return SignedLogSeriesValue{ev.log_magnitude, ev.sign, ev.escalated};
}

double poisson_tail(double x, std::int64_t n) {
    if (!(x > 0.0)) throw std::invalid_argument("poisson_tail: need x > 0");
    if (n < 0) return 1.0;
    const double a = static_cast<double>(n + 1);

    if (x < a + 1.0) {
        // Lower-gamma series: P(a,x) = e^{-x + a log x - lgamma(a)} Sigma_k x^k / (a(a+1)...(a+k)).
        double term = 1.0 / a;
        NeumaierSum sum;
        sum.add(term);
        for (int k = 1; k < 10000; ++k) {
            term *= x / (a + static_cast<double>(k));
            sum.add(term);
            if (term < kRatioBreak * sum.value()) break;
        }
        return sum.value() * std::exp(-x + a * std::log(x) - std::lgamma(a));
    }

    // Upper-gamma continued fraction (modified Lentz); here P >= ~0.5 so the
    // final subtraction costs no relative accuracy that matters.
    const double tiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < 10000; ++i) {
        const double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::abs(delta - 1.0) < 1e-16) break;
    }
    const double q = std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
    return 1.0 - q;
}

double poisson_rate(double theta) {
    if (!(theta > 0.0)) throw std::invalid_argument("poisson_rate: need theta > 0");
    return theta * std::log(theta) - (theta - 1.0);
}

double log_weyl_coeff(std::int64_t i) {
    if (i < 0) throw std::invalid_argument("log_weyl_coeff: need i >= 0");
    return -0.5 * lgamma_int(i + 1);
}

}  // namespace weylp
