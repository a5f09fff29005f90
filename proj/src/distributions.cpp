#include "swts/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "swts/errors.hpp"

namespace swts {

namespace {

void require_positive(double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v)) {
        throw ParameterError(std::string(name) + " must be positive and finite, got " + std::to_string(v));
    }
}

void require_unit_interval(double v, const char* name) {
    if (!(v >= 0.0 && v <= 1.0)) {
        throw ParameterError(std::string(name) + " must lie in [0,1], got " + std::to_string(v));
    }
}

// Modified Lentz evaluation of the continued fraction for I_x(a, b).
double incomplete_beta_cf(double a, double b, double x) {
    constexpr int max_iter = 10000;
    constexpr double eps = 1e-16;
    constexpr double tiny = 1e-300;

    const double qab = a + b;
    const double qap = a + 1.0;
    const double qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::fabs(d) < tiny) d = tiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= max_iter; ++m) {
        const double m2 = 2.0 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < tiny) d = tiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < tiny) d = tiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < eps) break;
    }
    return h;
}

double log_binomial_pmf(std::int64_t n, std::int64_t j, double log_p, double log_q) {
    const auto nd = static_cast<double>(n);
    const auto jd = static_cast<double>(j);
    return std::lgamma(nd + 1.0) - std::lgamma(jd + 1.0) - std::lgamma(nd - jd + 1.0) + jd * log_p +
           (nd - jd) * log_q;
}

}  // namespace

double sample_gamma(double shape, RngStream& rng) {
    require_positive(shape, "gamma shape");
    if (shape < 1.0) {
        const double g = sample_gamma(shape + 1.0, rng);
        return g * std::pow(rng.uniform_open(), 1.0 / shape);
    }
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        double x = 0.0;
        double v = 0.0;
        do {
            x = sample_standard_normal(rng);
            v = 1.0 + c * x;
        } while (v <= 0.0);
        v = v * v * v;
        const double u = rng.uniform_open();
        const double x2 = x * x;
        if (u < 1.0 - 0.0331 * x2 * x2) return d * v;
        if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return d * v;
    }
}

double sample_beta(double alpha, double beta, RngStream& rng) {
    require_positive(alpha, "beta alpha");
    require_positive(beta, "beta beta");
    const double x = sample_gamma(alpha, rng);
    const double y = sample_gamma(beta, rng);
    const double s = x + y;
    // Both gammas underflowing only happens for tiny shapes; fall back to the mean.
    if (!(s > 0.0)) return alpha / (alpha + beta);
    return x / s;
}

double sample_standard_normal(RngStream& rng) {
    for (;;) {
        const double u = 2.0 * rng.uniform() - 1.0;
        const double v = 2.0 * rng.uniform() - 1.0;
        const double s = u * u + v * v;
        if (s > 0.0 && s < 1.0) {
            return u * std::sqrt(-2.0 * std::log(s) / s);
        }
    }
}

double sample_gaussian(double mean, double variance, RngStream& rng) {
    require_positive(variance, "gaussian variance");
    if (!std::isfinite(mean)) throw ParameterError("gaussian mean must be finite");
    return mean + std::sqrt(variance) * sample_standard_normal(rng);
}

int sample_bernoulli(double mu, RngStream& rng) {
    require_unit_interval(mu, "bernoulli mu");
    return rng.uniform() < mu ? 1 : 0;
}

double beta_cdf(double alpha, double beta, double y) {
    require_positive(alpha, "beta_cdf alpha");
    require_positive(beta, "beta_cdf beta");
    require_unit_interval(y, "beta_cdf y");
    if (y == 0.0) return 0.0;
    if (y == 1.0) return 1.0;
    const double log_front = std::lgamma(alpha + beta) - std::lgamma(alpha) - std::lgamma(beta) +
                             alpha * std::log(y) + beta * std::log1p(-y);
    const double front = std::exp(log_front);
    // The continued fraction converges fastest on the side of the mean.
    if (y < (alpha + 1.0) / (alpha + beta + 2.0)) {
        return front * incomplete_beta_cf(alpha, beta, y) / alpha;
    }
    return 1.0 - front * incomplete_beta_cf(beta, alpha, 1.0 - y) / beta;
}

double binomial_cdf(std::int64_t n, double p, std::int64_t k) {
    if (n < 0) throw ParameterError("binomial_cdf n must be non-negative");
    require_unit_interval(p, "binomial_cdf p");
    if (k < 0) return 0.0;
    if (k >= n) return 1.0;
    if (p == 0.0) return 1.0;
    if (p == 1.0) return 0.0;

    const double log_p = std::log(p);
    const double log_q = std::log1p(-p);
    if (n <= 1000) {
        double lower = 0.0;
        for (std::int64_t j = 0; j <= k; ++j) lower += std::exp(log_binomial_pmf(n, j, log_p, log_q));
        return std::min(lower, 1.0);
    }

    // Log-space: normalize by the largest term and by the total mass so that
    // neither tail underflows.
    std::vector<double> logs(static_cast<std::size_t>(n) + 1);
    double peak = -std::numeric_limits<double>::infinity();
    for (std::int64_t j = 0; j <= n; ++j) {
        logs[static_cast<std::size_t>(j)] = log_binomial_pmf(n, j, log_p, log_q);
        peak = std::max(peak, logs[static_cast<std::size_t>(j)]);
    }
    double lower = 0.0;
    double upper = 0.0;
    for (std::int64_t j = 0; j <= n; ++j) {
        const double w = std::exp(logs[static_cast<std::size_t>(j)] - peak);
        (j <= k ? lower : upper) += w;
    }
    return lower / (lower + upper);
}

double beta_binomial_identity_gap(std::int64_t alpha, std::int64_t beta, double y) {
    if (alpha < 1 || beta < 1) throw ParameterError("beta-binomial identity needs integer alpha, beta >= 1");
    const double lhs = beta_cdf(static_cast<double>(alpha), static_cast<double>(beta), y);
    const double rhs = 1.0 - binomial_cdf(alpha + beta - 1, y, alpha - 1);
    return std::fabs(lhs - rhs);
}

}  // namespace swts
