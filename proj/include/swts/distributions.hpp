#pragma once

#include <cstdint>

#include "swts/rng.hpp"

namespace swts {

// Samplers consume a documented, fixed number of uniforms per accepted draw
// attempt, so a given RngStream state always yields the same value.

/// Gamma(shape, 1) via Marsaglia-Tsang squeeze; shape < 1 uses the
/// Gamma(shape + 1) * U^(1/shape) boost.
double sample_gamma(double shape, RngStream& rng);

/// Beta(alpha, beta) as X / (X + Y) with X ~ Gamma(alpha), Y ~ Gamma(beta).
double sample_beta(double alpha, double beta, RngStream& rng);

/// Standard normal via the Marsaglia polar method (no cached spare).
double sample_standard_normal(RngStream& rng);

/// Normal with the given mean and variance (> 0).
double sample_gaussian(double mean, double variance, RngStream& rng);

/// 1 with probability mu, otherwise 0. Consumes exactly one uniform.
int sample_bernoulli(double mu, RngStream& rng);

/// Regularized incomplete beta I_y(alpha, beta), continued-fraction evaluation.
double beta_cdf(double alpha, double beta, double y);

/// P(Bin(n, p) <= k). Exact term summation; log-space normalized for n > 1000.
double binomial_cdf(std::int64_t n, double p, std::int64_t k);

/// |I_y(a, b) - (1 - P(Bin(a + b - 1, y) <= a - 1))| for integer a, b >= 1.
double beta_binomial_identity_gap(std::int64_t alpha, std::int64_t beta, double y);

}  // namespace swts
