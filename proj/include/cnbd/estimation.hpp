#ifndef CNBD_ESTIMATION_HPP
#define CNBD_ESTIMATION_HPP

#include <cstdint>
#include <vector>

#include "cnbd/information.hpp"

namespace cnbd {

struct ModelParams {
    std::vector<double> beta;    // length b
    std::vector<double> tau;     // length t
    std::vector<double> lambda;  // length t
    std::vector<double> rho;     // length t, two-sided model only
    double sigma = 1.0;
    std::uint64_t seed = 0;
};

// Full design matrix [B | T | L] or [B | T | L | R], bk rows.
DMatrix model_matrix(const Design& d, EffectModel model);

// Y = X theta + sigma * N(0, I), deterministic for a given seed.
std::vector<double> simulate_responses(const Design& d, EffectModel model, const ModelParams& params);

struct ContrastEstimate {
    std::vector<double> h;
    double estimate = 0.0;
    double variance_factor = 0.0;       // h' C+ h
    double theoretical_variance = 0.0;  // sigma^2 h' C+ h
    bool estimable = false;
};

// Least-squares estimate of h'(total effect), sum(h) = 0, with block effects
// and the non-total effect direction treated as nuisance.
ContrastEstimate estimate_contrast(const Design& d, EffectModel model, const std::vector<double>& y,
                                   const std::vector<double>& h, double sigma = 1.0);

struct MonteCarloResult {
    double empirical_variance = 0.0;
    double theoretical_variance = 0.0;
    double ratio = 0.0;  // zero when the empirical variance is zero
    double mean_estimate = 0.0;
};

// Replicated simulation under zero effects (the estimator variance does not
// depend on the true parameter). Requires h estimable and n >= 1000.
MonteCarloResult monte_carlo_check(const Design& d, EffectModel model, const std::vector<double>& h, double sigma,
                                   int n, std::uint64_t seed);

}  // namespace cnbd

#endif
