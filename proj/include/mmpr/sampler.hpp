#pragma once

#include <cstdint>

#include "mmpr/oumodel.hpp"

namespace mmpr {

/// Euler-Maruyama ensemble setup. The step size must satisfy
/// dt <= eps/10; the fast block's eigenvalue scales like zeta/eps
/// and explicit stepping is unstable well before 2 eps.
struct EnsembleConfig {
    EnsembleConfig(std::size_t paths, double dt, double T, std::uint64_t seed);

    std::size_t paths;
    double dt;
    double T;
    std::uint64_t seed;
};

/// Gaussian initial law of (x, y); a zero covariance gives a
/// deterministic start.
struct InitialDistribution {
    MeanState mean;
    CovarianceState cov;
};

struct MomentStdErrors {
    double m_x;
    double m_y;
    double s_x;
    double s_xy;
    double s_y;
};

struct EmpiricalMoments {
    MeanState mean;
    CovarianceState cov;
    MomentStdErrors std_errors;
};

/// One explicit Euler-Maruyama update of the OU state:
/// state + drift * state * dt + sigma diag(1, 1/sqrt(eps)) sqrt(dt) * noise.
Vector em_step(const OUParams& p, const Vector& state, double dt,
               const Vector& noise);

/// Empirical mean and covariance at time T over cfg.paths independent
/// paths. Deterministic given cfg.seed for any thread count.
EmpiricalMoments simulate_ensemble(const OUParams& p,
                                   const EnsembleConfig& cfg,
                                   const InitialDistribution& init,
                                   unsigned threads = 1);

}  // namespace mmpr
