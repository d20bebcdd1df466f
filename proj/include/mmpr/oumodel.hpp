#pragma once

#include <vector>

#include "mmpr/multiscale.hpp"

namespace mmpr {

/// Coefficients of the slow-fast Ornstein-Uhlenbeck SDE
///
///   dx = (alpha x + beta y) dt            + sigma dW_1
///   dy = (gamma x + zeta y) / eps dt      + sigma / sqrt(eps) dW_2
///
/// Only basic domain constraints are enforced here (sigma >= 0,
/// eps in (0,1), finite coefficients). The model assumptions --
/// dissipative fast dynamics, nonzero decay rates -- are verified by
/// check_assumptions and enforced by the operations that rely on them,
/// so that violating parameter sets can still be constructed and
/// reported on.
struct OUParams {
    OUParams(double alpha, double beta, double gamma, double zeta,
             double sigma, double eps);

    double alpha;
    double beta;
    double gamma;
    double zeta;
    double sigma;
    double eps;
};

/// First moments of the slow/fast components.
struct MeanState {
    MeanState(double m_x, double m_y);

    double m_x;
    double m_y;
};

/// Second central moments (Sigma_x, Sigma_xy, Sigma_y). Valid up to a
/// 1e-12 slack on the Cauchy-Schwarz constraint; mid-iteration Parareal
/// states bypass this type and live in plain vectors.
struct CovarianceState {
    CovarianceState(double s_x, double s_xy, double s_y);

    Vector as_vector() const { return Vector{s_x, s_xy, s_y}; }

    double s_x;
    double s_xy;
    double s_y;
};

/// Stationary law of the fast variable conditioned on a frozen slow
/// value: N(mean_slope * x, variance). The variance is stored as
/// sigma^2 / (-2 zeta), which is positive for dissipative zeta < 0.
struct ConditionalEquilibrium {
    double mean_slope;
    double variance;
};

/// Numerical verification of the model assumptions over an eps grid.
struct AssumptionReport {
    std::vector<double> eps_grid;
    std::vector<double> min_real_eig_a_sigma;
    std::vector<double> lambda_sigma_eps;
    double lambda_sigma = 0.0;
    bool all_satisfied = false;
};

/// Thrown when an operation requires assumptions that the report shows
/// to be violated.
class AssumptionViolation : public AssumptionError {
  public:
    AssumptionViolation(const std::string& what, AssumptionReport report)
        : AssumptionError(what), report_(std::move(report)) {}

    const AssumptionReport& report() const { return report_; }

  private:
    AssumptionReport report_;
};

/// Moment ODE of the mean, as a slow-fast system
/// (a = alpha, p = (beta), q = (gamma), A = (-zeta)).
MultiscaleLinearSystem mean_system(const OUParams& p);

/// Moment ODE of the covariance, dSigma/dt = B_Sigma Sigma + b_Sigma,
/// at the parameter's own eps or an explicit one.
AffineSystem covariance_system(const OUParams& p);
AffineSystem covariance_system(const OUParams& p, double eps);

/// Fast dissipation block A_Sigma(eps) = -[[alpha eps + zeta, beta eps],
///                                         [2 gamma, 2 zeta]].
Matrix a_sigma(const OUParams& p, double eps);

/// Reduced variance decay rate 2 (alpha - beta gamma / zeta).
double lambda_sigma(const OUParams& p);

/// Finite-eps decay rate 2 alpha - 2 beta gamma zeta /
/// ((eps alpha + zeta) zeta - gamma beta eps); approaches
/// lambda_sigma as eps -> 0.
double lambda_sigma_eps(const OUParams& p, double eps);

/// lambda_sigma - lambda_sigma_eps in closed form,
/// -(2 beta gamma / zeta) * A eps / (A eps + B) with
/// A = alpha zeta - gamma beta, B = zeta^2.
double delta_lambda(const OUParams& p, double eps);

/// Inverse of B_Sigma through its Schur-complement block formula.
Matrix b_sigma_inverse_schur(const OUParams& p, double eps);

ReducedModel reduced_mean_model(const OUParams& p);
ReducedModel reduced_variance_model(const OUParams& p);

/// Fixed point -B_Sigma^{-1} b_Sigma of the covariance ODE.
CovarianceState steady_state_covariance(const OUParams& p, double eps);

ConditionalEquilibrium conditional_equilibrium(const OUParams& p);

/// Evaluate the model assumptions over a grid of eps values in (0,1].
/// Violations are reported, never thrown.
AssumptionReport check_assumptions(const OUParams& p,
                                   const std::vector<double>& eps_grid);

}  // namespace mmpr
