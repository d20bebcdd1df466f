#include "mmpr/oumodel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace mmpr {

namespace {

// Near-zero threshold for the decay rates; the assumptions only require
// lambda != 0 without quantifying.
constexpr double kLambdaZeroTolerance = 1e-12;

double min_real_eigenvalue_part(const Matrix& m) {
    double out = std::numeric_limits<double>::infinity();
    for (const auto& lambda : eigenvalues(m)) {
        out = std::min(out, lambda.real());
    }
    return out;
}

}  // namespace

OUParams::OUParams(double alpha_in, double beta_in, double gamma_in,
                   double zeta_in, double sigma_in, double eps_in)
    : alpha(alpha_in), beta(beta_in), gamma(gamma_in), zeta(zeta_in),
      sigma(sigma_in), eps(eps_in) {
    for (double v : {alpha, beta, gamma, zeta, sigma}) {
        if (!std::isfinite(v)) {
            throw DomainError("OU parameters must be finite");
        }
    }
    if (!(sigma >= 0.0)) {
        throw DomainError("diffusion amplitude sigma must be nonnegative");
    }
    if (!(eps > 0.0 && eps < 1.0)) {
        throw DomainError("eps must lie in (0,1)");
    }
}

MeanState::MeanState(double mx, double my) : m_x(mx), m_y(my) {
    if (!std::isfinite(m_x) || !std::isfinite(m_y)) {
        throw DomainError("mean state must be finite");
    }
}

CovarianceState::CovarianceState(double sx, double sxy, double sy)
    : s_x(sx), s_xy(sxy), s_y(sy) {
    for (double v : {s_x, s_xy, s_y}) {
        if (!std::isfinite(v)) {
            throw DomainError("covariance state must be finite");
        }
    }
    if (s_x < 0.0 || s_y < 0.0 || s_xy * s_xy > s_x * s_y + 1e-12) {
        throw DomainError("not a valid covariance state");
    }
}

MultiscaleLinearSystem mean_system(const OUParams& p) {
    // MultiscaleLinearSystem validates eig(-zeta) > 0, i.e. zeta < 0.
    return MultiscaleLinearSystem(p.alpha, Vector{p.beta}, Vector{p.gamma},
                                  Matrix(1, 1, {-p.zeta}), p.eps);
}

AffineSystem covariance_system(const OUParams& p) {
    return covariance_system(p, p.eps);
}

AffineSystem covariance_system(const OUParams& p, double eps) {
    if (!(eps > 0.0)) {
        throw DomainError("eps must be positive");
    }
    const double s2 = p.sigma * p.sigma;
    Matrix m(3, 3,
             {2.0 * p.alpha, 2.0 * p.beta, 0.0,
              p.gamma / eps, p.alpha + p.zeta / eps, p.beta,
              0.0, 2.0 * p.gamma / eps, 2.0 * p.zeta / eps});
    return AffineSystem(std::move(m), Vector{s2, 0.0, s2 / eps});
}

Matrix a_sigma(const OUParams& p, double eps) {
    return Matrix(2, 2,
                  {-(p.alpha * eps + p.zeta), -p.beta * eps,
                   -2.0 * p.gamma, -2.0 * p.zeta});
}

double lambda_sigma(const OUParams& p) {
    if (p.zeta == 0.0) {
        throw DomainError("lambda_sigma undefined for zeta = 0");
    }
    return 2.0 * (p.alpha - p.beta * p.gamma / p.zeta);
}

double lambda_sigma_eps(const OUParams& p, double eps) {
    const double denom =
        (eps * p.alpha + p.zeta) * p.zeta - p.gamma * p.beta * eps;
    if (std::abs(denom) < kLambdaZeroTolerance) {
        throw SingularityError("lambda_sigma_eps denominator vanishes",
                               std::abs(denom));
    }
    return 2.0 * p.alpha - 2.0 * p.beta * p.gamma * p.zeta / denom;
}

double delta_lambda(const OUParams& p, double eps) {
    if (p.zeta == 0.0) {
        throw DomainError("delta_lambda undefined for zeta = 0");
    }
    const double a = p.alpha * p.zeta - p.gamma * p.beta;
    const double b = p.zeta * p.zeta;
    const double denom = a * eps + b;
    if (std::abs(denom) < kLambdaZeroTolerance) {
        throw SingularityError("delta_lambda denominator vanishes",
                               std::abs(denom));
    }
    return -(2.0 * p.beta * p.gamma / p.zeta) * (a * eps) / denom;
}

Matrix b_sigma_inverse_schur(const OUParams& p, double eps) {
    const double lambda = lambda_sigma_eps(p, eps);
    if (std::abs(lambda) < kLambdaZeroTolerance) {
        throw SingularityError("lambda_sigma_eps vanishes", std::abs(lambda));
    }
    const Matrix a_inv = solve(a_sigma(p, eps), Matrix::identity(2));
    const Vector p_sigma{2.0 * p.beta, 0.0};
    const Vector q_sigma{p.gamma, 0.0};

    const Vector aq = a_inv * q_sigma;           // A^{-1} q
    Vector pa(2);                                 // p^T A^{-1}
    for (std::size_t j = 0; j < 2; ++j) {
        pa[j] = p_sigma[0] * a_inv(0, j) + p_sigma[1] * a_inv(1, j);
    }

    Matrix inv(3, 3);
    inv(0, 0) = 1.0;
    for (std::size_t j = 0; j < 2; ++j) inv(0, 1 + j) = eps * pa[j];
    for (std::size_t i = 0; i < 2; ++i) inv(1 + i, 0) = aq[i];
    for (std::size_t i = 0; i < 2; ++i) {
        for (std::size_t j = 0; j < 2; ++j) {
            inv(1 + i, 1 + j) =
                -eps * a_inv(i, j) * lambda + eps * aq[i] * pa[j];
        }
    }
    inv *= 1.0 / lambda;
    return inv;
}

ReducedModel reduced_mean_model(const OUParams& p) {
    if (p.zeta == 0.0) {
        throw DomainError("reduced mean model undefined for zeta = 0");
    }
    return ReducedModel(p.alpha - p.beta * p.gamma / p.zeta, 0.0);
}

ReducedModel reduced_variance_model(const OUParams& p) {
    return ReducedModel(lambda_sigma(p), p.sigma * p.sigma);
}

CovarianceState steady_state_covariance(const OUParams& p, double eps) {
    const AffineSystem cov = covariance_system(p, eps);
    const Vector fixed = -1.0 * solve(cov.M, cov.b);
    return CovarianceState(fixed[0], fixed[1], fixed[2]);
}

ConditionalEquilibrium conditional_equilibrium(const OUParams& p) {
    if (!(p.zeta < 0.0)) {
        throw DomainError("conditional equilibrium needs dissipative zeta < 0");
    }
    return ConditionalEquilibrium{p.gamma / p.zeta,
                                  p.sigma * p.sigma / (-2.0 * p.zeta)};
}

AssumptionReport check_assumptions(const OUParams& p,
                                   const std::vector<double>& eps_grid) {
    if (eps_grid.empty()) {
        throw DomainError("eps grid must be nonempty");
    }
    for (double eps : eps_grid) {
        if (!(eps > 0.0 && eps <= 1.0)) {
            throw DomainError("eps grid values must lie in (0,1]");
        }
    }
    AssumptionReport report;
    report.eps_grid = eps_grid;
    report.lambda_sigma =
        (p.zeta != 0.0) ? 2.0 * (p.alpha - p.beta * p.gamma / p.zeta)
                        : std::numeric_limits<double>::quiet_NaN();

    bool ok = std::isfinite(report.lambda_sigma) &&
              std::abs(report.lambda_sigma) > kLambdaZeroTolerance;
    for (double eps : eps_grid) {
        const double min_eig = min_real_eigenvalue_part(a_sigma(p, eps));
        report.min_real_eig_a_sigma.push_back(min_eig);
        double lambda = std::numeric_limits<double>::quiet_NaN();
        const double denom =
            (eps * p.alpha + p.zeta) * p.zeta - p.gamma * p.beta * eps;
        if (std::abs(denom) >= kLambdaZeroTolerance) {
            lambda = 2.0 * p.alpha - 2.0 * p.beta * p.gamma * p.zeta / denom;
        }
        report.lambda_sigma_eps.push_back(lambda);
        ok = ok && min_eig > 0.0 && std::isfinite(lambda) &&
             std::abs(lambda) > kLambdaZeroTolerance;
    }
    report.all_satisfied = ok;
    return report;
}

}  // namespace mmpr
