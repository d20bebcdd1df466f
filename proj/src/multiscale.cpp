#include "mmpr/multiscale.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>

namespace mmpr {

MultiscaleLinearSystem::MultiscaleLinearSystem(double a, Vector p, Vector q,
                                               Matrix A, double eps)
    : a_(a), p_(std::move(p)), q_(std::move(q)), A_(std::move(A)), eps_(eps) {
    if (!std::isfinite(a_)) {
        throw DomainError("slow self-coupling must be finite");
    }
    if (!A_.square()) {
        throw DimensionError("fast dissipation block must be square");
    }
    const std::size_t d = A_.rows();
    if (p_.size() != d || q_.size() != d) {
        throw DimensionError("coupling vectors must match the fast dimension");
    }
    if (!(eps_ > 0.0 && eps_ < 1.0)) {
        throw DomainError("eps must lie in (0,1)");
    }
    mu_minus_ = std::numeric_limits<double>::infinity();
    for (const auto& lambda : eigenvalues(A_)) {
        mu_minus_ = std::min(mu_minus_, lambda.real());
    }
    if (!(mu_minus_ > 0.0)) {
        throw AssumptionError(
            "fast dynamics not dissipative: min real eigenvalue part of A is " +
            std::to_string(mu_minus_));
    }
}

AffineSystem::AffineSystem(Matrix m, Vector rhs)
    : M(std::move(m)), b(std::move(rhs)) {
    if (!M.square()) {
        throw DimensionError("affine system matrix must be square");
    }
    if (b.size() != M.rows()) {
        throw DimensionError("inhomogeneity size must match the matrix");
    }
}

AffineSystem AffineSystem::homogeneous(Matrix m) {
    const std::size_t n = m.rows();
    return AffineSystem(std::move(m), Vector::zeros(n));
}

bool AffineSystem::is_homogeneous() const {
    return b.max_abs() == 0.0;
}

ReducedModel::ReducedModel(double lambda_in, double inhom_in)
    : lambda(lambda_in), inhom(inhom_in) {
    if (!std::isfinite(lambda) || !std::isfinite(inhom)) {
        throw DomainError("reduced model coefficients must be finite");
    }
    if (inhom != 0.0 && lambda == 0.0) {
        throw DomainError("reduced model with forcing needs lambda != 0");
    }
}

AffineSystem ReducedModel::as_affine() const {
    return AffineSystem(Matrix(1, 1, {lambda}), Vector{inhom});
}

double reduced_coefficient(const MultiscaleLinearSystem& sys) {
    return sys.a() + dot(sys.p(), solve(sys.A(), sys.q()));
}

Matrix assemble_full_matrix(const MultiscaleLinearSystem& sys) {
    const std::size_t d = sys.fast_dimension();
    Matrix full(1 + d, 1 + d);
    full(0, 0) = sys.a();
    for (std::size_t j = 0; j < d; ++j) full(0, 1 + j) = sys.p()[j];
    for (std::size_t i = 0; i < d; ++i) {
        full(1 + i, 0) = sys.q()[i] / sys.eps();
        for (std::size_t j = 0; j < d; ++j) {
            full(1 + i, 1 + j) = -sys.A()(i, j) / sys.eps();
        }
    }
    return full;
}

Vector exact_flow(const AffineSystem& sys, const Vector& u, double dt) {
    if (u.size() != sys.dimension()) {
        throw DimensionError("state size does not match the system");
    }
    if (!(dt >= 0.0)) {
        throw DomainError("flow time must be nonnegative");
    }
    const Matrix propagator = mat_exp(sys.M, dt);
    if (sys.is_homogeneous()) {
        return propagator * u;
    }
    const Vector fixed_point_offset = solve(sys.M, sys.b);  // M^{-1} b
    return propagator * (u + fixed_point_offset) - fixed_point_offset;
}

double boundary_layer_time(double eps, double mu_minus) {
    if (!(eps > 0.0 && eps < 1.0)) {
        throw DomainError("eps must lie in (0,1)");
    }
    if (!(mu_minus > 0.0)) {
        throw DomainError("mu_minus must be positive");
    }
    return (2.0 * eps / mu_minus) * std::log(1.0 / eps);
}

double model_error_sup(std::span<const double> micro_slow,
                       std::span<const double> reduced) {
    if (micro_slow.size() != reduced.size()) {
        throw DimensionError("trajectories sampled on different grids");
    }
    double sup = 0.0;
    for (std::size_t i = 0; i < micro_slow.size(); ++i) {
        sup = std::max(sup, std::abs(micro_slow[i] - reduced[i]));
    }
    return sup;
}

}  // namespace mmpr
