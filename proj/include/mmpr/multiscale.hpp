#pragma once

#include <span>

#include "mmpr/linalg.hpp"

namespace mmpr {

/// Slow-fast linear ODE
///
///   dx/dt = a x + p^T y
///   dy/dt = (q x - A y) / eps
///
/// with dissipative fast block: all eigenvalues of A have real part
/// >= mu_minus > 0 (checked at construction, mu_minus is stored).
class MultiscaleLinearSystem {
  public:
    MultiscaleLinearSystem(double a, Vector p, Vector q, Matrix A, double eps);

    double a() const { return a_; }
    const Vector& p() const { return p_; }
    const Vector& q() const { return q_; }
    const Matrix& A() const { return A_; }
    double eps() const { return eps_; }

    /// Smallest real part over the eigenvalues of A.
    double mu_minus() const { return mu_minus_; }

    std::size_t fast_dimension() const { return q_.size(); }

  private:
    double a_;
    Vector p_;
    Vector q_;
    Matrix A_;
    double eps_;
    double mu_minus_;
};

/// Constant-coefficient affine ODE du/dt = M u + b.
struct AffineSystem {
    AffineSystem(Matrix m, Vector b);

    /// du/dt = M u.
    static AffineSystem homogeneous(Matrix m);

    std::size_t dimension() const { return M.rows(); }
    bool is_homogeneous() const;

    Matrix M;
    Vector b;
};

/// Scalar reduced model dX/dt = lambda X + inhom.
struct ReducedModel {
    ReducedModel(double lambda, double inhom);

    AffineSystem as_affine() const;

    double lambda;
    double inhom;
};

/// Effective slow decay coefficient a + p^T A^{-1} q.
double reduced_coefficient(const MultiscaleLinearSystem& sys);

/// The (1+d)x(1+d) block matrix [[a, p^T], [q/eps, -A/eps]].
Matrix assemble_full_matrix(const MultiscaleLinearSystem& sys);

/// Exact flow of the affine ODE over dt:
///   e^{M dt} (u + M^{-1} b) - M^{-1} b,  or  e^{M dt} u  when b = 0.
/// b != 0 with singular M is rejected.
Vector exact_flow(const AffineSystem& sys, const Vector& u, double dt);

/// Length of the initial fast transient, (2 eps / mu_minus) ln(1/eps).
double boundary_layer_time(double eps, double mu_minus);

/// Maximum absolute difference between two trajectories sampled on
/// the same time grid.
double model_error_sup(std::span<const double> micro_slow,
                       std::span<const double> reduced);

}  // namespace mmpr
