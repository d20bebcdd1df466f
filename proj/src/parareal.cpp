#include "mmpr/parareal.hpp"

#include <algorithm>
#include <cmath>
#include <thread>
#include <utility>

namespace mmpr {

PropagatorSpec::PropagatorSpec(AffineSystem system_in, double dt_in)
    : system(std::move(system_in)), dt(dt_in) {
    if (!(dt > 0.0) || !std::isfinite(dt)) {
        throw DomainError("propagator time step must be positive");
    }
}

PararealConfig::PararealConfig(double T_in, std::size_t N_in, std::size_t K_in,
                               LiftingSpec lifting_in,
                               SlowFastPartition partition_in)
    : T(T_in), N(N_in), K(K_in), lifting(std::move(lifting_in)),
      partition(std::move(partition_in)) {
    if (!(T > 0.0) || !std::isfinite(T)) {
        throw DomainError("horizon must be positive");
    }
    if (N < 1) {
        throw DomainError("need at least one coarse interval");
    }
}

namespace {

/// Exact flow over one step, precomputed: u -> A u + B.
struct AffineStepper {
    explicit AffineStepper(const PropagatorSpec& spec)
        : A(mat_exp(spec.system.M, spec.dt)), B(Vector::zeros(A.rows())) {
        if (!spec.system.is_homogeneous()) {
            // (e^{M dt} - I) M^{-1} b, the constant per-step offset.
            B = (A - Matrix::identity(A.rows())) * solve(spec.system.M,
                                                         spec.system.b);
        }
    }

    Vector step(const Vector& u) const { return A * u + B; }

    Matrix A;
    Vector B;
};

void for_each_index(std::size_t count, unsigned threads, auto&& body) {
    if (threads <= 1 || count < 2) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }
    const unsigned workers =
        std::min<unsigned>(threads, static_cast<unsigned>(count));
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            for (std::size_t i = w; i < count; i += workers) body(i);
        });
    }
    for (auto& t : pool) t.join();
}

}  // namespace

Matrix one_step_matrix(const PropagatorSpec& spec) {
    return mat_exp(spec.system.M, spec.dt);
}

Vector one_step_offset(const PropagatorSpec& spec) {
    return AffineStepper(spec).B;
}

std::vector<Vector> serial_reference(const PropagatorSpec& fine,
                                     const Vector& u0, std::size_t N) {
    const AffineStepper stepper(fine);
    std::vector<Vector> out;
    out.reserve(N + 1);
    out.push_back(u0);
    for (std::size_t n = 0; n < N; ++n) out.push_back(stepper.step(out.back()));
    return out;
}

PararealTrace run_micro_macro(const PropagatorSpec& fine,
                              const PropagatorSpec& coarse,
                              const PararealConfig& cfg, const Vector& u0,
                              const Vector& X0, unsigned threads) {
    const SlowFastPartition& part = cfg.partition;
    if (u0.size() != part.total_dimension() ||
        fine.system.dimension() != part.total_dimension()) {
        throw DimensionError("micro dimension does not match the partition");
    }
    if (coarse.system.dimension() != part.slow_count() ||
        X0.size() != part.slow_count()) {
        throw DimensionError("macro dimension does not match the partition");
    }
    if (restrict_state(u0, part) != X0) {
        throw DomainError("X0 must equal the restriction of u0");
    }
    const double dt = cfg.dt();
    if (std::abs(fine.dt - dt) > 1e-12 * dt ||
        std::abs(coarse.dt - dt) > 1e-12 * dt) {
        throw DomainError("propagator steps must equal T/N");
    }

    const AffineStepper f(fine);
    const AffineStepper c(coarse);
    const std::size_t N = cfg.N;

    PararealTrace trace;
    trace.macro.assign(cfg.K + 1, std::vector<Vector>(N + 1));
    trace.micro.assign(cfg.K + 1, std::vector<Vector>(N + 1));
    trace.reference = serial_reference(fine, u0, N);

    // Iteration 0: coarse sweep, micro states lifted at every step.
    trace.macro[0][0] = X0;
    trace.micro[0][0] = u0;
    for (std::size_t n = 0; n < N; ++n) {
        trace.macro[0][n + 1] = c.step(trace.macro[0][n]);
        trace.micro[0][n + 1] = lift(trace.macro[0][n + 1], cfg.lifting, part);
    }

    for (std::size_t k = 0; k < cfg.K; ++k) {
        auto& X_prev = trace.macro[k];
        auto& u_prev = trace.micro[k];
        auto& X_next = trace.macro[k + 1];
        auto& u_next = trace.micro[k + 1];

        std::vector<Vector> fine_values(N);
        for_each_index(N, threads,
                       [&](std::size_t n) { fine_values[n] = f.step(u_prev[n]); });

        X_next[0] = X0;
        u_next[0] = u0;
        for (std::size_t n = 0; n < N; ++n) {
            X_next[n + 1] = c.step(X_next[n]) +
                            restrict_state(fine_values[n], part) -
                            c.step(X_prev[n]);
            u_next[n + 1] = match_states(X_next[n + 1], fine_values[n], part);
        }
    }
    return trace;
}

ErrorSummary error_summary(const PararealTrace& trace,
                           const SlowFastPartition& part) {
    ErrorSummary summary;
    const std::size_t N = trace.intervals();
    std::vector<Vector> ref_macro(N + 1);
    for (std::size_t n = 0; n <= N; ++n) {
        ref_macro[n] = restrict_state(trace.reference[n], part);
    }
    for (std::size_t k = 0; k <= trace.iterations(); ++k) {
        double macro_sup = 0.0;
        double micro_sup = 0.0;
        for (std::size_t n = 0; n <= N; ++n) {
            macro_sup = std::max(
                macro_sup, (trace.macro[k][n] - ref_macro[n]).norm2());
            micro_sup = std::max(
                micro_sup, (trace.micro[k][n] - trace.reference[n]).norm2());
        }
        summary.macro_sup.push_back(macro_sup);
        summary.micro_sup.push_back(micro_sup);
    }
    return summary;
}

std::vector<Vector> error_recursion_oracle(
    const Matrix& a_fine, const Matrix& a_coarse,
    const SlowFastPartition& part, const std::vector<Vector>& micro_errors_k,
    const std::vector<Vector>& macro_errors_k) {
    const std::size_t total = part.total_dimension();
    const std::size_t slow = part.slow_count();
    if (!a_fine.square() || a_fine.rows() != total) {
        throw DimensionError("fine one-step matrix does not match partition");
    }
    if (!a_coarse.square() || a_coarse.rows() != slow) {
        throw DimensionError("coarse one-step matrix does not match partition");
    }
    if (micro_errors_k.size() != macro_errors_k.size() ||
        micro_errors_k.empty()) {
        throw DimensionError("error lists must share the index range 0..N");
    }
    const std::size_t N = micro_errors_k.size() - 1;
    for (const Vector& e : micro_errors_k) {
        if (e.size() != total) {
            throw DimensionError("micro error dimension mismatch");
        }
    }
    for (const Vector& E : macro_errors_k) {
        if (E.size() != slow) {
            throw DimensionError("macro error dimension mismatch");
        }
    }
    if (micro_errors_k[0].max_abs() != 0.0 ||
        macro_errors_k[0].max_abs() != 0.0) {
        throw DomainError("errors at n = 0 must vanish (fixed initial state)");
    }

    // Powers of A_C up to N.
    std::vector<Matrix> coarse_power{Matrix::identity(slow)};
    for (std::size_t i = 1; i <= N; ++i) {
        coarse_power.push_back(coarse_power.back() * a_coarse);
    }

    std::vector<Vector> restricted_fine(N + 1);
    for (std::size_t n = 0; n <= N; ++n) {
        restricted_fine[n] = restrict_state(a_fine * micro_errors_k[n], part);
    }

    std::vector<Vector> predicted(N + 1, Vector::zeros(slow));
    for (std::size_t n = 1; n <= N; ++n) {
        Vector acc = restricted_fine[n - 1];
        for (std::size_t p = 1; p < n; ++p) {
            acc += coarse_power[n - p] *
                   (restricted_fine[p - 1] - macro_errors_k[p]);
        }
        predicted[n] = acc;
    }
    return predicted;
}

bool clears_boundary_layer(double dt, double eps, double mu_minus) {
    return dt > boundary_layer_time(eps, mu_minus);
}

}  // namespace mmpr
