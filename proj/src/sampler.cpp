#include "mmpr/sampler.hpp"

#include <cmath>
#include <string>
#include <thread>
#include <vector>

#include "mmpr/rng.hpp"

namespace mmpr {

EnsembleConfig::EnsembleConfig(std::size_t paths_in, double dt_in, double T_in,
                               std::uint64_t seed_in)
    : paths(paths_in), dt(dt_in), T(T_in), seed(seed_in) {
    if (paths < 1000) {
        throw DomainError("ensemble needs at least 1e3 paths");
    }
    if (!(dt > 0.0) || !std::isfinite(dt)) {
        throw DomainError("ensemble step size must be positive");
    }
    if (!(T >= 0.0) || !std::isfinite(T)) {
        throw DomainError("ensemble horizon must be nonnegative");
    }
}

Vector em_step(const OUParams& p, const Vector& state, double dt,
               const Vector& noise) {
    if (state.size() != 2 || noise.size() != 2) {
        throw DimensionError("EM step works on 2-dimensional OU states");
    }
    if (!(dt >= 0.0)) {
        throw DomainError("EM step size must be nonnegative");
    }
    const double drift_x = p.alpha * state[0] + p.beta * state[1];
    const double drift_y = (p.gamma * state[0] + p.zeta * state[1]) / p.eps;
    const double amp = p.sigma * std::sqrt(dt);
    return Vector{state[0] + drift_x * dt + amp * noise[0],
                  state[1] + drift_y * dt + amp / std::sqrt(p.eps) * noise[1]};
}

namespace {

struct Cholesky2x2 {
    double l00 = 0.0;
    double l10 = 0.0;
    double l11 = 0.0;
};

Cholesky2x2 cholesky(const CovarianceState& cov) {
    Cholesky2x2 chol;
    if (cov.s_x > 0.0) {
        chol.l00 = std::sqrt(cov.s_x);
        chol.l10 = cov.s_xy / chol.l00;
        const double rem = cov.s_y - chol.l10 * chol.l10;
        chol.l11 = std::sqrt(std::max(rem, 0.0));
    } else {
        // s_x = 0 forces s_xy = 0 (validity), leaving y marginal only.
        chol.l11 = std::sqrt(cov.s_y);
    }
    return chol;
}

}  // namespace

EmpiricalMoments simulate_ensemble(const OUParams& p,
                                   const EnsembleConfig& cfg,
                                   const InitialDistribution& init,
                                   unsigned threads) {
    if (cfg.dt > p.eps / 10.0) {
        throw StabilityError(
            "EM step violates the stability margin: dt/eps = " +
            std::to_string(cfg.dt / p.eps) + " exceeds 1/10");
    }
    const double steps_real = cfg.T / cfg.dt;
    const auto nsteps = static_cast<std::uint64_t>(std::llround(steps_real));
    if (std::abs(static_cast<double>(nsteps) - steps_real) >
        1e-9 * std::max(1.0, steps_real)) {
        throw DomainError("horizon must be an integer multiple of dt");
    }

    const CounterRng rng(cfg.seed);
    const Cholesky2x2 chol = cholesky(init.cov);
    const double amp_x = p.sigma * std::sqrt(cfg.dt);
    const double amp_y = amp_x / std::sqrt(p.eps);

    std::vector<double> final_x(cfg.paths);
    std::vector<double> final_y(cfg.paths);

    auto run_path = [&](std::size_t path) {
        // Counter step 0 feeds the initial draw, steps 1..nsteps the walk.
        const double g0 = rng.normal(path, 0, 0);
        const double g1 = rng.normal(path, 0, 1);
        double x = init.mean.m_x + chol.l00 * g0;
        double y = init.mean.m_y + chol.l10 * g0 + chol.l11 * g1;
        for (std::uint64_t s = 1; s <= nsteps; ++s) {
            const double nx = rng.normal(path, s, 0);
            const double ny = rng.normal(path, s, 1);
            const double drift_x = p.alpha * x + p.beta * y;
            const double drift_y = (p.gamma * x + p.zeta * y) / p.eps;
            x += drift_x * cfg.dt + amp_x * nx;
            y += drift_y * cfg.dt + amp_y * ny;
        }
        final_x[path] = x;
        final_y[path] = y;
    };

    if (threads <= 1) {
        for (std::size_t path = 0; path < cfg.paths; ++path) run_path(path);
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < threads; ++w) {
            pool.emplace_back([&, w] {
                for (std::size_t path = w; path < cfg.paths; path += threads) {
                    run_path(path);
                }
            });
        }
        for (auto& t : pool) t.join();
    }

    for (std::size_t i = 0; i < cfg.paths; ++i) {
        if (!std::isfinite(final_x[i]) || !std::isfinite(final_y[i])) {
            throw StabilityError(
                "path diverged (dt/eps = " + std::to_string(cfg.dt / p.eps) +
                "); reduce dt below eps/10");
        }
    }

    const auto m = static_cast<double>(cfg.paths);
    double mean_x = 0.0;
    double mean_y = 0.0;
    for (std::size_t i = 0; i < cfg.paths; ++i) {
        mean_x += final_x[i];
        mean_y += final_y[i];
    }
    mean_x /= m;
    mean_y /= m;

    double sxx = 0.0;
    double sxy = 0.0;
    double syy = 0.0;
    for (std::size_t i = 0; i < cfg.paths; ++i) {
        const double dx = final_x[i] - mean_x;
        const double dy = final_y[i] - mean_y;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    sxx /= m - 1.0;
    sxy /= m - 1.0;
    syy /= m - 1.0;

    // Gaussian large-sample standard errors: sqrt(Var/M) for means,
    // delta-method expressions for the (co)variance estimators.
    const MomentStdErrors se{
        std::sqrt(sxx / m), std::sqrt(syy / m),
        sxx * std::sqrt(2.0 / (m - 1.0)),
        std::sqrt((sxx * syy + sxy * sxy) / (m - 1.0)),
        syy * std::sqrt(2.0 / (m - 1.0))};

    return EmpiricalMoments{MeanState(mean_x, mean_y),
                            CovarianceState(sxx, sxy, syy), se};
}

}  // namespace mmpr
