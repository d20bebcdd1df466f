#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "mmpr/parareal.hpp"
#include "mmpr/sampler.hpp"

namespace mmpr {

enum class Quantity { mean, variance };
enum class ErrorLevel { macro, micro };

std::string to_string(Quantity q);
std::string to_string(ErrorLevel level);
Quantity quantity_from_string(const std::string& s);
ErrorLevel level_from_string(const std::string& s);

/// 13 geometric points from 1e-5 to 1e-2: small enough for the
/// asymptotic regime, large enough to stay above the exact-propagator
/// roundoff floor.
std::vector<double> default_eps_grid();

/// Full description of one sweep experiment. The JSON form is a flat
/// object with exactly these keys ("ou" holding the five SDE
/// coefficients); unknown keys are rejected, missing keys fall back to
/// the reference test setup below.
struct ExperimentConfig {
    double alpha = -1.0;
    double beta = -1.0;
    double gamma = 0.1;
    double zeta = -1.0;
    double sigma = 0.5;
    std::vector<double> eps_grid = default_eps_grid();
    double T = 10.0;
    std::size_t N = 10;
    std::size_t K = 4;
    LiftingVariant lifting = LiftingVariant::initial_condition;
    std::array<double, 5> initial_micro{100.0, 100.0, 0.0, 0.0, 0.0};
    std::uint64_t seed = 0x6d6d7072;

    OUParams ou_at(double eps) const;
    void validate() const;
};

ExperimentConfig parse_experiment_config(const std::string& json_text);
ExperimentConfig load_experiment_config(const std::string& path);

struct SweepRow {
    double eps;
    Quantity quantity;
    std::size_t k;
    double macro_sup;
    double micro_sup;
};

struct SlopeFit {
    Quantity quantity;
    ErrorLevel level;
    std::size_t k;
    double slope;
    double intercept;
    double eps_lo;
    double eps_hi;
    std::size_t points_used;
};

/// Parareal run of one quantity (mean: 2-dim micro ODE; variance:
/// 3-dim affine covariance ODE) at a single eps, with the config's
/// horizon, intervals, iterations, lifting and initial state.
PararealTrace run_moment_parareal(const ExperimentConfig& cfg, double eps,
                                  Quantity quantity);

/// Full eps sweep over both quantities. Refuses (AssumptionViolation,
/// no output) when check_assumptions fails on the grid. Boundary-layer
/// violations (dt <= t_BL) are warnings on `warn`, not errors. Rows
/// come back sorted by (eps, quantity, k).
std::vector<SweepRow> sweep_epsilon(const ExperimentConfig& cfg,
                                    std::ostream* warn = nullptr);

/// Least-squares line through (ln eps, ln error) per
/// (quantity, level, k) group, using rows with error > floor.
/// Fewer than 3 usable points in a group raise InsufficientDataError.
std::vector<SlopeFit> fit_slopes(const std::vector<SweepRow>& rows,
                                 double floor = 1e-11);

void emit_csv(const std::vector<SweepRow>& rows, const std::string& path);
void emit_csv(const std::vector<SlopeFit>& fits, const std::string& path);
void emit_csv(const AssumptionReport& report, const std::string& path);

std::vector<SweepRow> parse_sweep_csv(const std::string& path);

/// Full trace dump for the `run` subcommand: one record per
/// (quantity, k, n) carrying macro iterate, micro iterate and the
/// reference state.
void emit_trace_csv(const std::vector<std::pair<Quantity, PararealTrace>>& runs,
                    const std::string& path);

struct MomentComparison {
    double empirical;
    double reference;
    double std_error;
    double z;  // NaN when the standard error degenerates (sigma = 0)
};

struct McValidation {
    MomentComparison m_x;
    MomentComparison m_y;
    MomentComparison s_x;
    MomentComparison s_xy;
    MomentComparison s_y;
    bool passed;
    double eps;
};

/// z-scores of empirical vs reference moments; pass iff all |z| <= 5.
/// Components with a degenerate standard error (deterministic runs)
/// are compared against an O(dt) tolerance instead.
McValidation compare_moments(const EmpiricalMoments& emp,
                             const MeanState& ref_mean,
                             const CovarianceState& ref_cov, double dt);

/// Monte-Carlo bridge: simulate the SDE ensemble at one eps and
/// compare against the exact moment-ODE solution at time ens.T.
McValidation mc_validate(const ExperimentConfig& cfg,
                         const EnsembleConfig& ens, double eps,
                         unsigned threads = 1);

void emit_csv(const McValidation& validation, const std::string& path);

/// Exact moment-ODE solution at time T from the config's initial
/// moments. Exposed for validation oracles.
std::pair<MeanState, CovarianceState> moment_ode_solution(
    const OUParams& p, const std::array<double, 5>& initial_micro, double T);

}  // namespace mmpr
