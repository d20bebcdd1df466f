#include "mmpr/harness.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "mmpr/csv.hpp"

namespace mmpr {

using nlohmann::json;

std::string to_string(Quantity q) {
    return q == Quantity::mean ? "mean" : "variance";
}

std::string to_string(ErrorLevel level) {
    return level == ErrorLevel::macro ? "macro" : "micro";
}

Quantity quantity_from_string(const std::string& s) {
    if (s == "mean") return Quantity::mean;
    if (s == "variance") return Quantity::variance;
    throw IoError("unknown quantity '" + s + "'");
}

ErrorLevel level_from_string(const std::string& s) {
    if (s == "macro") return ErrorLevel::macro;
    if (s == "micro") return ErrorLevel::micro;
    throw IoError("unknown error level '" + s + "'");
}

std::vector<double> default_eps_grid() {
    constexpr int kPoints = 13;
    std::vector<double> grid(kPoints);
    for (int i = 0; i < kPoints; ++i) {
        // Geometric from 1e-5 to 1e-2.
        grid[i] = std::pow(10.0, -5.0 + 3.0 * i / (kPoints - 1.0));
    }
    return grid;
}

OUParams ExperimentConfig::ou_at(double eps) const {
    return OUParams(alpha, beta, gamma, zeta, sigma, eps);
}

void ExperimentConfig::validate() const {
    if (eps_grid.empty()) {
        throw DomainError("eps_grid must be nonempty");
    }
    for (double eps : eps_grid) {
        if (!(eps > 0.0 && eps < 1.0)) {
            throw DomainError("eps_grid values must lie in (0,1)");
        }
    }
    if (!std::is_sorted(eps_grid.begin(), eps_grid.end())) {
        throw DomainError("eps_grid must be sorted ascending");
    }
    if (N < 1) {
        throw DomainError("N must be at least 1");
    }
    if (!(T > 0.0)) {
        throw DomainError("T must be positive");
    }
    for (double v : initial_micro) {
        if (!std::isfinite(v)) {
            throw DomainError("initial_micro entries must be finite");
        }
    }
    // The covariance part must be a valid covariance on input.
    CovarianceState(initial_micro[2], initial_micro[3], initial_micro[4]);
}

namespace {

double require_number(const json& j, const std::string& key) {
    if (!j.is_number()) {
        throw IoError("config key '" + key + "' must be a number");
    }
    return j.get<double>();
}

std::size_t require_count(const json& j, const std::string& key) {
    if (!j.is_number_unsigned()) {
        throw IoError("config key '" + key +
                      "' must be a nonnegative integer");
    }
    return j.get<std::size_t>();
}

}  // namespace

ExperimentConfig parse_experiment_config(const std::string& json_text) {
    json root;
    try {
        root = json::parse(json_text);
    } catch (const json::parse_error& err) {
        throw IoError(std::string("config is not valid JSON: ") + err.what());
    }
    if (!root.is_object()) {
        throw IoError("config must be a JSON object");
    }

    ExperimentConfig cfg;
    for (const auto& [key, value] : root.items()) {
        if (key == "ou") {
            if (!value.is_object()) {
                throw IoError("config key 'ou' must be an object");
            }
            for (const auto& [ou_key, ou_value] : value.items()) {
                if (ou_key == "alpha") cfg.alpha = require_number(ou_value, ou_key);
                else if (ou_key == "beta") cfg.beta = require_number(ou_value, ou_key);
                else if (ou_key == "gamma") cfg.gamma = require_number(ou_value, ou_key);
                else if (ou_key == "zeta") cfg.zeta = require_number(ou_value, ou_key);
                else if (ou_key == "sigma") cfg.sigma = require_number(ou_value, ou_key);
                else throw IoError("unknown config key 'ou." + ou_key + "'");
            }
        } else if (key == "eps_grid") {
            if (!value.is_array() || value.empty()) {
                throw IoError("config key 'eps_grid' must be a nonempty array");
            }
            cfg.eps_grid.clear();
            for (const auto& entry : value) {
                cfg.eps_grid.push_back(require_number(entry, "eps_grid[]"));
            }
        } else if (key == "T") {
            cfg.T = require_number(value, key);
        } else if (key == "N") {
            cfg.N = require_count(value, key);
        } else if (key == "K") {
            cfg.K = require_count(value, key);
        } else if (key == "lifting") {
            if (!value.is_string()) {
                throw IoError("config key 'lifting' must be a string");
            }
            const std::string name = value.get<std::string>();
            if (name == "initial_condition") {
                cfg.lifting = LiftingVariant::initial_condition;
            } else if (name == "equilibrium") {
                cfg.lifting = LiftingVariant::equilibrium;
            } else {
                throw IoError("unknown lifting variant '" + name + "'");
            }
        } else if (key == "initial_micro") {
            if (!value.is_array() || value.size() != 5) {
                throw IoError(
                    "config key 'initial_micro' must be an array of 5 numbers");
            }
            for (std::size_t i = 0; i < 5; ++i) {
                cfg.initial_micro[i] = require_number(value[i], "initial_micro[]");
            }
        } else if (key == "seed") {
            if (!value.is_number_unsigned()) {
                throw IoError("config key 'seed' must be a nonnegative integer");
            }
            cfg.seed = value.get<std::uint64_t>();
        } else {
            throw IoError("unknown config key '" + key + "'");
        }
    }
    cfg.validate();
    return cfg;
}

ExperimentConfig load_experiment_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open config '" + path + "'");
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_experiment_config(buffer.str());
}

PararealTrace run_moment_parareal(const ExperimentConfig& cfg, double eps,
                                  Quantity quantity) {
    const OUParams p = cfg.ou_at(eps);
    const double dt = cfg.T / static_cast<double>(cfg.N);

    AffineSystem micro = (quantity == Quantity::mean)
                             ? AffineSystem::homogeneous(
                                   assemble_full_matrix(mean_system(p)))
                             : covariance_system(p, eps);
    AffineSystem macro = (quantity == Quantity::mean)
                             ? reduced_mean_model(p).as_affine()
                             : reduced_variance_model(p).as_affine();

    Vector u0 = (quantity == Quantity::mean)
                    ? Vector{cfg.initial_micro[0], cfg.initial_micro[1]}
                    : Vector{cfg.initial_micro[2], cfg.initial_micro[3],
                             cfg.initial_micro[4]};
    SlowFastPartition part =
        SlowFastPartition::leading_slow(1, micro.dimension());

    LiftingSpec lifting = LiftingSpec::from_initial(Vector::zeros(0));
    if (cfg.lifting == LiftingVariant::initial_condition) {
        Vector fast0(part.fast_count());
        for (std::size_t i = 0; i < part.fast_count(); ++i) {
            fast0[i] = u0[part.fast_indices()[i]];
        }
        lifting = LiftingSpec::from_initial(std::move(fast0));
    } else {
        // Conditional-equilibrium map fast = A^{-1} q X.
        Matrix map(part.fast_count(), 1);
        if (quantity == Quantity::mean) {
            const MultiscaleLinearSystem sys = mean_system(p);
            const Vector aq = solve(sys.A(), sys.q());
            map(0, 0) = aq[0];
        } else {
            const Vector aq = solve(a_sigma(p, eps), Vector{p.gamma, 0.0});
            map(0, 0) = aq[0];
            map(1, 0) = aq[1];
        }
        lifting = LiftingSpec::equilibrium(std::move(map));
    }

    const PararealConfig run_cfg(cfg.T, cfg.N, cfg.K, std::move(lifting),
                                 std::move(part));
    const PropagatorSpec fine(std::move(micro), dt);
    const PropagatorSpec coarse(std::move(macro), dt);
    const Vector X0{u0[0]};
    return run_micro_macro(fine, coarse, run_cfg, u0, X0);
}

std::vector<SweepRow> sweep_epsilon(const ExperimentConfig& cfg,
                                    std::ostream* warn) {
    cfg.validate();
    const OUParams probe = cfg.ou_at(cfg.eps_grid.front());
    const AssumptionReport report = check_assumptions(probe, cfg.eps_grid);
    if (!report.all_satisfied) {
        throw AssumptionViolation(
            "model assumptions violated on the eps grid; no sweep output",
            report);
    }

    const double dt = cfg.T / static_cast<double>(cfg.N);
    std::vector<SweepRow> rows;
    for (std::size_t i = 0; i < cfg.eps_grid.size(); ++i) {
        const double eps = cfg.eps_grid[i];
        if (warn) {
            const double mu_mean = -cfg.zeta;
            const double mu_var = report.min_real_eig_a_sigma[i];
            if (!clears_boundary_layer(dt, eps, mu_mean) ||
                !clears_boundary_layer(dt, eps, mu_var)) {
                (*warn) << "warning: dt = " << dt
                        << " does not clear the boundary layer at eps = "
                        << eps << "; convergence orders are not guaranteed\n";
            }
        }
        for (Quantity quantity : {Quantity::mean, Quantity::variance}) {
            const SlowFastPartition part = SlowFastPartition::leading_slow(
                1, quantity == Quantity::mean ? 2 : 3);
            const PararealTrace trace = run_moment_parareal(cfg, eps, quantity);
            const ErrorSummary summary = error_summary(trace, part);
            for (std::size_t k = 0; k <= cfg.K; ++k) {
                rows.push_back(SweepRow{eps, quantity, k, summary.macro_sup[k],
                                        summary.micro_sup[k]});
            }
        }
    }
    std::sort(rows.begin(), rows.end(), [](const SweepRow& a, const SweepRow& b) {
        if (a.eps != b.eps) return a.eps < b.eps;
        if (a.quantity != b.quantity) return a.quantity < b.quantity;
        return a.k < b.k;
    });
    return rows;
}

std::vector<SlopeFit> fit_slopes(const std::vector<SweepRow>& rows,
                                 double floor) {
    std::map<std::tuple<Quantity, ErrorLevel, std::size_t>,
             std::vector<std::pair<double, double>>>
        groups;
    for (const SweepRow& row : rows) {
        groups[{row.quantity, ErrorLevel::macro, row.k}].emplace_back(
            row.eps, row.macro_sup);
        groups[{row.quantity, ErrorLevel::micro, row.k}].emplace_back(
            row.eps, row.micro_sup);
    }

    std::vector<SlopeFit> fits;
    for (const auto& [key, points] : groups) {
        const auto& [quantity, level, k] = key;
        std::vector<std::pair<double, double>> usable;
        for (const auto& [eps, err] : points) {
            if (err > floor) usable.emplace_back(eps, err);
        }
        if (usable.size() < 3) {
            throw InsufficientDataError(
                "group " + to_string(quantity) + "/" + to_string(level) +
                " k=" + std::to_string(k) + " has " +
                std::to_string(usable.size()) + " points above floor " +
                format_double(floor) + " (need 3)");
        }
        double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
        double lo = usable.front().first, hi = usable.front().first;
        for (const auto& [eps, err] : usable) {
            const double x = std::log(eps);
            const double y = std::log(err);
            sx += x;
            sy += y;
            sxx += x * x;
            sxy += x * y;
            lo = std::min(lo, eps);
            hi = std::max(hi, eps);
        }
        const double n = static_cast<double>(usable.size());
        const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
        const double intercept = (sy - slope * sx) / n;
        fits.push_back(SlopeFit{quantity, level, k, slope, intercept, lo, hi,
                                usable.size()});
    }
    std::sort(fits.begin(), fits.end(), [](const SlopeFit& a, const SlopeFit& b) {
        if (a.quantity != b.quantity) return a.quantity < b.quantity;
        if (a.level != b.level) return a.level < b.level;
        return a.k < b.k;
    });
    return fits;
}

namespace {

std::ofstream open_for_write(const std::string& path) {
    std::ofstream out(path);
    if (!out) {
        throw IoError("cannot open '" + path + "' for writing");
    }
    return out;
}

}  // namespace

void emit_csv(const std::vector<SweepRow>& rows, const std::string& path) {
    auto out = open_for_write(path);
    out << "eps,quantity,k,macro_sup,micro_sup\n";
    for (const SweepRow& row : rows) {
        out << csv_join({format_double(row.eps), to_string(row.quantity),
                         std::to_string(row.k), format_double(row.macro_sup),
                         format_double(row.micro_sup)})
            << "\n";
    }
    if (!out) throw IoError("failed writing '" + path + "'");
}

void emit_csv(const std::vector<SlopeFit>& fits, const std::string& path) {
    auto out = open_for_write(path);
    out << "quantity,level,k,slope,intercept,eps_lo,eps_hi,points_used\n";
    for (const SlopeFit& fit : fits) {
        out << csv_join({to_string(fit.quantity), to_string(fit.level),
                         std::to_string(fit.k), format_double(fit.slope),
                         format_double(fit.intercept),
                         format_double(fit.eps_lo), format_double(fit.eps_hi),
                         std::to_string(fit.points_used)})
            << "\n";
    }
    if (!out) throw IoError("failed writing '" + path + "'");
}

void emit_csv(const AssumptionReport& report, const std::string& path) {
    auto out = open_for_write(path);
    out << "eps,min_real_eig_a_sigma,lambda_sigma_eps\n";
    for (std::size_t i = 0; i < report.eps_grid.size(); ++i) {
        out << csv_join({format_double(report.eps_grid[i]),
                         format_double(report.min_real_eig_a_sigma[i]),
                         format_double(report.lambda_sigma_eps[i])})
            << "\n";
    }
    out << "# lambda_sigma=" << format_double(report.lambda_sigma) << "\n";
    if (!out) throw IoError("failed writing '" + path + "'");
}

std::vector<SweepRow> parse_sweep_csv(const std::string& path) {
    const CsvDocument doc = read_csv_file(path);
    const std::vector<std::string> expected = {"eps", "quantity", "k",
                                               "macro_sup", "micro_sup"};
    if (doc.header != expected) {
        throw IoError("'" + path + "' is not a sweep CSV");
    }
    std::vector<SweepRow> rows;
    for (const auto& fields : doc.rows) {
        if (fields.size() != 5) {
            throw IoError("malformed sweep row in '" + path + "'");
        }
        rows.push_back(SweepRow{
            parse_double(fields[0]), quantity_from_string(fields[1]),
            static_cast<std::size_t>(std::stoull(fields[2])),
            parse_double(fields[3]), parse_double(fields[4])});
    }
    return rows;
}

void emit_trace_csv(const std::vector<std::pair<Quantity, PararealTrace>>& runs,
                    const std::string& path) {
    auto out = open_for_write(path);
    out << "quantity,k,n,macro,micro_0,micro_1,micro_2,ref_0,ref_1,ref_2\n";
    for (const auto& [quantity, trace] : runs) {
        const std::size_t dim = trace.reference.front().size();
        for (std::size_t k = 0; k <= trace.iterations(); ++k) {
            for (std::size_t n = 0; n <= trace.intervals(); ++n) {
                std::vector<std::string> fields = {
                    to_string(quantity), std::to_string(k), std::to_string(n),
                    format_double(trace.macro[k][n][0])};
                for (std::size_t i = 0; i < 3; ++i) {
                    fields.push_back(
                        i < dim ? format_double(trace.micro[k][n][i]) : "");
                }
                for (std::size_t i = 0; i < 3; ++i) {
                    fields.push_back(
                        i < dim ? format_double(trace.reference[n][i]) : "");
                }
                out << csv_join(fields) << "\n";
            }
        }
    }
    if (!out) throw IoError("failed writing '" + path + "'");
}

std::pair<MeanState, CovarianceState> moment_ode_solution(
    const OUParams& p, const std::array<double, 5>& initial_micro, double T) {
    const AffineSystem mean_ode =
        AffineSystem::homogeneous(assemble_full_matrix(mean_system(p)));
    const Vector mean_T =
        exact_flow(mean_ode, Vector{initial_micro[0], initial_micro[1]}, T);

    const AffineSystem cov_ode = covariance_system(p);
    const Vector cov_T = exact_flow(
        cov_ode,
        Vector{initial_micro[2], initial_micro[3], initial_micro[4]}, T);

    return {MeanState(mean_T[0], mean_T[1]),
            CovarianceState(cov_T[0], cov_T[1], cov_T[2])};
}

namespace {

MomentComparison compare_one(double empirical, double reference,
                             double std_error, double dt, bool& all_pass) {
    MomentComparison cmp{empirical, reference, std_error,
                         std::numeric_limits<double>::quiet_NaN()};
    // A standard error at roundoff scale means the ensemble was
    // deterministic; a z-score against it would be meaningless.
    const double scale =
        std::max({1.0, std::abs(empirical), std::abs(reference)});
    if (std_error > 1e-12 * scale) {
        cmp.z = (empirical - reference) / std_error;
        all_pass = all_pass && std::abs(cmp.z) <= 5.0;
    } else {
        // Deterministic run: the only deviation is the O(dt) weak bias
        // of the explicit scheme.
        const double tol = 100.0 * dt * (1.0 + std::abs(reference));
        all_pass = all_pass && std::abs(empirical - reference) <= tol;
    }
    return cmp;
}

}  // namespace

McValidation compare_moments(const EmpiricalMoments& emp,
                             const MeanState& ref_mean,
                             const CovarianceState& ref_cov, double dt) {
    bool pass = true;
    McValidation v{
        compare_one(emp.mean.m_x, ref_mean.m_x, emp.std_errors.m_x, dt, pass),
        compare_one(emp.mean.m_y, ref_mean.m_y, emp.std_errors.m_y, dt, pass),
        compare_one(emp.cov.s_x, ref_cov.s_x, emp.std_errors.s_x, dt, pass),
        compare_one(emp.cov.s_xy, ref_cov.s_xy, emp.std_errors.s_xy, dt, pass),
        compare_one(emp.cov.s_y, ref_cov.s_y, emp.std_errors.s_y, dt, pass),
        false,
        0.0};
    v.passed = pass;
    return v;
}

McValidation mc_validate(const ExperimentConfig& cfg, const EnsembleConfig& ens,
                         double eps, unsigned threads) {
    const OUParams p = cfg.ou_at(eps);
    const InitialDistribution init{
        MeanState(cfg.initial_micro[0], cfg.initial_micro[1]),
        CovarianceState(cfg.initial_micro[2], cfg.initial_micro[3],
                        cfg.initial_micro[4])};
    const EmpiricalMoments moments = simulate_ensemble(p, ens, init, threads);
    const auto [ref_mean, ref_cov] =
        moment_ode_solution(p, cfg.initial_micro, ens.T);
    McValidation v = compare_moments(moments, ref_mean, ref_cov, ens.dt);
    v.eps = eps;
    return v;
}

void emit_csv(const McValidation& v, const std::string& path) {
    auto out = open_for_write(path);
    out << "component,empirical,reference,std_error,z\n";
    const std::pair<std::string, const MomentComparison*> rows[] = {
        {"m_x", &v.m_x}, {"m_y", &v.m_y}, {"s_x", &v.s_x},
        {"s_xy", &v.s_xy}, {"s_y", &v.s_y}};
    for (const auto& [name, cmp] : rows) {
        out << csv_join({name, format_double(cmp->empirical),
                         format_double(cmp->reference),
                         format_double(cmp->std_error), format_double(cmp->z)})
            << "\n";
    }
    out << "# passed=" << (v.passed ? "true" : "false") << "\n";
    if (!out) throw IoError("failed writing '" + path + "'");
}

}  // namespace mmpr
