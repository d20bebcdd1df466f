// Command-line front end for the micro-macro Parareal experiment harness.

#include <cstdint>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "mmpr/harness.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitAssumptions = 2;
constexpr int kExitInsufficientData = 3;
constexpr int kExitIo = 4;
constexpr int kExitNumerical = 5;

int run_check_assumptions(const std::string& config_path,
                          const std::string& out_path) {
    const mmpr::ExperimentConfig cfg =
        mmpr::load_experiment_config(config_path);
    const mmpr::OUParams p = cfg.ou_at(cfg.eps_grid.front());
    const mmpr::AssumptionReport report =
        mmpr::check_assumptions(p, cfg.eps_grid);
    mmpr::emit_csv(report, out_path);
    if (!report.all_satisfied) {
        std::cerr << "assumptions violated on the configured eps grid\n";
        return kExitAssumptions;
    }
    return kExitOk;
}

int run_sweep(const std::string& config_path, const std::string& out_path) {
    const mmpr::ExperimentConfig cfg =
        mmpr::load_experiment_config(config_path);
    const auto rows = mmpr::sweep_epsilon(cfg, &std::cerr);
    mmpr::emit_csv(rows, out_path);
    std::cout << "wrote " << rows.size() << " sweep rows to " << out_path
              << "\n";
    return kExitOk;
}

int run_fit_slopes(const std::string& in_path, double floor,
                   const std::string& out_path) {
    const auto rows = mmpr::parse_sweep_csv(in_path);
    const auto fits = mmpr::fit_slopes(rows, floor);
    mmpr::emit_csv(fits, out_path);
    std::cout << "wrote " << fits.size() << " slope fits to " << out_path
              << "\n";
    return kExitOk;
}

int run_single(const std::string& config_path, double eps,
               const std::string& out_path) {
    const mmpr::ExperimentConfig cfg =
        mmpr::load_experiment_config(config_path);
    const mmpr::OUParams p = cfg.ou_at(eps);
    const mmpr::AssumptionReport report = mmpr::check_assumptions(p, {eps});
    if (!report.all_satisfied) {
        std::cerr << "assumptions violated at eps = " << eps << "\n";
        return kExitAssumptions;
    }
    std::vector<std::pair<mmpr::Quantity, mmpr::PararealTrace>> runs;
    runs.emplace_back(mmpr::Quantity::mean,
                      mmpr::run_moment_parareal(cfg, eps, mmpr::Quantity::mean));
    runs.emplace_back(
        mmpr::Quantity::variance,
        mmpr::run_moment_parareal(cfg, eps, mmpr::Quantity::variance));
    mmpr::emit_trace_csv(runs, out_path);
    return kExitOk;
}

int run_mc_validate(const std::string& config_path, double eps,
                    std::size_t paths, double dt, const std::string& out_path) {
    const mmpr::ExperimentConfig cfg =
        mmpr::load_experiment_config(config_path);
    const mmpr::EnsembleConfig ens(paths, dt, cfg.T, cfg.seed);
    const mmpr::McValidation v = mmpr::mc_validate(cfg, ens, eps);
    mmpr::emit_csv(v, out_path);
    if (!v.passed) {
        std::cerr << "Monte-Carlo moments deviate from the moment-ODE "
                     "solution beyond 5 standard errors\n";
        return kExitNumerical;
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"micro-macro Parareal experiments for the slow-fast OU SDE"};
    app.require_subcommand(1);

    std::string config_path;
    std::string in_path;
    std::string out_path;
    double eps = 0.1;
    double floor = 1e-11;
    std::size_t paths = 100000;
    double dt = 1e-3;

    auto* check = app.add_subcommand(
        "check-assumptions", "verify model assumptions over the eps grid");
    check->add_option("--config", config_path, "experiment config (JSON)")
        ->required();
    check->add_option("--out", out_path, "output CSV")->required();

    auto* sweep =
        app.add_subcommand("sweep", "error-vs-eps sweep over both quantities");
    sweep->add_option("--config", config_path, "experiment config (JSON)")
        ->required();
    sweep->add_option("--out", out_path, "output CSV")->required();

    auto* fit = app.add_subcommand("fit-slopes",
                                   "log-log slope fits of a sweep CSV");
    fit->add_option("--in", in_path, "sweep CSV")->required();
    fit->add_option("--floor", floor, "ignore errors at or below this floor");
    fit->add_option("--out", out_path, "output CSV")->required();

    auto* single = app.add_subcommand(
        "run", "single-eps run with a full iterate trace dump");
    single->add_option("--config", config_path, "experiment config (JSON)")
        ->required();
    single->add_option("--eps", eps, "time-scale separation")->required();
    single->add_option("--out", out_path, "output CSV")->required();

    auto* mc = app.add_subcommand(
        "mc-validate", "Euler-Maruyama ensemble vs moment-ODE z-scores");
    mc->add_option("--config", config_path, "experiment config (JSON)")
        ->required();
    mc->add_option("--eps", eps, "time-scale separation")->required();
    mc->add_option("--paths", paths, "number of sample paths");
    mc->add_option("--dt", dt, "Euler-Maruyama step size");
    mc->add_option("--out", out_path, "output CSV")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (check->parsed()) return run_check_assumptions(config_path, out_path);
        if (sweep->parsed()) return run_sweep(config_path, out_path);
        if (fit->parsed()) return run_fit_slopes(in_path, floor, out_path);
        if (single->parsed()) return run_single(config_path, eps, out_path);
        if (mc->parsed())
            return run_mc_validate(config_path, eps, paths, dt, out_path);
    } catch (const mmpr::AssumptionViolation& err) {
        std::cerr << "error: " << err.what() << "\n";
        return kExitAssumptions;
    } catch (const mmpr::AssumptionError& err) {
        std::cerr << "error: " << err.what() << "\n";
        return kExitAssumptions;
    } catch (const mmpr::InsufficientDataError& err) {
        std::cerr << "error: " << err.what() << "\n";
        return kExitInsufficientData;
    } catch (const mmpr::IoError& err) {
        std::cerr << "error: " << err.what() << "\n";
        return kExitIo;
    } catch (const mmpr::Error& err) {
        std::cerr << "error: " << err.what() << "\n";
        return kExitNumerical;
    }
    return kExitOk;
}
