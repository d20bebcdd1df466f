// Python module exposing the core operations of the micro-macro
// Parareal library. Matrices and vectors cross the boundary as numpy
// arrays.

#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "mmpr/harness.hpp"

namespace py = pybind11;
using namespace pybind11::literals;

namespace {

using DoubleArray = py::array_t<double, py::array::c_style | py::array::forcecast>;

mmpr::Matrix to_matrix(const DoubleArray& arr) {
    if (arr.ndim() != 2) {
        throw mmpr::DimensionError("expected a 2-d array");
    }
    const auto view = arr.unchecked<2>();
    const auto rows = static_cast<std::size_t>(view.shape(0));
    const auto cols = static_cast<std::size_t>(view.shape(1));
    std::vector<double> data(rows * cols);
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < cols; ++j) {
            data[i * cols + j] = view(static_cast<py::ssize_t>(i),
                                      static_cast<py::ssize_t>(j));
        }
    }
    return mmpr::Matrix(rows, cols, std::move(data));
}

mmpr::Vector to_vector(const DoubleArray& arr) {
    if (arr.ndim() != 1) {
        throw mmpr::DimensionError("expected a 1-d array");
    }
    const auto view = arr.unchecked<1>();
    std::vector<double> data(static_cast<std::size_t>(view.shape(0)));
    for (py::ssize_t i = 0; i < view.shape(0); ++i) {
        data[static_cast<std::size_t>(i)] = view(i);
    }
    return mmpr::Vector(std::move(data));
}

py::array_t<double> from_matrix(const mmpr::Matrix& m) {
    py::array_t<double> out({m.rows(), m.cols()});
    auto view = out.mutable_unchecked<2>();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            view(static_cast<py::ssize_t>(i), static_cast<py::ssize_t>(j)) =
                m(i, j);
        }
    }
    return out;
}

py::array_t<double> from_vector(const mmpr::Vector& v) {
    py::array_t<double> out(static_cast<py::ssize_t>(v.size()));
    auto view = out.mutable_unchecked<1>();
    for (std::size_t i = 0; i < v.size(); ++i) {
        view(static_cast<py::ssize_t>(i)) = v[i];
    }
    return out;
}

py::dict trace_to_dict(const mmpr::PararealTrace& trace) {
    const std::size_t k_count = trace.iterations() + 1;
    const std::size_t n_count = trace.intervals() + 1;
    const std::size_t dim = trace.reference.front().size();
    const std::size_t slow = trace.macro[0][0].size();

    py::array_t<double> macro({k_count, n_count, slow});
    py::array_t<double> micro({k_count, n_count, dim});
    py::array_t<double> reference({n_count, dim});
    auto macro_view = macro.mutable_unchecked<3>();
    auto micro_view = micro.mutable_unchecked<3>();
    auto ref_view = reference.mutable_unchecked<2>();
    for (std::size_t k = 0; k < k_count; ++k) {
        for (std::size_t n = 0; n < n_count; ++n) {
            for (std::size_t i = 0; i < slow; ++i) {
                macro_view(k, n, i) = trace.macro[k][n][i];
            }
            for (std::size_t i = 0; i < dim; ++i) {
                micro_view(k, n, i) = trace.micro[k][n][i];
            }
        }
    }
    for (std::size_t n = 0; n < n_count; ++n) {
        for (std::size_t i = 0; i < dim; ++i) {
            ref_view(n, i) = trace.reference[n][i];
        }
    }
    py::dict out;
    out["macro"] = macro;
    out["micro"] = micro;
    out["reference"] = reference;
    return out;
}

py::dict comparison_to_dict(const mmpr::MomentComparison& cmp) {
    py::dict out;
    out["empirical"] = cmp.empirical;
    out["reference"] = cmp.reference;
    out["std_error"] = cmp.std_error;
    out["z"] = cmp.z;
    return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "micro-macro Parareal for the slow-fast OU moment equations";

    py::register_exception<mmpr::Error>(m, "MmprError", PyExc_RuntimeError);

    // --- small linear algebra
    m.def(
        "mat_exp",
        [](const DoubleArray& mat, double t) {
            return from_matrix(mmpr::mat_exp(to_matrix(mat), t));
        },
        "m"_a, "t"_a, "Matrix exponential e^{m t}.");
    m.def(
        "solve",
        [](const DoubleArray& mat, const DoubleArray& rhs) {
            return from_vector(mmpr::solve(to_matrix(mat), to_vector(rhs)));
        },
        "m"_a, "v"_a, "Solve m w = v.");
    m.def(
        "eigenvalues",
        [](const DoubleArray& mat) {
            return mmpr::eigenvalues(to_matrix(mat));
        },
        "m"_a, "Closed-form eigenvalues (sizes up to 3).");

    // --- multiscale systems
    m.def("boundary_layer_time", &mmpr::boundary_layer_time, "eps"_a,
          "mu_minus"_a);
    m.def(
        "exact_flow",
        [](const DoubleArray& mat, const DoubleArray& b, const DoubleArray& u,
           double dt) {
            const mmpr::AffineSystem sys(to_matrix(mat), to_vector(b));
            return from_vector(mmpr::exact_flow(sys, to_vector(u), dt));
        },
        "m"_a, "b"_a, "u"_a, "dt"_a,
        "Exact flow of du/dt = m u + b over dt.");

    // --- OU model
    py::class_<mmpr::OUParams>(m, "OUParams")
        .def(py::init<double, double, double, double, double, double>(),
             "alpha"_a, "beta"_a, "gamma"_a, "zeta"_a, "sigma"_a, "eps"_a)
        .def_readonly("alpha", &mmpr::OUParams::alpha)
        .def_readonly("beta", &mmpr::OUParams::beta)
        .def_readonly("gamma", &mmpr::OUParams::gamma)
        .def_readonly("zeta", &mmpr::OUParams::zeta)
        .def_readonly("sigma", &mmpr::OUParams::sigma)
        .def_readonly("eps", &mmpr::OUParams::eps);

    py::class_<mmpr::AssumptionReport>(m, "AssumptionReport")
        .def_readonly("eps_grid", &mmpr::AssumptionReport::eps_grid)
        .def_readonly("min_real_eig_a_sigma",
                      &mmpr::AssumptionReport::min_real_eig_a_sigma)
        .def_readonly("lambda_sigma_eps",
                      &mmpr::AssumptionReport::lambda_sigma_eps)
        .def_readonly("lambda_sigma", &mmpr::AssumptionReport::lambda_sigma)
        .def_readonly("all_satisfied", &mmpr::AssumptionReport::all_satisfied);

    m.def(
        "mean_full_matrix",
        [](const mmpr::OUParams& p) {
            return from_matrix(mmpr::assemble_full_matrix(mmpr::mean_system(p)));
        },
        "p"_a, "Full 2x2 matrix of the mean moment ODE.");
    m.def(
        "covariance_system",
        [](const mmpr::OUParams& p, double eps) {
            const mmpr::AffineSystem sys = mmpr::covariance_system(p, eps);
            return py::make_tuple(from_matrix(sys.M), from_vector(sys.b));
        },
        "p"_a, "eps"_a, "Pair (B_sigma, b_sigma) of the covariance ODE.");
    m.def(
        "a_sigma",
        [](const mmpr::OUParams& p, double eps) {
            return from_matrix(mmpr::a_sigma(p, eps));
        },
        "p"_a, "eps"_a);
    m.def("lambda_sigma", &mmpr::lambda_sigma, "p"_a);
    m.def("lambda_sigma_eps", &mmpr::lambda_sigma_eps, "p"_a, "eps"_a);
    m.def("delta_lambda", &mmpr::delta_lambda, "p"_a, "eps"_a);
    m.def(
        "b_sigma_inverse_schur",
        [](const mmpr::OUParams& p, double eps) {
            return from_matrix(mmpr::b_sigma_inverse_schur(p, eps));
        },
        "p"_a, "eps"_a);
    m.def(
        "steady_state_covariance",
        [](const mmpr::OUParams& p, double eps) {
            const mmpr::CovarianceState s = mmpr::steady_state_covariance(p, eps);
            return py::make_tuple(s.s_x, s.s_xy, s.s_y);
        },
        "p"_a, "eps"_a);
    m.def("check_assumptions", &mmpr::check_assumptions, "p"_a, "eps_grid"_a);

    // --- harness
    py::enum_<mmpr::Quantity>(m, "Quantity")
        .value("mean", mmpr::Quantity::mean)
        .value("variance", mmpr::Quantity::variance);
    py::enum_<mmpr::ErrorLevel>(m, "ErrorLevel")
        .value("macro", mmpr::ErrorLevel::macro)
        .value("micro", mmpr::ErrorLevel::micro);

    py::class_<mmpr::SweepRow>(m, "SweepRow")
        .def_readonly("eps", &mmpr::SweepRow::eps)
        .def_readonly("quantity", &mmpr::SweepRow::quantity)
        .def_readonly("k", &mmpr::SweepRow::k)
        .def_readonly("macro_sup", &mmpr::SweepRow::macro_sup)
        .def_readonly("micro_sup", &mmpr::SweepRow::micro_sup);

    py::class_<mmpr::SlopeFit>(m, "SlopeFit")
        .def_readonly("quantity", &mmpr::SlopeFit::quantity)
        .def_readonly("level", &mmpr::SlopeFit::level)
        .def_readonly("k", &mmpr::SlopeFit::k)
        .def_readonly("slope", &mmpr::SlopeFit::slope)
        .def_readonly("intercept", &mmpr::SlopeFit::intercept)
        .def_readonly("eps_lo", &mmpr::SlopeFit::eps_lo)
        .def_readonly("eps_hi", &mmpr::SlopeFit::eps_hi)
        .def_readonly("points_used", &mmpr::SlopeFit::points_used);

    m.def("config_from_json", &mmpr::parse_experiment_config, "json_text"_a,
          "Parse an experiment config from its JSON text.");
    m.def("default_eps_grid", &mmpr::default_eps_grid);

    py::class_<mmpr::ExperimentConfig>(m, "ExperimentConfig")
        .def(py::init<>())
        .def_readwrite("alpha", &mmpr::ExperimentConfig::alpha)
        .def_readwrite("beta", &mmpr::ExperimentConfig::beta)
        .def_readwrite("gamma", &mmpr::ExperimentConfig::gamma)
        .def_readwrite("zeta", &mmpr::ExperimentConfig::zeta)
        .def_readwrite("sigma", &mmpr::ExperimentConfig::sigma)
        .def_readwrite("eps_grid", &mmpr::ExperimentConfig::eps_grid)
        .def_readwrite("T", &mmpr::ExperimentConfig::T)
        .def_readwrite("N", &mmpr::ExperimentConfig::N)
        .def_readwrite("K", &mmpr::ExperimentConfig::K)
        .def_readwrite("initial_micro", &mmpr::ExperimentConfig::initial_micro)
        .def_readwrite("seed", &mmpr::ExperimentConfig::seed);

    m.def(
        "run_moment_parareal",
        [](const mmpr::ExperimentConfig& cfg, double eps, mmpr::Quantity q) {
            return trace_to_dict(mmpr::run_moment_parareal(cfg, eps, q));
        },
        "cfg"_a, "eps"_a, "quantity"_a,
        "All Parareal iterates and the reference as numpy arrays.");
    m.def("sweep_epsilon",
          [](const mmpr::ExperimentConfig& cfg) {
              return mmpr::sweep_epsilon(cfg, nullptr);
          },
          "cfg"_a);
    m.def("fit_slopes", &mmpr::fit_slopes, "rows"_a, "floor"_a = 1e-11);

    // --- sampler bridge
    m.def(
        "simulate_ensemble",
        [](const mmpr::OUParams& p, std::size_t paths, double dt, double T,
           std::uint64_t seed, std::pair<double, double> init_mean,
           std::tuple<double, double, double> init_cov) {
            const mmpr::EnsembleConfig cfg(paths, dt, T, seed);
            const mmpr::InitialDistribution init{
                mmpr::MeanState(init_mean.first, init_mean.second),
                mmpr::CovarianceState(std::get<0>(init_cov),
                                      std::get<1>(init_cov),
                                      std::get<2>(init_cov))};
            const mmpr::EmpiricalMoments out =
                mmpr::simulate_ensemble(p, cfg, init);
            py::dict d;
            d["mean"] = py::make_tuple(out.mean.m_x, out.mean.m_y);
            d["cov"] = py::make_tuple(out.cov.s_x, out.cov.s_xy, out.cov.s_y);
            d["std_errors"] = py::make_tuple(
                out.std_errors.m_x, out.std_errors.m_y, out.std_errors.s_x,
                out.std_errors.s_xy, out.std_errors.s_y);
            return d;
        },
        "p"_a, "paths"_a, "dt"_a, "T"_a, "seed"_a, "init_mean"_a, "init_cov"_a);

    m.def(
        "mc_validate",
        [](const mmpr::ExperimentConfig& cfg, std::size_t paths, double dt,
           double T, double eps) {
            const mmpr::EnsembleConfig ens(paths, dt, T, cfg.seed);
            const mmpr::McValidation v = mmpr::mc_validate(cfg, ens, eps);
            py::dict out;
            out["m_x"] = comparison_to_dict(v.m_x);
            out["m_y"] = comparison_to_dict(v.m_y);
            out["s_x"] = comparison_to_dict(v.s_x);
            out["s_xy"] = comparison_to_dict(v.s_xy);
            out["s_y"] = comparison_to_dict(v.s_y);
            out["passed"] = v.passed;
            return out;
        },
        "cfg"_a, "paths"_a, "dt"_a, "T"_a, "eps"_a);
}
