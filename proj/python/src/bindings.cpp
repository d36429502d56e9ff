#include <optional>
#include <string>
#include <vector>

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "lpsparse/baselines.hpp"
#include "lpsparse/csv.hpp"
#include "lpsparse/datagen.hpp"
#include "lpsparse/errors.hpp"
#include "lpsparse/estimator.hpp"
#include "lpsparse/harness.hpp"

namespace py = pybind11;
using namespace lpsparse;

namespace {

Method method_from(const std::string& tag) {
    const auto m = parse_method(tag);
    if (!m) throw DomainError("unknown method '" + tag + "'");
    return *m;
}

Generator generator_from(const std::string& tag) {
    const auto g = parse_generator(tag);
    if (!g) throw DomainError("unknown generator '" + tag + "'");
    return *g;
}

EstimatorConfig make_config(double epsilon, std::optional<double> lambda) {
    EstimatorConfig c;
    c.epsilon = epsilon;
    c.lambda_override = lambda;
    return c;
}

py::dict problem_dict(const Problem& p) {
    py::dict d;
    d["A"] = p.a;
    d["y"] = p.y;
    d["x_true"] = p.x_true;
    d["support"] = p.true_support;
    d["noise"] = p.noise;
    d["noise_var"] = p.noise_var;
    d["seed"] = p.seed;
    return d;
}

py::dict estimate_dict(const SparseEstimate& e) {
    py::dict d;
    d["x"] = e.x;
    d["support"] = e.support;
    d["method"] = std::string(to_string(e.method));
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Sparse estimation by LSE, soft-threshold LP and support-restricted re-LSE";

    auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
    py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
    auto numerical = py::register_exception<NumericalError>(m, "NumericalError", base.ptr());
    py::register_exception<RankDeficientError>(m, "RankDeficientError", numerical.ptr());
    py::register_exception<ConvergenceError>(m, "ConvergenceError", numerical.ptr());
    py::register_exception<ParseError>(m, "ParseError", base.ptr());

    m.def("compute_lambda", &compute_lambda, py::arg("n"), py::arg("n_obs"), py::arg("epsilon"));
    m.def("soft_threshold", &soft_threshold, py::arg("x_ls"), py::arg("lambda_"));
    m.def("detect_support", &detect_support, py::arg("x_lp"), py::arg("cushion") = kSupportCushion);
    m.def(
        "solution_path",
        [](const Vector& x_ls, const std::vector<double>& grid) { return solution_path(x_ls, grid); },
        py::arg("x_ls"), py::arg("lambda_grid"));

    m.def(
        "estimate",
        [](const Matrix& a, const Vector& y, double epsilon, std::optional<double> lambda) {
            const PipelineTrace t = estimate(a, y, make_config(epsilon, lambda));
            py::dict d;
            d["x_ls"] = t.x_ls;
            d["lambda"] = t.lambda;
            d["x_lp"] = t.x_lp;
            d["support"] = t.support_lp;
            d["x_rels"] = t.x_rels;
            d["rank_warning"] = t.rank_warning;
            return d;
        },
        py::arg("A"), py::arg("y"), py::arg("epsilon") = 1.0 / 3.0, py::arg("lambda_") = py::none(),
        "Run the three-step estimator and return the full trace. Supports are 0-based.");

    m.def(
        "oracle_lse",
        [](const Matrix& a, const Vector& y, const Support& s) { return estimate_dict(oracle_lse(a, y, s)); },
        py::arg("A"), py::arg("y"), py::arg("support"));
    m.def(
        "lasso",
        [](const Matrix& a, const Vector& y, double reg, std::optional<Vector> weights, double tol,
           long long max_iter) {
            LassoConfig c;
            c.reg_param = reg;
            c.weights = std::move(weights);
            c.tol = tol;
            c.max_iter = max_iter;
            return estimate_dict(lasso_cd(a, y, c));
        },
        py::arg("A"), py::arg("y"), py::arg("reg_param"), py::arg("weights") = py::none(),
        py::arg("tol") = 1e-10, py::arg("max_iter") = 100000);
    m.def(
        "adalasso",
        [](const Matrix& a, const Vector& y, double gamma) { return estimate_dict(adalasso(a, y, gamma, a.rows())); },
        py::arg("A"), py::arg("y"), py::arg("gamma") = 1.0);

    m.def(
        "generate", [](const std::string& gen, Index n_obs, std::uint64_t seed) {
            return problem_dict(generate(generator_from(gen), n_obs, seed));
        },
        py::arg("generator"), py::arg("n_obs"), py::arg("seed"));
    m.def(
        "sinusoid_matrix",
        [](const std::vector<double>& freqs, double t_s, Index n) {
            return build_sinusoid_matrix(SinusoidDict(freqs, t_s, n));
        },
        py::arg("freqs"), py::arg("t_s"), py::arg("n_obs"));
    m.def(
        "read_problem_bundle", [](const std::filesystem::path& dir) { return problem_dict(csv::read_problem_bundle(dir)); },
        py::arg("directory"));

    m.def(
        "run_mse_experiment",
        [](const std::string& gen, const std::vector<Index>& n_grid, const std::vector<std::string>& methods,
           std::size_t trials, std::uint64_t seed, double epsilon, double gamma, unsigned jobs) {
            MseExperimentConfig c;
            c.generator = generator_from(gen);
            c.n_grid = n_grid;
            for (const auto& s : methods) c.methods.push_back(method_from(s));
            c.trials = trials;
            c.base_seed = seed;
            c.epsilon = epsilon;
            c.gamma = gamma;
            c.jobs = jobs;
            py::list rows;
            for (const auto& r : run_mse_experiment(c).rows) {
                py::dict d;
                d["N"] = r.n_obs;
                d["method"] = std::string(to_string(r.method));
                d["mse"] = r.mse;
                d["trials"] = r.trials;
                d["failed"] = r.failed;
                d["recovery_portion"] = r.recovery_portion;
                d["oracle_match_rate"] = r.oracle_match_rate;
                d["feasibility"] = r.feasibility;
                rows.append(d);
            }
            return rows;
        },
        py::arg("generator"), py::arg("n_grid"), py::arg("methods"), py::arg("trials") = 50, py::arg("seed") = 0,
        py::arg("epsilon") = 1.0 / 3.0, py::arg("gamma") = 1.0, py::arg("jobs") = 1);

    m.def(
        "run_support_recovery",
        [](const std::string& gen, const std::vector<Index>& n_grid, const std::vector<double>& epsilons,
           std::size_t trials, std::uint64_t seed, unsigned jobs) {
            SupportRecoveryConfig c;
            c.generator = generator_from(gen);
            c.n_grid = n_grid;
            c.epsilons = epsilons;
            c.trials = trials;
            c.base_seed = seed;
            c.jobs = jobs;
            py::list rows;
            for (const auto& r : run_support_recovery(c).rows) {
                py::dict d;
                d["N"] = r.n_obs;
                d["epsilon"] = r.epsilon;
                d["lambda"] = r.lambda;
                d["portion"] = r.portion;
                d["feasibility"] = r.feasibility;
                d["trials"] = r.trials;
                rows.append(d);
            }
            return rows;
        },
        py::arg("generator"), py::arg("n_grid"), py::arg("epsilons"), py::arg("trials") = 200, py::arg("seed") = 0,
        py::arg("jobs") = 1);

    m.def(
        "check_gram_bounds",
        [](const std::vector<Index>& n_grid) {
            const GramBoundReport r = check_gram_bounds(SinusoidDict::standard(10), n_grid);
            py::dict d;
            d["constants"] = r.constants;
            d["violations"] = r.violations.size();
            py::list rows;
            for (const auto& row : r.rows) {
                py::dict x;
                x["N"] = row.n_obs;
                x["worst_offdiag_ratio"] = row.worst_offdiag_ratio;
                x["min_diag_slack"] = row.min_diag_slack;
                x["lambda_min"] = row.lambda_min;
                x["gershgorin_analytic"] = row.gershgorin_analytic;
                rows.append(x);
            }
            d["rows"] = rows;
            return d;
        },
        py::arg("n_grid"));
}
