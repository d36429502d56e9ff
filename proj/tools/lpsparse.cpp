#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include <openssl/evp.h>

#include "CLI11.hpp"
#include "json.hpp"
#include "lpsparse/baselines.hpp"
#include "lpsparse/csv.hpp"
#include "lpsparse/datagen.hpp"
#include "lpsparse/errors.hpp"
#include "lpsparse/estimator.hpp"
#include "lpsparse/harness.hpp"

using namespace lpsparse;
namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

enum Exit : int { kOk = 0, kUsage = 1, kData = 2, kNumerical = 3, kViolation = 4 };

class UsageError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

std::string fmt(double v) { return csv::format_double(v); }

std::string sha256_hex(const std::string& bytes) {
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr) != 1) {
        throw std::runtime_error("sha256 failed");
    }
    static constexpr char hex[] = "0123456789abcdef";
    std::string out;
    for (unsigned int i = 0; i < len; ++i) {
        out += hex[md[i] >> 4];
        out += hex[md[i] & 15];
    }
    return out;
}

/// Accepts plain decimals and fractions such as "1/3".
double parse_real(const std::string& text) {
    const auto slash = text.find('/');
    try {
        std::size_t used = 0;
        if (slash == std::string::npos) {
            const double v = std::stod(text, &used);
            if (used != text.size()) throw std::invalid_argument(text);
            return v;
        }
        const std::string num = text.substr(0, slash), den = text.substr(slash + 1);
        const double p = std::stod(num, &used);
        if (used != num.size()) throw std::invalid_argument(text);
        const double q = std::stod(den, &used);
        if (used != den.size() || q == 0.0) throw std::invalid_argument(text);
        return p / q;
    } catch (const std::logic_error&) {
        throw UsageError("not a number: '" + text + "'");
    }
}

std::vector<double> parse_reals(const std::vector<std::string>& items) {
    std::vector<double> out;
    for (const auto& s : items) out.push_back(parse_real(s));
    return out;
}

std::vector<Method> parse_methods(const std::vector<std::string>& items) {
    std::vector<Method> out;
    for (const auto& s : items) {
        const auto m = parse_method(s);
        if (!m) throw UsageError("unknown method '" + s + "'");
        out.push_back(*m);
    }
    return out;
}

Generator require_generator(const std::string& tag) {
    const auto g = parse_generator(tag);
    if (!g) throw UsageError("unknown generator '" + tag + "' (expected exp1 or exp2)");
    return *g;
}

std::vector<Index> to_index(const std::vector<long long>& grid) {
    std::vector<Index> out;
    for (long long n : grid) {
        if (n <= 0) throw UsageError("N must be positive, got " + std::to_string(n));
        out.push_back(static_cast<Index>(n));
    }
    if (out.empty()) throw UsageError("empty N grid");
    return out;
}

void check_grid(Generator g, const std::vector<Index>& grid) {
    for (Index n : grid) {
        if (n < min_observations(g)) {
            throw UsageError("N = " + std::to_string(n) + " is below the minimum " +
                             std::to_string(min_observations(g)) + " for " + std::string(to_string(g)));
        }
    }
}

json tolerances() {
    return {{"support_cushion", kSupportCushion},
            {"rank_tolerance", kRankTolerance},
            {"oracle_match", kOracleMatchTolerance},
            {"lse_identity", kLseIdentityTolerance},
            {"lp_bound_cushion", kLpBoundCushion},
            {"lasso_support_cushion", kLassoSupportCushion},
            {"adalasso_weight_cap", kWeightCap}};
}

/// Collects outputs, then writes them plus manifest.json into the output directory.
class Run {
   public:
    Run(std::string command, fs::path out_dir) : command_(std::move(command)), dir_(std::move(out_dir)) {}

    json config = json::object();
    json result = json::object();
    std::uint64_t seed = 0;

    void add(const std::string& name, std::string bytes) { files_.emplace_back(name, std::move(bytes)); }

    void commit() const {
        fs::create_directories(dir_);
        json outputs = json::array();
        for (const auto& [name, bytes] : files_) {
            std::ofstream out(dir_ / name, std::ios::binary);
            out << bytes;
            if (!out) throw std::runtime_error("cannot write " + (dir_ / name).string());
            outputs.push_back({{"path", name}, {"sha256", sha256_hex(bytes)}});
        }
        json m = {{"command", command_}, {"version", "0.1.0"}, {"seed", seed}, {"config", config},
                  {"tolerances", tolerances()}, {"outputs", outputs}, {"result", result}};
        std::ofstream out(dir_ / "manifest.json", std::ios::binary);
        out << m.dump(2) << '\n';
    }

   private:
    std::string command_;
    fs::path dir_;
    std::vector<std::pair<std::string, std::string>> files_;
};

std::string support_csv(const Support& s) {
    std::ostringstream o;
    o << "index\n";
    for (Index i : s) o << i + 1 << '\n';
    return o.str();
}

std::string vector_csv(const Vector& v) {
    std::ostringstream o;
    for (Index i = 0; i < v.size(); ++i) o << fmt(v[i]) << '\n';
    return o.str();
}

// ---------------------------------------------------------------------------

struct Common {
    std::string out_dir = ".";
    std::uint64_t seed = 0;
    unsigned jobs = 1;
};

void add_common(CLI::App* sub, Common& c) {
    sub->add_option("--out-dir,-o", c.out_dir, "Output directory")->capture_default_str();
    sub->add_option("--seed", c.seed, "Base seed")->capture_default_str();
    sub->add_option("--jobs,-j", c.jobs, "Worker threads")->capture_default_str()->check(CLI::PositiveNumber);
}

// gen ------------------------------------------------------------------------

struct GenOpts {
    Common common;
    std::string generator = "exp1";
    long long n_obs = 100;
};

int cmd_gen(const GenOpts& o) {
    const Generator g = require_generator(o.generator);
    const Index n = to_index({o.n_obs}).front();
    check_grid(g, {n});
    const Problem p = generate(g, n, o.common.seed);
    csv::write_problem_bundle(o.common.out_dir, p);

    Run run("gen", o.common.out_dir);
    run.seed = o.common.seed;
    run.config = {{"generator", o.generator}, {"N", n}};
    // Bundle files are already on disk; checksum them from there.
    for (const char* name : {"A.csv", "y.csv", "xtrue.csv", "meta.csv"}) {
        std::ifstream in(fs::path(o.common.out_dir) / name, std::ios::binary);
        std::ostringstream buf;
        buf << in.rdbuf();
        run.add(name, buf.str());
    }
    run.commit();
    std::cout << "wrote " << to_string(g) << " problem N=" << n << " seed=" << o.common.seed << " to "
              << o.common.out_dir << '\n';
    return kOk;
}

// estimate ---------------------------------------------------------------------

struct EstimateOpts {
    Common common;
    std::string input;
    std::string epsilon;
    std::string lambda;
};

int cmd_estimate(const EstimateOpts& o) {
    if (!o.epsilon.empty() && !o.lambda.empty()) throw UsageError("give only one of --epsilon and --lambda");
    EstimatorConfig cfg;
    if (!o.epsilon.empty()) cfg.epsilon = parse_real(o.epsilon);
    if (!o.lambda.empty()) cfg.lambda_override = parse_real(o.lambda);
    cfg.validate();

    const Problem p = csv::read_problem_bundle(o.input);
    if (p.a.rows() < p.a.cols()) {
        throw ParseError((fs::path(o.input) / "A.csv").string(), 0,
                         "design has fewer rows than columns (" + std::to_string(p.a.rows()) + " < " +
                             std::to_string(p.a.cols()) + ")");
    }
    const PipelineTrace t = estimate(p.a, p.y, cfg);

    std::ostringstream trace;
    trace << "coordinate,lambda,x_ls,x_lp,x_rels,in_support\n";
    for (Index i = 0; i < t.x_ls.size(); ++i) {
        const bool in = std::binary_search(t.support_lp.begin(), t.support_lp.end(), i);
        trace << i + 1 << ',' << fmt(t.lambda) << ',' << fmt(t.x_ls[i]) << ',' << fmt(t.x_lp[i]) << ','
              << fmt(t.x_rels[i]) << ',' << (in ? 1 : 0) << '\n';
    }

    Run run("estimate", o.common.out_dir);
    run.seed = p.seed;
    run.config = {{"input", o.input}};
    if (cfg.lambda_override) run.config["lambda"] = *cfg.lambda_override;
    else run.config["epsilon"] = cfg.epsilon;
    run.add("x_rels.csv", vector_csv(t.x_rels));
    run.add("support.csv", support_csv(t.support_lp));
    run.add("trace.csv", trace.str());
    run.result = {{"lambda", t.lambda}, {"rank_warning", t.rank_warning}, {"support_size", t.support_lp.size()}};
    run.commit();

    std::cout << "lambda " << fmt(t.lambda) << "\nsupport {";
    for (std::size_t k = 0; k < t.support_lp.size(); ++k) std::cout << (k ? "," : "") << t.support_lp[k] + 1;
    std::cout << "}\n";
    if (t.rank_warning) std::cout << "warning: support columns are rank deficient\n";
    return kOk;
}

// exp1 / exp2 ------------------------------------------------------------------

struct ExpOpts {
    Common common;
    std::vector<long long> n_grid{20, 50, 75, 100, 200, 300, 500};
    std::size_t trials = 50;
    std::vector<std::string> methods{"LSE", "LP_RELSE", "ORACLE_LSE", "LASSO", "ADALASSO"};
    std::string epsilon = "1/3";
    std::string gamma = "1";
    std::vector<std::string> epsilons{"1/8", "1/4", "1/2"};
    std::size_t support_trials = 200;
};

int cmd_experiment(Generator g, const ExpOpts& o) {
    if (o.trials == 0) throw UsageError("--trials must be at least 1");
    if (o.support_trials == 0) throw UsageError("--support-trials must be at least 1");
    const std::vector<Index> grid = to_index(o.n_grid);
    check_grid(g, grid);

    MseExperimentConfig mc;
    mc.generator = g;
    mc.n_grid = grid;
    mc.methods = parse_methods(o.methods);
    mc.trials = o.trials;
    mc.base_seed = o.common.seed;
    mc.epsilon = parse_real(o.epsilon);
    mc.gamma = parse_real(o.gamma);
    mc.jobs = o.common.jobs;
    const MonteCarloReport mse = run_mse_experiment(mc);

    SupportRecoveryConfig sc;
    sc.generator = g;
    sc.n_grid = grid;
    sc.epsilons = parse_reals(o.epsilons);
    sc.trials = o.support_trials;
    sc.base_seed = o.common.seed;
    sc.jobs = o.common.jobs;
    const SupportRecoveryReport sup = run_support_recovery(sc);

    std::ostringstream mse_csv, report, support;
    mse_csv << "N,method,mse,trials\n";
    report << "N,setting,metric,value,trials\n";
    for (const auto& r : mse.rows) {
        const std::string m(to_string(r.method));
        mse_csv << r.n_obs << ',' << m << ',' << fmt(r.mse) << ',' << r.trials << '\n';
        const std::pair<const char*, double> metrics[] = {{"mse", r.mse},
                                                          {"recovery_portion", r.recovery_portion},
                                                          {"oracle_match_rate", r.oracle_match_rate},
                                                          {"feasibility", r.feasibility},
                                                          {"failed", static_cast<double>(r.failed)}};
        for (const auto& [name, value] : metrics) {
            report << r.n_obs << ',' << m << ',' << name << ',' << fmt(value) << ',' << r.trials << '\n';
        }
    }
    support << "N,epsilon,lambda,portion,feasibility,oracle_match_rate,trials,failed\n";
    for (const auto& r : sup.rows) {
        support << r.n_obs << ',' << fmt(r.epsilon) << ',' << fmt(r.lambda) << ',' << fmt(r.portion) << ','
                << fmt(r.feasibility) << ',' << fmt(r.oracle_match_rate) << ',' << r.trials << ',' << r.failed
                << '\n';
        const std::string setting = "epsilon=" + fmt(r.epsilon);
        report << r.n_obs << ',' << setting << ",portion," << fmt(r.portion) << ',' << r.trials << '\n';
    }
    for (double e : sc.epsilons) {
        report << "all,epsilon=" << fmt(e) << ",summability_proxy," << fmt(sup.summability_proxy(e)) << ','
               << sc.trials << '\n';
    }

    Run run(std::string(to_string(g)), o.common.out_dir);
    run.seed = o.common.seed;
    run.config = {{"generator", std::string(to_string(g))},
                  {"n_grid", grid},
                  {"trials", o.trials},
                  {"methods", o.methods},
                  {"epsilon", mc.epsilon},
                  {"gamma", mc.gamma},
                  {"epsilons", sc.epsilons},
                  {"support_trials", sc.trials}};
    run.add("mse.csv", mse_csv.str());
    run.add("report.csv", report.str());
    run.add("support.csv", support.str());
    run.commit();

    std::cout << mse_csv.str();
    return kOk;
}

// path -----------------------------------------------------------------------

struct PathOpts {
    Common common;
    std::vector<std::string> x_ls{"2", "0.5", "-1", "-1.5"};
    std::vector<std::string> grid;
    std::size_t points = 41;
};

int cmd_path(const PathOpts& o) {
    const std::vector<double> xs = parse_reals(o.x_ls);
    if (xs.empty()) throw UsageError("--x-ls is empty");
    const Vector x = Eigen::Map<const Vector>(xs.data(), static_cast<Index>(xs.size()));
    std::vector<double> grid = parse_reals(o.grid);
    if (grid.empty()) {
        if (o.points < 2) throw UsageError("--points must be at least 2");
        const double top = x.cwiseAbs().maxCoeff();
        for (std::size_t k = 0; k < o.points; ++k) {
            grid.push_back(top * static_cast<double>(k) / static_cast<double>(o.points - 1));
        }
    }
    if (!std::is_sorted(grid.begin(), grid.end()) || grid.front() < 0.0) {
        throw UsageError("lambda grid must be ascending and non-negative");
    }
    const auto path = solution_path(x, grid);

    std::ostringstream out;
    out << "lambda";
    for (Index i = 0; i < x.size(); ++i) out << ",x" << i + 1;
    out << '\n';
    for (std::size_t k = 0; k < grid.size(); ++k) {
        out << fmt(grid[k]);
        for (Index i = 0; i < x.size(); ++i) out << ',' << fmt(path[k][i]);
        out << '\n';
    }
    Run run("path", o.common.out_dir);
    run.config = {{"x_ls", xs}, {"lambda_grid", grid}};
    run.add("path.csv", out.str());
    run.commit();
    std::cout << out.str();
    return kOk;
}

// check ------------------------------------------------------------------------

struct CheckOpts {
    Common common;
    std::string which;
    std::string generator = "exp1";
    std::vector<long long> n_grid;
    std::size_t trials = 0;
    std::string epsilon = "1/3";
    std::string lambda;
};

struct CheckRow {
    std::string check;
    Index n_obs;
    std::string metric;
    double value;
    double threshold;
    bool pass;
};

int cmd_check(const CheckOpts& o) {
    const std::string& w = o.which;
    std::vector<CheckRow> rows;
    std::vector<std::string> violations;
    json result = json::object();
    json config = {{"which", w}};

    if (w == "gram") {
        const std::vector<Index> grid =
            to_index(o.n_grid.empty() ? std::vector<long long>{100, 1000, 10000, 100000} : o.n_grid);
        const GramBoundReport r = check_gram_bounds(SinusoidDict::standard(10), grid);
        config["dictionary"] = {{"n", 10}, {"freqs", "1..10"}, {"t_s", 0.1}};
        config["n_grid"] = grid;
        for (const auto& row : r.rows) {
            rows.push_back({w, row.n_obs, "offdiag_violations", static_cast<double>(row.offdiag_violations), 0,
                            row.offdiag_violations == 0});
            rows.push_back({w, row.n_obs, "diag_violations", static_cast<double>(row.diag_violations), 0,
                            row.diag_violations == 0});
            rows.push_back({w, row.n_obs, "worst_offdiag_ratio", row.worst_offdiag_ratio, 1.0,
                            row.worst_offdiag_ratio <= 1.0});
            rows.push_back({w, row.n_obs, "min_diag_slack", row.min_diag_slack, 0.0, row.min_diag_slack >= 0.0});
            rows.push_back({w, row.n_obs, "lambda_min", row.lambda_min, row.gershgorin_empirical,
                            row.lambda_min >= row.gershgorin_empirical * (1 - 1e-12)});
            rows.push_back({w, row.n_obs, "gershgorin_analytic", row.gershgorin_analytic, 0.0,
                            row.n_obs < kGershgorinAssertFrom || row.gershgorin_analytic > 0.0});
        }
        for (const auto& v : r.violations) {
            violations.push_back("N=" + std::to_string(v.n_obs) + ": " + v.inequality + " violated: lhs " +
                                 fmt(v.lhs) + " vs rhs " + fmt(v.rhs));
        }
    } else if (w == "lemma1" || w == "lemma2" || w == "lemma7" || w == "feasibility") {
        const Generator g = require_generator(o.generator);
        std::vector<long long> default_grid{100};
        if (w == "lemma7") default_grid = {50, 200};
        const std::vector<Index> grid = to_index(o.n_grid.empty() ? default_grid : o.n_grid);
        check_grid(g, grid);
        const std::size_t trials = o.trials ? o.trials : (w == "feasibility" ? 2000 : 10000);
        if (w == "lemma2" && trials < 1000) throw UsageError("lemma2 needs at least 1000 trials");

        EstimatorConfig est;
        est.epsilon = parse_real(o.epsilon);
        if (!o.lambda.empty()) est.lambda_override = parse_real(o.lambda);
        est.validate();
        config["generator"] = o.generator;
        config["n_grid"] = grid;
        config["trials"] = trials;
        if (est.lambda_override) config["lambda"] = *est.lambda_override;
        else config["epsilon"] = est.epsilon;

        for (Index n : grid) {
            BoundStudyConfig lc;
            lc.generator = g;
            lc.n_obs = n;
            lc.trials = trials;
            lc.base_seed = o.common.seed;
            lc.estimator = est;
            lc.jobs = o.common.jobs;
            const BoundStudy s = run_bound_study(lc);
            const std::string at = "N=" + std::to_string(n) + ": ";
            if (w == "lemma1") {
                const bool ok = s.max_identity_deviation <= kLseIdentityTolerance;
                rows.push_back({w, n, "max_identity_deviation", s.max_identity_deviation, kLseIdentityTolerance, ok});
                if (!ok) {
                    violations.push_back(at + "||x_ls - (x0 + V S^-1 U^T v)||_inf <= tol violated: lhs " +
                                         fmt(s.max_identity_deviation) + " vs rhs " + fmt(kLseIdentityTolerance));
                }
            } else if (w == "lemma2") {
                const GaussianityReport& b = *s.whitened;
                const GaussianityReport& c = *s.unwhitened_control;
                rows.push_back({w, n, "whitened_mean_deviation", b.max_mean_deviation, b.mean_band,
                                b.max_mean_deviation <= b.mean_band});
                rows.push_back({w, n, "whitened_cov_deviation", b.max_cov_deviation, b.cov_band,
                                b.max_cov_deviation <= b.cov_band});
                rows.push_back({w, n, "control_cov_deviation", c.max_cov_deviation, c.cov_band, !c.passes()});
                if (b.max_mean_deviation > b.mean_band) {
                    violations.push_back(at + "|mean(b)| <= band violated: lhs " + fmt(b.max_mean_deviation) +
                                         " vs rhs " + fmt(b.mean_band));
                }
                if (b.max_cov_deviation > b.cov_band) {
                    violations.push_back(at + "|cov(b) - I| <= band violated: lhs " + fmt(b.max_cov_deviation) +
                                         " vs rhs " + fmt(b.cov_band));
                }
                if (c.passes()) {
                    violations.push_back(at + "negative control passed unexpectedly: cov deviation " +
                                         fmt(c.max_cov_deviation) + " within band " + fmt(c.cov_band));
                }
            } else if (w == "lemma7") {
                rows.push_back({w, n, "feasible_trials", static_cast<double>(s.lp_applied), 0, true});
                rows.push_back({w, n, "violations", static_cast<double>(s.lp_violations), 0, s.lp_violations == 0});
                rows.push_back({w, n, "worst_ratio", s.worst_lp_ratio, 1.0, s.worst_lp_ratio <= 1.0});
                if (s.lp_violations > 0) {
                    violations.push_back(at + "||x_lp - x0||^2 <= 4 s lambda^2 violated in " +
                                         std::to_string(s.lp_violations) + " trials: worst lhs/rhs " +
                                         fmt(s.worst_lp_ratio) + " vs 1");
                }
            } else {
                const FeasibilityReport& f = s.feasibility;
                const double rhs = f.mean_bound - f.slack;
                rows.push_back({w, n, "frequency", f.frequency, rhs, f.holds()});
                rows.push_back({w, n, "mean_bound", f.mean_bound, 0, true});
                rows.push_back({w, n, "mean_asymptotic_bound", f.mean_asymptotic_bound, 0, true});
                rows.push_back({w, n, "slack", f.slack, 0, true});
                if (!f.holds()) {
                    violations.push_back(at + "frequency >= mean bound - slack violated: lhs " + fmt(f.frequency) +
                                         " vs rhs " + fmt(rhs));
                }
            }
        }
    } else {
        throw UsageError("unknown check '" + w + "' (expected gram, lemma1, lemma2, lemma7, feasibility)");
    }

    std::ostringstream out;
    out << "check,N,metric,value,threshold,pass\n";
    for (const auto& r : rows) {
        out << r.check << ',' << r.n_obs << ',' << r.metric << ',' << fmt(r.value) << ',' << fmt(r.threshold) << ','
            << (r.pass ? 1 : 0) << '\n';
    }
    const bool pass = violations.empty() && std::all_of(rows.begin(), rows.end(), [](const auto& r) { return r.pass; });

    Run run("check", o.common.out_dir);
    run.seed = o.common.seed;
    run.config = config;
    run.result = {{"pass", pass}, {"violations", violations}};
    run.add("check_" + w + ".csv", out.str());
    run.commit();

    std::cout << out.str();
    for (const auto& v : violations) std::cerr << "VIOLATION " << v << '\n';
    std::cout << (pass ? "PASS " : "FAIL ") << w << '\n';
    return pass ? kOk : kViolation;
}

// cv ---------------------------------------------------------------------------

struct CvOpts {
    Common common;
    std::string param = "epsilon";
    std::vector<std::string> candidates;
    std::vector<long long> n_grid{20, 50, 100, 200, 300, 500};
    std::size_t trials = 100;
    std::string generator = "exp1";
};

double median(std::vector<double> v) {
    if (v.empty()) return std::nan("");
    std::sort(v.begin(), v.end());
    const std::size_t h = v.size() / 2;
    return v.size() % 2 ? v[h] : 0.5 * (v[h - 1] + v[h]);
}

int cmd_cv(const CvOpts& o) {
    const auto param = parse_cv_param(o.param);
    if (!param) throw UsageError("unknown --param '" + o.param + "' (expected epsilon or gamma)");
    std::vector<double> candidates = parse_reals(o.candidates);
    if (candidates.empty()) {
        candidates = *param == CvParam::Epsilon ? std::vector<double>{0.125, 0.25, 0.5}
                                                : std::vector<double>{0.5, 1.0, 2.0};
    }
    const std::vector<Index> grid = to_index(o.n_grid);
    const Generator g = require_generator(o.generator);

    std::ostringstream grid_csv, test_csv, summary;
    grid_csv << "N,trial,candidate,mean_loss,chosen\n";
    test_csv << "N,trial,train_seed,test_seed,chosen,test_error\n";
    summary << "N,param,trials,excluded,median_test_error,mean_test_error\n";
    for (Index n : grid) {
        CvConfig c;
        c.param = *param;
        c.candidates = candidates;
        c.n_obs = n;
        c.trials = o.trials;
        c.base_seed = o.common.seed;
        c.generator = g;
        c.jobs = o.common.jobs;
        const CvStudy s = cross_validate(c);
        std::vector<double> errors;
        for (const auto& t : s.trials) {
            for (std::size_t k = 0; k < t.grid.candidates.size(); ++k) {
                grid_csv << n << ',' << t.trial << ',' << fmt(t.grid.candidates[k]) << ','
                         << fmt(t.grid.mean_loss[k]) << ',' << (t.grid.candidates[k] == t.grid.chosen ? 1 : 0)
                         << '\n';
            }
            test_csv << n << ',' << t.trial << ',' << t.train_seed << ',' << t.test_seed << ','
                     << fmt(t.grid.chosen) << ',' << fmt(t.test_error) << '\n';
            errors.push_back(t.test_error);
        }
        const double mean = errors.empty()
                                ? std::nan("")
                                : std::accumulate(errors.begin(), errors.end(), 0.0) / static_cast<double>(errors.size());
        summary << n << ',' << to_string(*param) << ',' << s.trials.size() << ',' << s.excluded << ','
                << fmt(median(errors)) << ',' << fmt(mean) << '\n';
    }

    Run run("cv", o.common.out_dir);
    run.seed = o.common.seed;
    run.config = {{"param", o.param},   {"candidates", candidates}, {"n_grid", grid},
                  {"trials", o.trials}, {"folds", 5},               {"generator", o.generator}};
    run.add("cv_grid.csv", grid_csv.str());
    run.add("cv_test.csv", test_csv.str());
    run.add("cv_summary.csv", summary.str());
    run.commit();
    std::cout << summary.str();
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Sparse estimation by LSE, soft-threshold LP and support-restricted re-LSE"};
    app.require_subcommand(1);

    GenOpts gen;
    auto* g = app.add_subcommand("gen", "Generate a problem bundle");
    add_common(g, gen.common);
    g->add_option("--generator", gen.generator, "exp1 or exp2")->capture_default_str();
    g->add_option("--N,--n-obs", gen.n_obs, "Number of observations")->capture_default_str();

    EstimateOpts est;
    auto* e = app.add_subcommand("estimate", "Run the estimator on a problem bundle");
    add_common(e, est.common);
    e->add_option("--input,-i", est.input, "Problem bundle directory")->required();
    e->add_option("--epsilon", est.epsilon, "Schedule exponent (default 1/3)");
    e->add_option("--lambda", est.lambda, "Fixed threshold");

    ExpOpts exp;
    auto* x1 = app.add_subcommand("exp1", "Correlated Gaussian design experiment");
    auto* x2 = app.add_subcommand("exp2", "Sinusoid dictionary experiment");
    for (auto* sub : {x1, x2}) {
        add_common(sub, exp.common);
        sub->add_option("--n-grid,--N", exp.n_grid, "Observation counts")->delimiter(',')->capture_default_str();
        sub->add_option("--trials", exp.trials, "Trials per N")->capture_default_str();
        sub->add_option("--methods", exp.methods, "Methods")->delimiter(',')->capture_default_str();
        sub->add_option("--epsilon", exp.epsilon, "LP_RELSE exponent")->capture_default_str();
        sub->add_option("--gamma", exp.gamma, "ADALASSO exponent")->capture_default_str();
        sub->add_option("--epsilons", exp.epsilons, "Support recovery exponents")->delimiter(',')->capture_default_str();
        sub->add_option("--support-trials", exp.support_trials, "Trials per support point")->capture_default_str();
    }

    PathOpts path;
    auto* p = app.add_subcommand("path", "Soft-threshold solution path");
    add_common(p, path.common);
    p->add_option("--x-ls", path.x_ls, "Unconstrained estimate")->delimiter(',')->capture_default_str();
    p->add_option("--lambda-grid", path.grid, "Ascending lambda values")->delimiter(',');
    p->add_option("--points", path.points, "Evenly spaced points when no grid is given")->capture_default_str();

    CheckOpts chk;
    auto* c = app.add_subcommand("check", "Run a bound checker");
    add_common(c, chk.common);
    c->add_option("which", chk.which, "gram | lemma1 | lemma2 | lemma7 | feasibility")->required();
    c->add_option("--generator", chk.generator, "exp1 or exp2")->capture_default_str();
    c->add_option("--n-grid,--N", chk.n_grid, "Observation counts")->delimiter(',');
    c->add_option("--trials", chk.trials, "Trials per N");
    c->add_option("--epsilon", chk.epsilon, "Schedule exponent")->capture_default_str();
    c->add_option("--lambda", chk.lambda, "Fixed threshold");

    CvOpts cv;
    auto* v = app.add_subcommand("cv", "Five-fold cross-validation study");
    add_common(v, cv.common);
    v->add_option("--param", cv.param, "epsilon or gamma")->capture_default_str();
    v->add_option("--candidates", cv.candidates, "Candidate values")->delimiter(',');
    v->add_option("--n-grid,--N", cv.n_grid, "Observation counts")->delimiter(',')->capture_default_str();
    v->add_option("--trials", cv.trials, "Realizations per N")->capture_default_str();
    v->add_option("--generator", cv.generator, "exp1 or exp2")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& err) {
        return app.exit(err);
    } catch (const CLI::CallForAllHelp& err) {
        return app.exit(err);
    } catch (const CLI::ParseError& err) {
        app.exit(err);
        return kUsage;
    }

    try {
        if (g->parsed()) return cmd_gen(gen);
        if (e->parsed()) return cmd_estimate(est);
        if (x1->parsed()) return cmd_experiment(Generator::Experiment1, exp);
        if (x2->parsed()) return cmd_experiment(Generator::Experiment2, exp);
        if (p->parsed()) return cmd_path(path);
        if (c->parsed()) return cmd_check(chk);
        if (v->parsed()) return cmd_cv(cv);
    } catch (const UsageError& err) {
        std::cerr << "usage error: " << err.what() << '\n';
        return kUsage;
    } catch (const DomainError& err) {
        std::cerr << "usage error: " << err.what() << '\n';
        return kUsage;
    } catch (const ParseError& err) {
        std::cerr << "parse error: " << err.what() << '\n';
        return kData;
    } catch (const NumericalError& err) {
        std::cerr << "numerical error: " << err.what() << '\n';
        return kNumerical;
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << '\n';
        return kData;
    }
    return kUsage;
}
