#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "gproj/gproj.hpp"

namespace {

using namespace gproj;

constexpr int kExitOk = 0;
constexpr int kExitInputError = 1;
constexpr int kExitBudget = 2;

// Common knobs shared by the project subcommand's algorithms.
struct ProjectOptions {
  std::string problem_path;
  std::string algorithm = "A";
  double beta = 0.0;  // 0 = auto (stability-derived default)
  double tol = 1e-10;
  std::size_t max_iters = 10000;
  std::size_t inner_l = 1;
  double lambda = 0.0;    // 0 = auto: beta / (2K), the A-step scale
  double epsilon = 0.01;  // boundary-safe trade size
  std::string trace_path;
  bool echo = false;
};

void print_summary(const ProjectionProblem& problem, const std::string& algo,
                   double beta_used, const RunResult& result) {
  const ConvergenceTrace& t = result.trace;
  std::cout << "algorithm: " << algo << "\n"
            << "connection: "
            << (problem.connection == Connection::EAsNabla ? "e_as_nabla"
                                                           : "m_as_nabla")
            << "\n"
            << "K: " << problem.basis.size() << ", d: " << problem.basis.dim()
            << "\n"
            << "beta: " << format_double(beta_used) << "\n";
  std::cout << "final weights:";
  for (double w : result.weights.values()) {
    std::cout << ' ' << format_double(w);
  }
  std::cout << "\nfinal divergence: " << format_double(t.final_divergence)
            << "\nfinal max |gamma|: " << format_double(t.final_max_abs_gamma)
            << "\niterations: " << t.iterations
            << "\ntermination: " << to_string(t.reason) << "\n";
}

void write_trace_file(const std::string& path, const ConvergenceTrace& trace,
                      std::size_t k) {
  std::ofstream out(path);
  if (!out) {
    throw ParseError("cannot write " + path);
  }
  write_trace_csv(out, trace, k);
}

int cmd_project(const ProjectOptions& opt) {
  const ProjectionProblem problem = load_problem(opt.problem_path);
  if (opt.echo) {
    std::cout << problem_to_json(problem);
    return kExitOk;
  }
  const double beta =
      opt.beta > 0.0 ? opt.beta : recommended_beta(problem);
  const LearningFunction lf(beta);
  const bool record = !opt.trace_path.empty();

  RunConfig run_cfg;
  run_cfg.tol_gamma = opt.tol;
  run_cfg.max_iters = opt.max_iters;
  run_cfg.learning = lf;
  run_cfg.record_trace = record;

  VariantConfig var_cfg;
  var_cfg.inner_count = opt.inner_l;
  var_cfg.learning = lf;
  var_cfg.tol_gamma = opt.tol;
  var_cfg.max_sweeps = opt.max_iters;
  var_cfg.record_trace = record;

  RunResult result = [&] {
    if (opt.algorithm == "A") return run_A(problem, run_cfg);
    if (opt.algorithm == "B") return run_B(problem, var_cfg);
    if (opt.algorithm == "Ba") return run_Ba(problem, var_cfg);
    if (opt.algorithm == "C") return run_C(problem, var_cfg);
    if (opt.algorithm == "Cb") return run_Cb(problem, var_cfg);
    if (opt.algorithm == "grad") {
      const double lambda =
          opt.lambda > 0.0
              ? opt.lambda
              : beta / (2.0 * static_cast<double>(problem.basis.size()));
      return run_gradient(problem, lambda, run_cfg);
    }
    if (opt.algorithm == "adaptive") return run_A_rescaled(problem, run_cfg);
    if (opt.algorithm == "boundary") {
      return run_boundary_safe(problem, opt.epsilon, run_cfg);
    }
    throw ParseError("unknown algorithm \"" + opt.algorithm + "\"");
  }();

  print_summary(problem, opt.algorithm, beta, result);
  if (record) {
    write_trace_file(opt.trace_path, result.trace, problem.basis.size());
  }
  return result.trace.reason == StopReason::Converged ? kExitOk : kExitBudget;
}

std::optional<WeightVector> solve_for_optimum(const ProjectionProblem& problem,
                                              std::size_t resolution) {
  if (problem.basis.size() == 2) return oracle_k2(problem).w_star;
  if (problem.basis.size() <= 5) {
    return oracle_grid(problem, resolution).w_star;
  }
  return std::nullopt;  // brute force is out of reach; skip optimum bounds
}

int cmd_bounds(const std::string& problem_path, std::size_t resolution) {
  const ProjectionProblem problem = load_problem(problem_path);
  const std::optional<WeightVector> w_star =
      solve_for_optimum(problem, resolution);
  const std::vector<StabilityReport> reports =
      stability_reports(problem, w_star);
  if (reports.empty()) {
    std::cout << "no applicable bounds (K > 5 and no optimum available)\n";
    return kExitOk;
  }
  double tightest = std::numeric_limits<double>::infinity();
  for (const StabilityReport& r : reports) {
    std::cout << to_string(r.kind) << ": f'(0) < "
              << format_double(r.bound_on_f_prime) << "  [" << r.inputs
              << "]\n";
    tightest = std::min(tightest, r.bound_on_f_prime);
  }
  // Bounds cap f'(0) = beta/2, so the default beta doubles the safe margin
  // value 0.9 * tightest.
  if (std::isfinite(tightest)) {
    std::cout << "recommended beta: " << format_double(1.8 * tightest)
              << "\n";
  } else {
    std::cout << "recommended beta: unconstrained (using 1)\n";
  }
  return kExitOk;
}

int cmd_oracle(const std::string& problem_path, std::size_t resolution) {
  const ProjectionProblem problem = load_problem(problem_path);
  const OracleSolution sol = problem.basis.size() == 2
                                 ? oracle_k2(problem)
                                 : oracle_grid(problem, resolution);
  std::cout << "method: "
            << (sol.method == OracleMethod::GoldenK2 ? "golden-section"
                                                     : "grid")
            << "\nw*:";
  for (double w : sol.w_star.values()) std::cout << ' ' << format_double(w);
  std::cout << "\ndivergence: " << format_double(sol.divergence_at_star)
            << "\nevaluations: " << sol.evaluations << "\n";
  // Pythagorean certificate: at the projection, the divergence from any
  // basis point decomposes through q*.
  const DiscreteDistribution q_star = current_estimate(problem, sol.w_star);
  double residual = 0.0;
  for (std::size_t k = 0; k < problem.basis.size(); ++k) {
    const DiscreteDistribution& pk = problem.basis[k];
    const Connection c = problem.connection;
    residual = std::max(
        residual,
        std::abs(canonical_divergence(pk, problem.target, c) -
                 canonical_divergence(q_star, problem.target, c) -
                 canonical_divergence(pk, q_star, c)));
  }
  std::cout << "pythagorean residual: " << format_double(residual) << "\n";
  return kExitOk;
}

int cmd_nmf(const std::string& matrix_path, std::size_t rank, double beta,
            double tol, std::size_t max_sweeps, std::size_t max_iters,
            const std::string& prefix) {
  const NonnegativeMatrix x = column_normalize(read_matrix_csv(matrix_path));
  NmfConfig cfg;
  cfg.run.learning = LearningFunction(beta);
  cfg.run.max_iters = max_iters;
  cfg.tol = tol;
  cfg.max_sweeps = max_sweeps;
  const FactorizationResult result = nmf(x, rank, cfg);

  const auto write_csv = [](const std::string& path,
                            const NonnegativeMatrix& m) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot write " + path);
    write_matrix_csv(out, m);
  };
  write_csv(prefix + "_P.csv", result.dictionary);
  write_csv(prefix + "_W.csv", result.weights);
  std::ofstream obj(prefix + "_objective.csv");
  if (!obj) throw ParseError("cannot write " + prefix + "_objective.csv");
  obj << "sweep,objective\n";
  for (std::size_t i = 0; i < result.objective_log.size(); ++i) {
    obj << i << ',' << format_double(result.objective_log[i]) << "\n";
  }
  std::cout << "sweeps: " << result.objective_log.size()
            << "\nfinal objective: "
            << format_double(result.objective_log.back()) << "\nwrote "
            << prefix << "_P.csv, " << prefix << "_W.csv, " << prefix
            << "_objective.csv\n";
  return kExitOk;
}

// Random but reproducible test problems: interior basis, interior weights,
// target on the submanifold or nudged off it by sigma in log space.
int cmd_gen(std::size_t dim, std::size_t k, const std::string& connection,
            std::uint64_t seed, double sigma, const std::string& out_path) {
  if (dim < 2 || k < 2) {
    throw ParseError("gen needs --dim >= 2 and --k >= 2");
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.05, 1.0);
  const auto random_distribution = [&] {
    std::vector<double> p(dim);
    for (double& v : p) v = unit(rng);
    return DiscreteDistribution::normalized(std::move(p));
  };
  std::vector<DiscreteDistribution> members;
  for (std::size_t i = 0; i < k; ++i) members.push_back(random_distribution());
  BasisSet basis(std::move(members));

  std::vector<double> w(k);
  for (double& v : w) v = unit(rng);
  const WeightVector weights = WeightVector::normalized(std::move(w));

  const Connection c =
      connection == "m_as_nabla" ? Connection::MAsNabla : Connection::EAsNabla;
  DiscreteDistribution target =
      c == Connection::EAsNabla ? m_mixture(basis, weights)
                                : e_mixture(basis, weights);
  if (sigma > 0.0) {
    std::normal_distribution<double> noise(0.0, sigma);
    std::vector<double> t(dim);
    for (std::size_t i = 0; i < dim; ++i) {
      t[i] = target[i] * std::exp(noise(rng));
    }
    target = DiscreteDistribution::normalized(std::move(t));
  }

  const std::string json =
      problem_to_json(ProjectionProblem(target, basis, c));
  if (out_path.empty()) {
    std::cout << json;
  } else {
    std::ofstream out(out_path);
    if (!out) throw ParseError("cannot write " + out_path);
    out << json;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Derivative-free divergence projection onto mixture submanifolds"};
  app.require_subcommand(1);

  ProjectOptions popt;
  CLI::App* project = app.add_subcommand(
      "project", "Run a projection algorithm on a problem file");
  project->add_option("problem", popt.problem_path, "problem JSON file")
      ->required();
  project
      ->add_option("--algorithm", popt.algorithm,
                   "A, B, Ba, C, Cb, grad, adaptive or boundary")
      ->check(CLI::IsMember(
          {"A", "B", "Ba", "C", "Cb", "grad", "adaptive", "boundary"}));
  project->add_option("--beta", popt.beta,
                      "learning-speed parameter (default: stability-derived)");
  project->add_option("--tol", popt.tol, "residual tolerance on max |gamma|");
  project->add_option("--max-iters", popt.max_iters,
                      "iteration / sweep budget");
  project->add_option("--inner-L", popt.inner_l,
                      "inner updates per component (B, Ba, C)");
  project->add_option("--lambda", popt.lambda,
                      "gradient step size (default: beta / 2K)");
  project->add_option("--epsilon", popt.epsilon,
                      "boundary-safe mass traded per step");
  project->add_option("--trace", popt.trace_path, "write per-iteration CSV");
  project->add_flag("--echo", popt.echo,
                    "print the parsed problem as canonical JSON and exit");

  std::string bounds_path;
  std::size_t bounds_resolution = 60;
  CLI::App* bounds =
      app.add_subcommand("bounds", "Report stability bounds on f'(0)");
  bounds->add_option("problem", bounds_path, "problem JSON file")->required();
  bounds->add_option("--resolution", bounds_resolution,
                     "lattice resolution for the K >= 3 optimum search");

  std::string oracle_path;
  std::size_t oracle_resolution = 60;
  CLI::App* oracle =
      app.add_subcommand("oracle", "Brute-force projection ground truth");
  oracle->add_option("problem", oracle_path, "problem JSON file")->required();
  oracle->add_option("--resolution", oracle_resolution,
                     "lattice resolution (K >= 3)");

  std::string nmf_path, nmf_prefix = "nmf_out";
  std::size_t nmf_rank = 2, nmf_sweeps = 200, nmf_iters = 10000;
  double nmf_beta = 1.0, nmf_tol = 1e-9;
  CLI::App* nmf_cmd = app.add_subcommand(
      "nmf", "Alternating mixture decomposition of a nonnegative matrix");
  nmf_cmd->add_option("matrix", nmf_path, "matrix CSV file")->required();
  nmf_cmd->add_option("--rank", nmf_rank, "number of dictionary columns K")
      ->required();
  nmf_cmd->add_option("--beta", nmf_beta, "per-column learning speed");
  nmf_cmd->add_option("--tol", nmf_tol, "relative objective change to stop");
  nmf_cmd->add_option("--max-sweeps", nmf_sweeps, "alternation budget");
  nmf_cmd->add_option("--max-iters", nmf_iters, "per-column iteration budget");
  nmf_cmd->add_option("--output-prefix", nmf_prefix, "output file prefix");

  std::size_t gen_dim = 4, gen_k = 2;
  std::string gen_connection = "e_as_nabla", gen_out;
  std::uint64_t gen_seed = 0;
  double gen_sigma = 0.0;
  CLI::App* gen =
      app.add_subcommand("gen", "Generate a reproducible random problem");
  gen->add_option("--dim", gen_dim, "number of outcomes d");
  gen->add_option("--k", gen_k, "basis size K");
  gen->add_option("--connection", gen_connection, "e_as_nabla or m_as_nabla")
      ->check(CLI::IsMember({"e_as_nabla", "m_as_nabla"}));
  gen->add_option("--seed", gen_seed, "RNG seed");
  gen->add_option("--sigma", gen_sigma,
                  "log-space perturbation moving the target off-manifold");
  gen->add_option("--out", gen_out, "output path (default: stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (project->parsed()) return cmd_project(popt);
    if (bounds->parsed()) return cmd_bounds(bounds_path, bounds_resolution);
    if (oracle->parsed()) {
      if (oracle_resolution < 10) {
        throw ParseError("--resolution must be at least 10");
      }
      return cmd_oracle(oracle_path, oracle_resolution);
    }
    if (nmf_cmd->parsed()) {
      return cmd_nmf(nmf_path, nmf_rank, nmf_beta, nmf_tol, nmf_sweeps,
                     nmf_iters, nmf_prefix);
    }
    if (gen->parsed()) {
      return cmd_gen(gen_dim, gen_k, gen_connection, gen_seed, gen_sigma,
                     gen_out);
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  }
  return kExitInputError;
}
