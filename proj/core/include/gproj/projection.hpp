#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "gproj/geometry.hpp"
#include "gproj/types.hpp"

namespace gproj {

// A projection instance: find the point of the submanifold spanned by the
// basis that minimizes the canonical divergence D(., target). The submanifold
// is flat in the connection dual to `connection`, so its points are
// m-mixtures when the e-connection is nabla and e-mixtures otherwise.
struct ProjectionProblem {
  ProjectionProblem(DiscreteDistribution target_, BasisSet basis_,
                    Connection connection_);

  DiscreteDistribution target;
  BasisSet basis;
  Connection connection;
};

// The multiplicative learning function f(gamma) = 2 / (1 + exp(-beta*gamma)).
// f(0) = 1, f is strictly increasing with range (0, 2), and f'(0) = beta/2
// is the quantity the stability bounds constrain.
class LearningFunction {
 public:
  explicit LearningFunction(double beta);

  double beta() const noexcept { return beta_; }
  double f_prime_at_zero() const noexcept { return beta_ / 2.0; }

 private:
  double beta_;
};

double f_eval(const LearningFunction& lf, double gamma);

// Stopping rule and bookkeeping for iterative runs. The residual is
// max_k |gamma_k|, which vanishes exactly at the projection.
struct RunConfig {
  double tol_gamma = 1e-10;
  std::size_t max_iters = 10000;
  LearningFunction learning{1.0};
  bool record_trace = false;
};

enum class StopReason {
  Converged,        // residual fell below tol_gamma
  IterationLimit,   // budget exhausted before convergence
};

const char* to_string(StopReason r) noexcept;

// State at one iterate. iter counts step applications; the initial point is
// iter 0.
struct TraceRecord {
  std::size_t iter;
  double divergence;      // D(q_hat, target)
  double max_abs_gamma;
  std::vector<double> weights;
  std::vector<double> gammas;
};

struct ConvergenceTrace {
  std::vector<TraceRecord> records;  // populated only when record_trace
  std::size_t iterations = 0;        // steps actually applied
  double final_divergence = 0.0;
  double final_max_abs_gamma = 0.0;
  StopReason reason = StopReason::Converged;
};

struct RunResult {
  WeightVector weights;
  ConvergenceTrace trace;
};

// The submanifold point q_hat at weights w, built in the coordinate that is
// affine for the dual connection.
DiscreteDistribution current_estimate(const ProjectionProblem& problem,
                                      const WeightVector& w);

// Pythagorean residuals gamma_k = D(q_hat,q) + D(p_k,q_hat) - D(p_k,q).
// All zero exactly when q_hat is the projection; the weighted sum
// sum_k w_k gamma_k vanishes identically.
std::vector<double> gamma_vector(const ProjectionProblem& problem,
                                 const WeightVector& w);

// The same residuals from coordinates alone: with theta the nabla-affine and
// eta the dual-affine chart,
//   gamma_k = sum_i (theta_i(q_hat) - theta_i(q_star)) *
//             (eta_i(q_hat) - eta_i(p_k)),
// where q_star is the true projection (weights w_star, e.g. from an oracle).
// Demonstrates that gamma depends only on submanifold points.
std::vector<double> gamma_via_coordinates(const ProjectionProblem& problem,
                                          const WeightVector& w,
                                          const WeightVector& w_star);

// One multiplicative update: w_k' = w_k f(gamma_k), then normalize.
WeightVector step_A(const ProjectionProblem& problem, const WeightVector& w,
                    const LearningFunction& lf);

// Iterate step_A from `initial` (uniform when absent) until the gamma
// residual falls below config.tol_gamma or the budget runs out.
RunResult run_A(const ProjectionProblem& problem, const RunConfig& config,
                const std::optional<WeightVector>& initial = std::nullopt);

}  // namespace gproj
