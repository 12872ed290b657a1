#include "gproj/projection.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "run_loop.hpp"

namespace gproj {
namespace detail {
namespace {

template <typename E>
[[noreturn]] void rethrow_at(const E& e, std::size_t iter) {
  throw E(std::string(e.what()) + " (iteration " + std::to_string(iter) + ")");
}

}  // namespace

RunResult run_loop(
    const ProjectionProblem& problem, WeightVector w, double tol_gamma,
    std::size_t max_iters, bool record_trace,
    const std::function<WeightVector(const WeightVector&)>& step) {
  ConvergenceTrace trace;
  std::size_t iter = 0;
  for (;; ++iter) {
    const std::vector<double> gammas = gamma_vector(problem, w);
    const double residual = max_abs(gammas);
    const double divergence = canonical_divergence(
        current_estimate(problem, w), problem.target, problem.connection);
    if (record_trace) {
      trace.records.push_back(
          {iter, divergence, residual, w.values(), gammas});
    }
    trace.iterations = iter;
    trace.final_divergence = divergence;
    trace.final_max_abs_gamma = residual;
    if (residual <= tol_gamma) {
      trace.reason = StopReason::Converged;
      break;
    }
    if (iter >= max_iters) {
      trace.reason = StopReason::IterationLimit;
      break;
    }
    try {
      w = step(w);
    } catch (const NumericalUnderflow& e) {
      rethrow_at(e, iter + 1);
    } catch (const OutOfSimplex& e) {
      rethrow_at(e, iter + 1);
    } catch (const DegeneratePencil& e) {
      rethrow_at(e, iter + 1);
    } catch (const Error& e) {
      rethrow_at(e, iter + 1);
    }
  }
  return {std::move(w), std::move(trace)};
}

}  // namespace detail

ProjectionProblem::ProjectionProblem(DiscreteDistribution target_,
                                     BasisSet basis_, Connection connection_)
    : target(std::move(target_)),
      basis(std::move(basis_)),
      connection(connection_) {
  if (target.dim() != basis.dim()) {
    throw DimensionMismatch("target has dimension " +
                            std::to_string(target.dim()) + ", basis has " +
                            std::to_string(basis.dim()));
  }
}

LearningFunction::LearningFunction(double beta) : beta_(beta) {
  if (!std::isfinite(beta) || beta <= 0.0) {
    throw OutOfRange("learning-speed parameter beta must be positive");
  }
}

double f_eval(const LearningFunction& lf, double gamma) {
  // 2 / (1 + exp(-x)) evaluated without overflowing for x << 0.
  const double x = lf.beta() * gamma;
  if (x >= 0.0) return 2.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return 2.0 * e / (1.0 + e);
}

const char* to_string(StopReason r) noexcept {
  return r == StopReason::Converged ? "converged" : "iteration-limit";
}

DiscreteDistribution current_estimate(const ProjectionProblem& problem,
                                      const WeightVector& w) {
  return problem.connection == Connection::EAsNabla
             ? m_mixture(problem.basis, w)
             : e_mixture(problem.basis, w);
}

std::vector<double> gamma_vector(const ProjectionProblem& problem,
                                 const WeightVector& w) {
  const Connection c = problem.connection;
  const DiscreteDistribution q_hat = current_estimate(problem, w);
  const double d_hat_target = canonical_divergence(q_hat, problem.target, c);
  std::vector<double> gammas(w.size());
  for (std::size_t k = 0; k < w.size(); ++k) {
    const DiscreteDistribution& pk = problem.basis[k];
    gammas[k] = d_hat_target + canonical_divergence(pk, q_hat, c) -
                canonical_divergence(pk, problem.target, c);
  }
  return gammas;
}

std::vector<double> gamma_via_coordinates(const ProjectionProblem& problem,
                                          const WeightVector& w,
                                          const WeightVector& w_star) {
  const bool e_nabla = problem.connection == Connection::EAsNabla;
  const auto theta = [&](const DiscreteDistribution& p) {
    return e_nabla ? to_e_coordinates(p) : to_m_coordinates(p);
  };
  const auto eta = [&](const DiscreteDistribution& p) {
    return e_nabla ? to_m_coordinates(p) : to_e_coordinates(p);
  };
  const DiscreteDistribution q_hat = current_estimate(problem, w);
  const DiscreteDistribution q_star = current_estimate(problem, w_star);
  const std::vector<double> th_hat = theta(q_hat).values;
  const std::vector<double> th_star = theta(q_star).values;
  const std::vector<double> eta_hat = eta(q_hat).values;
  std::vector<double> gammas(w.size());
  for (std::size_t k = 0; k < w.size(); ++k) {
    const std::vector<double> eta_k = eta(problem.basis[k]).values;
    double g = 0.0;
    for (std::size_t i = 0; i < th_hat.size(); ++i) {
      g += (th_hat[i] - th_star[i]) * (eta_hat[i] - eta_k[i]);
    }
    gammas[k] = g;
  }
  return gammas;
}

WeightVector step_A(const ProjectionProblem& problem, const WeightVector& w,
                    const LearningFunction& lf) {
  const std::vector<double> gammas = gamma_vector(problem, w);
  std::vector<double> next(w.size());
  for (std::size_t k = 0; k < w.size(); ++k) {
    next[k] = w[k] * f_eval(lf, gammas[k]);
    if (next[k] < kWeightMin) {
      throw NumericalUnderflow("weight " + std::to_string(k) +
                               " underflowed in the multiplicative update");
    }
  }
  return WeightVector::normalized(std::move(next));
}

RunResult run_A(const ProjectionProblem& problem, const RunConfig& config,
                const std::optional<WeightVector>& initial) {
  WeightVector w0 =
      initial ? *initial : WeightVector::uniform(problem.basis.size());
  return detail::run_loop(problem, std::move(w0), config.tol_gamma,
                          config.max_iters, config.record_trace,
                          [&](const WeightVector& w) {
                            return step_A(problem, w, config.learning);
                          });
}

}  // namespace gproj
