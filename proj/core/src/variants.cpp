#include "gproj/variants.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "run_loop.hpp"

namespace gproj {
namespace {

constexpr double kDegenerateGap = 1e-12;

void check_index(std::size_t k, std::size_t size) {
  if (k >= size) {
    throw OutOfRange("component index " + std::to_string(k) +
                     " out of range for " + std::to_string(size) + " weights");
  }
}

// Shortcut step size of the approximated component-wise variants.
double shortcut_delta(const ProjectionProblem& problem, const WeightVector& w,
                      std::size_t k, const LearningFunction& lf) {
  const double gamma_k = gamma_vector(problem, w)[k];
  return w[k] * (f_eval(lf, gamma_k) - 1.0);
}

// One full sweep of run_Ba or run_C; rule 1 when `rule1` is set.
WeightVector sweep_additive(const ProjectionProblem& problem, WeightVector w,
                            const VariantConfig& config, bool rule1) {
  for (std::size_t k = 0; k < w.size(); ++k) {
    for (std::size_t l = 0; l < config.inner_count; ++l) {
      double delta = shortcut_delta(problem, w, k, config.learning);
      if (rule1) {
        // Rule 1 requires w_k + delta < 1; f < 2 only guarantees that for
        // w_k <= 1/2, so cap the step just inside the simplex.
        const double cap = (1.0 - w[k]) * (1.0 - 1e-9);
        delta = std::min(delta, cap);
        w = step_update_rule1(w, k, delta);
      } else {
        w = step_update_rule2(w, k, delta);
      }
    }
  }
  return w;
}

WeightVector sweep_B(const ProjectionProblem& problem, WeightVector w,
                     const VariantConfig& config) {
  for (std::size_t k = 0; k < w.size(); ++k) {
    w = step_B(problem, w, k, config);
  }
  return w;
}

RunResult run_sweeps(const ProjectionProblem& problem,
                     const VariantConfig& config,
                     const std::optional<WeightVector>& initial,
                     WeightVector (*sweep)(const ProjectionProblem&,
                                           WeightVector,
                                           const VariantConfig&)) {
  WeightVector w0 =
      initial ? *initial : WeightVector::uniform(problem.basis.size());
  return detail::run_loop(problem, std::move(w0), config.tol_gamma,
                          config.max_sweeps, config.record_trace,
                          [&](const WeightVector& w) {
                            return sweep(problem, w, config);
                          });
}

}  // namespace

AntipodePoint antipode(const WeightVector& w, std::size_t k) {
  check_index(k, w.size());
  if (w[k] >= 1.0 - kDegenerateGap) {
    throw DegeneratePencil("weight " + std::to_string(k) +
                           " is too close to 1; the antipode is undefined");
  }
  const double rho = 1.0 / (1.0 - w[k]);
  std::vector<double> wa(w.size());
  for (std::size_t l = 0; l < w.size(); ++l) {
    wa[l] = l == k ? 0.0 : w[l] * rho;
  }
  return {std::move(wa), rho, k};
}

DiscreteDistribution antipode_distribution(const ProjectionProblem& problem,
                                           const WeightVector& w,
                                           std::size_t k) {
  return detail::mixture_in_dual_coordinate(
      problem.basis, antipode(w, k).weights_in_basis, problem.connection);
}

WeightVector step_B(const ProjectionProblem& problem, const WeightVector& w,
                    std::size_t k, const VariantConfig& config) {
  check_index(k, w.size());
  // Reduce to an exact two-point problem on the pencil {p_k, p_k-dagger}.
  // The pencil point at (omega, 1-omega) coincides with the full estimate at
  // the mapped-back weights, so the pencil residuals are the true ones.
  const DiscreteDistribution dagger = antipode_distribution(problem, w, k);
  const ProjectionProblem pencil(
      problem.target, BasisSet({problem.basis[k], dagger}),
      problem.connection);
  WeightVector omega(std::vector<double>{w[k], 1.0 - w[k]});
  for (std::size_t l = 0; l < config.inner_count; ++l) {
    omega = step_A(pencil, omega, config.learning);
  }
  const double scale = (1.0 - omega[0]) / (1.0 - w[k]);
  std::vector<double> next(w.size());
  for (std::size_t l = 0; l < w.size(); ++l) {
    next[l] = l == k ? omega[0] : w[l] * scale;
  }
  return WeightVector(std::move(next));
}

WeightVector step_update_rule1(const WeightVector& w, std::size_t k,
                               double delta_k) {
  check_index(k, w.size());
  const double wk = w[k] + delta_k;
  if (!std::isfinite(delta_k) || wk <= 0.0 || wk >= 1.0) {
    throw OutOfSimplex("rule-1 step " + std::to_string(delta_k) +
                       " moves weight " + std::to_string(k) +
                       " outside (0, 1)");
  }
  const double scale = 1.0 - delta_k / (1.0 - w[k]);
  std::vector<double> next(w.size());
  for (std::size_t l = 0; l < w.size(); ++l) {
    next[l] = l == k ? wk : w[l] * scale;
  }
  return WeightVector(std::move(next));
}

WeightVector step_update_rule2(const WeightVector& w, std::size_t k,
                               double delta_k) {
  check_index(k, w.size());
  if (!std::isfinite(delta_k) || 1.0 + delta_k <= 0.0 ||
      w[k] + delta_k <= 0.0) {
    throw OutOfSimplex("rule-2 step " + std::to_string(delta_k) +
                       " moves weight " + std::to_string(k) +
                       " outside (0, 1)");
  }
  const double scale = 1.0 / (1.0 + delta_k);
  std::vector<double> next(w.size());
  for (std::size_t l = 0; l < w.size(); ++l) {
    next[l] = l == k ? (w[k] + delta_k) * scale : w[l] * scale;
  }
  return WeightVector(std::move(next));
}

RunResult run_B(const ProjectionProblem& problem, const VariantConfig& config,
                const std::optional<WeightVector>& initial) {
  return run_sweeps(problem, config, initial, sweep_B);
}

RunResult run_Ba(const ProjectionProblem& problem, const VariantConfig& config,
                 const std::optional<WeightVector>& initial) {
  return run_sweeps(problem, config, initial,
                    [](const ProjectionProblem& pr, WeightVector w,
                       const VariantConfig& cfg) {
                      return sweep_additive(pr, std::move(w), cfg, true);
                    });
}

RunResult run_C(const ProjectionProblem& problem, const VariantConfig& config,
                const std::optional<WeightVector>& initial) {
  return run_sweeps(problem, config, initial,
                    [](const ProjectionProblem& pr, WeightVector w,
                       const VariantConfig& cfg) {
                      return sweep_additive(pr, std::move(w), cfg, false);
                    });
}

WeightVector iterate_Cb(const ProjectionProblem& problem,
                        const WeightVector& w, const LearningFunction& lf) {
  // One residual evaluation; every component's rule-2 change is computed
  // from it and the changes are summed before applying. Each per-component
  // change set sums to zero, so the final normalization only absorbs
  // rounding.
  const std::vector<double> gammas = gamma_vector(problem, w);
  std::vector<double> next(w.values());
  for (std::size_t k = 0; k < w.size(); ++k) {
    const double delta = w[k] * (f_eval(lf, gammas[k]) - 1.0);
    const double scale = delta / (1.0 + delta);
    for (std::size_t l = 0; l < w.size(); ++l) {
      next[l] += l == k ? (1.0 - w[k]) * scale : -w[l] * scale;
    }
  }
  return WeightVector::normalized(std::move(next));
}

RunResult run_Cb(const ProjectionProblem& problem, const VariantConfig& config,
                 const std::optional<WeightVector>& initial) {
  WeightVector w0 =
      initial ? *initial : WeightVector::uniform(problem.basis.size());
  return detail::run_loop(problem, std::move(w0), config.tol_gamma,
                          config.max_sweeps, config.record_trace,
                          [&](const WeightVector& w) {
                            return iterate_Cb(problem, w, config.learning);
                          });
}

std::vector<double> divergence_gradient(const ProjectionProblem& problem,
                                        const WeightVector& w) {
  const std::vector<double> gammas = gamma_vector(problem, w);
  std::vector<double> grad(w.size() - 1);
  for (std::size_t k = 0; k + 1 < w.size(); ++k) {
    grad[k] = gammas.back() - gammas[k];
  }
  return grad;
}

WeightVector gradient_step(const ProjectionProblem& problem,
                           const WeightVector& w, double lambda) {
  if (!std::isfinite(lambda) || lambda <= 0.0) {
    throw OutOfRange("gradient step size lambda must be positive");
  }
  const std::vector<double> gammas = gamma_vector(problem, w);
  std::vector<double> next(w.values());
  double moved = 0.0;
  for (std::size_t k = 0; k + 1 < w.size(); ++k) {
    const double delta = lambda * (gammas[k] - gammas.back());
    next[k] += delta;
    moved += delta;
  }
  next.back() -= moved;  // exact sum preservation in the reduced chart
  for (std::size_t k = 0; k < next.size(); ++k) {
    if (next[k] <= 0.0 || next[k] >= 1.0) {
      throw OutOfSimplex("gradient step pushed weight " + std::to_string(k) +
                         " outside (0, 1); reduce lambda");
    }
  }
  return WeightVector(std::move(next));
}

RunResult run_gradient(const ProjectionProblem& problem, double lambda,
                       const RunConfig& config,
                       const std::optional<WeightVector>& initial) {
  WeightVector w0 =
      initial ? *initial : WeightVector::uniform(problem.basis.size());
  return detail::run_loop(problem, std::move(w0), config.tol_gamma,
                          config.max_iters, config.record_trace,
                          [&](const WeightVector& w) {
                            return gradient_step(problem, w, lambda);
                          });
}

WeightVector step_A_rescaled(const ProjectionProblem& problem,
                             const WeightVector& w,
                             const LearningFunction& lf) {
  const std::vector<double> gammas = gamma_vector(problem, w);
  std::vector<double> next(w.size());
  for (std::size_t k = 0; k < w.size(); ++k) {
    next[k] = w[k] * f_eval(lf, gammas[k] / (1.0 - w[k]));
    if (next[k] < kWeightMin) {
      throw NumericalUnderflow("weight " + std::to_string(k) +
                               " underflowed in the rescaled update");
    }
  }
  return WeightVector::normalized(std::move(next));
}

RunResult run_A_rescaled(const ProjectionProblem& problem,
                         const RunConfig& config,
                         const std::optional<WeightVector>& initial) {
  WeightVector w0 =
      initial ? *initial : WeightVector::uniform(problem.basis.size());
  return detail::run_loop(problem, std::move(w0), config.tol_gamma,
                          config.max_iters, config.record_trace,
                          [&](const WeightVector& w) {
                            return step_A_rescaled(problem, w,
                                                   config.learning);
                          });
}

WeightVector boundary_safe_step(const ProjectionProblem& problem,
                                const WeightVector& w, double epsilon) {
  if (!std::isfinite(epsilon) || epsilon <= 0.0) {
    throw OutOfRange("boundary-safe step size epsilon must be positive");
  }
  const std::vector<double> gammas = gamma_vector(problem, w);
  double pos_sum = 0.0, neg_sum = 0.0;
  for (double g : gammas) {
    if (g > 0.0) pos_sum += g;
    if (g < 0.0) neg_sum += g;
  }
  // The weighted residual sum vanishes, so a nonzero residual vector has
  // entries of both signs; otherwise there is no direction to trade mass
  // along and the step is the identity.
  if (pos_sum == 0.0 || neg_sum == 0.0) return w;
  std::vector<double> next(w.values());
  for (std::size_t k = 0; k < w.size(); ++k) {
    if (gammas[k] > 0.0) {
      next[k] += epsilon * gammas[k] / pos_sum;
    } else if (gammas[k] < 0.0) {
      next[k] -= epsilon * gammas[k] / neg_sum;  // gamma_k/neg_sum > 0
    }
  }
  // Clamp into the closed simplex, then lift anything at the floor so the
  // result stays an interior point, and renormalize.
  for (double& v : next) {
    v = std::clamp(v, 0.0, 1.0);
    if (v < 2.0 * kWeightMin) v = 2.0 * kWeightMin;
  }
  return WeightVector::normalized(std::move(next));
}

RunResult run_boundary_safe(const ProjectionProblem& problem, double epsilon,
                            const RunConfig& config,
                            const std::optional<WeightVector>& initial) {
  WeightVector w0 =
      initial ? *initial : WeightVector::uniform(problem.basis.size());
  return detail::run_loop(problem, std::move(w0), config.tol_gamma,
                          config.max_iters, config.record_trace,
                          [&](const WeightVector& w) {
                            return boundary_safe_step(problem, w, epsilon);
                          });
}

}  // namespace gproj
