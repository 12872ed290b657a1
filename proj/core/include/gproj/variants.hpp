#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "gproj/projection.hpp"

namespace gproj {

// The boundary point p_k-dagger where the line from p_k through the current
// estimate leaves the submanifold: in basis weights it has k-th entry 0 and
// l-th entry w_l / (1 - w_k). rho = 1/(1 - w_k) is the extension factor.
// Held as a raw vector because the k-th weight is exactly zero.
struct AntipodePoint {
  std::vector<double> weights_in_basis;
  double rho;
  std::size_t excluded;
};

// Knobs for the component-wise variants: L inner updates per component,
// sweep budget, and the shared learning function / residual tolerance.
struct VariantConfig {
  std::size_t inner_count = 1;  // L
  LearningFunction learning{1.0};
  double tol_gamma = 1e-10;
  std::size_t max_sweeps = 10000;
  bool record_trace = false;
};

// Antipode weights of component k at the current w. Requires w_k bounded
// away from 1, else the pencil through p_k degenerates.
AntipodePoint antipode(const WeightVector& w, std::size_t k);

// The antipode as a manifold point: the dual-coordinate mixture of the basis
// at the antipode weights.
DiscreteDistribution antipode_distribution(const ProjectionProblem& problem,
                                           const WeightVector& w,
                                           std::size_t k);

// Exact component-wise update: L iterations of the two-point algorithm on
// the pencil {p_k, p_k-dagger}, mapped back to the full weight simplex via
// w_k'' = omega, w_l'' = ((1 - omega) / (1 - w_k)) w_l.
WeightVector step_B(const ProjectionProblem& problem, const WeightVector& w,
                    std::size_t k, const VariantConfig& config);

// Additive component update, renormalizing the other weights on the pencil:
// w_k'' = w_k + delta, w_l'' = w_l (1 - delta/(1 - w_k)). Exact on the
// simplex; requires w_k + delta in (0, 1).
WeightVector step_update_rule1(const WeightVector& w, std::size_t k,
                               double delta_k);

// Additive component update with global renormalization:
// w_k'' = (w_k + delta)/(1 + delta), w_l'' = w_l/(1 + delta). First-order
// equivalent to rule 1 with the step shortened by the factor (1 - w_k).
WeightVector step_update_rule2(const WeightVector& w, std::size_t k,
                               double delta_k);

// Sweeping drivers. One outer iteration is a full sweep k = 1..K; each
// component receives config.inner_count inner updates with the residual
// recomputed every time.
//   run_B  — exact pencil reduction (step_B) per component
//   run_Ba — rule 1 with the shortcut delta_k = w_k (f(gamma_k) - 1)
//   run_C  — rule 2 with the same shortcut
RunResult run_B(const ProjectionProblem& problem, const VariantConfig& config,
                const std::optional<WeightVector>& initial = std::nullopt);
RunResult run_Ba(const ProjectionProblem& problem, const VariantConfig& config,
                 const std::optional<WeightVector>& initial = std::nullopt);
RunResult run_C(const ProjectionProblem& problem, const VariantConfig& config,
                const std::optional<WeightVector>& initial = std::nullopt);

// Batch variant: one residual evaluation per iteration, all per-component
// rule-2 changes computed from it, summed, applied at once, normalized.
// First-order equivalent to step_A near the fixed point.
WeightVector iterate_Cb(const ProjectionProblem& problem,
                        const WeightVector& w, const LearningFunction& lf);
RunResult run_Cb(const ProjectionProblem& problem, const VariantConfig& config,
                 const std::optional<WeightVector>& initial = std::nullopt);

// Gradient of the divergence in the reduced chart (w_K eliminated):
// dD/dw_k = gamma_K - gamma_k for k = 1..K-1.
std::vector<double> divergence_gradient(const ProjectionProblem& problem,
                                        const WeightVector& w);

// Plain gradient descent in the reduced chart: delta_k = lambda (gamma_k -
// gamma_K) for k < K and delta_K balances the sum exactly.
WeightVector gradient_step(const ProjectionProblem& problem,
                           const WeightVector& w, double lambda);
RunResult run_gradient(const ProjectionProblem& problem, double lambda,
                       const RunConfig& config,
                       const std::optional<WeightVector>& initial = std::nullopt);

// Multiplicative update with the argument rescaled per component:
// w_k' = w_k f(gamma_k / (1 - w_k)), then normalize. Same fixed points as
// step_A.
WeightVector step_A_rescaled(const ProjectionProblem& problem,
                             const WeightVector& w,
                             const LearningFunction& lf);
RunResult run_A_rescaled(const ProjectionProblem& problem,
                         const RunConfig& config,
                         const std::optional<WeightVector>& initial = std::nullopt);

// Additive update that can leave the boundary: weights with positive
// residual gain epsilon * gamma_k / sum of positive residuals, weights with
// negative residual lose the mirror amount; the result is clamped into the
// simplex and renormalized. Identity when all residuals vanish. No
// convergence guarantee.
WeightVector boundary_safe_step(const ProjectionProblem& problem,
                                const WeightVector& w, double epsilon);
RunResult run_boundary_safe(const ProjectionProblem& problem, double epsilon,
                            const RunConfig& config,
                            const std::optional<WeightVector>& initial = std::nullopt);

}  // namespace gproj
