#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gproj/projection.hpp"

namespace gproj {

// Which criterion produced a bound. All bounds constrain f'(0) = beta/2;
// the iteration is locally stable when f'(0) stays strictly below them.
enum class BoundKind {
  K2AtOptimum,     // 2 / (w* (1-w*) g(w*)), needs the optimum
  K2Uniform,       // 2 / sup_w w (1-w) g(w), optimum-free
  EProjHellinger,  // 2 / squared Hellinger distance, closed form
  MProjPopoviciu,  // 32 / (range of log-ratio)^2, closed form
  GeneralK,        // 2 / (K max_k w_k* (1-w_k*) g_k), needs the optimum
};

const char* to_string(BoundKind k) noexcept;

struct StabilityReport {
  BoundKind kind;
  double bound_on_f_prime;  // +infinity means "no constraint"
  std::string inputs;       // short summary of the quantities involved
};

// K=2 threshold at a known optimum w* with pencil Fisher information g
// there: f'(0) < 2 / (w* (1-w*) g). Infinite when g = 0.
double bound_k2_at_optimum(double w_star, double g_at_star);

// Optimum-free K=2 threshold: 2 / sup_{w in (0,1)} w (1-w) g(w), with g the
// pair Fisher information for the given connection. The sup is located on a
// 1024-point grid and sharpened by golden-section refinement.
double bound_k2_uniform(const DiscreteDistribution& p1,
                        const DiscreteDistribution& p2, Connection c);

// Closed-form relaxation for e-projection (m-mixture pencil):
// 2 / sum_i (sqrt(p1_i) - sqrt(p2_i))^2. Never below 1.
double bound_e_projection(const DiscreteDistribution& p1,
                          const DiscreteDistribution& p2);

// Closed-form relaxation for m-projection (e-mixture pencil):
// 32 / (max_i a_i - min_i a_i)^2 with a_i = log(p1_i/p2_i).
double bound_m_projection(const DiscreteDistribution& p1,
                          const DiscreteDistribution& p2);

// General-K threshold at a known optimum: 2 / (K max_k w_k (1-w_k) g_k).
// g_per_k holds the Fisher information of the pencil through p_k and its
// antipode at w_star, evaluated at coordinate w_k.
double bound_general_K(const WeightVector& w_star,
                       const std::vector<double>& g_per_k);
double bound_general_K(const ProjectionProblem& problem,
                       const WeightVector& w_star);

// Fisher information of the one-dimensional family through basis member k
// and its antipode at w, evaluated at coordinate w_k. Mixture type follows
// the connection.
double pencil_fisher(const ProjectionProblem& problem, const WeightVector& w,
                     std::size_t k);
std::vector<double> pencil_fisher_per_basis(const ProjectionProblem& problem,
                                            const WeightVector& w);

// Default learning-speed parameter: bounds constrain f'(0) = beta/2, so take
// beta = 2 * 0.9 * (uniform K=2 bound) when that is finite, else 1.
double recommended_beta(const BasisSet& basis, Connection c);
double recommended_beta(const ProjectionProblem& problem);

// Every bound applicable to the problem, tightest first. Optimum-dependent
// kinds are included only when w_star is supplied (e.g. from an oracle).
std::vector<StabilityReport> stability_reports(
    const ProjectionProblem& problem,
    const std::optional<WeightVector>& w_star = std::nullopt);

}  // namespace gproj
