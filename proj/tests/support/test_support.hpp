#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <random>
#include <vector>

#include "gproj/gproj.hpp"

namespace gproj::testsupport {

using Rng = std::mt19937_64;

// Random interior distribution: entries drawn uniformly from [low, 1] and
// normalized, so every probability is at least low / d.
DiscreteDistribution random_distribution(Rng& rng, std::size_t d, double low = 0.05);

// Random interior weight vector with every entry at least `low` (after
// normalization this is guaranteed by construction).
WeightVector random_weights(Rng& rng, std::size_t k, double low = 0.1);

// Random basis whose members are pairwise separated by at least
// `min_separation` in the L1 distance.  Resamples until satisfied.
BasisSet random_basis(Rng& rng, std::size_t k, std::size_t d,
                      double low = 0.05, double min_separation = 0.1);

// A projection problem together with the exact optimal weights.
struct Instance {
  ProjectionProblem problem;
  WeightVector w_true;
};

// Target placed exactly on the weighted-combination submanifold, so the
// projection returns the target itself and w_true is optimal with zero
// divergence.
Instance on_manifold_instance(Rng& rng, std::size_t k, std::size_t d, Connection connection);

// Target moved off the submanifold while keeping w_true optimal: the
// nabla-affine coordinates of the target are displaced along a direction
// orthogonal to the tangent directions eta(p_k) - eta(q_hat) at the optimum.
// The added divergence term is then orthogonal in the generalized
// Pythagorean sense and the minimizer does not move.  Requires d > k.
Instance off_manifold_instance(Rng& rng, std::size_t k, std::size_t d,
                               Connection connection, double scale);

// Symmetric difference quotient (f(h) - f(-h)) / (2h).
double central_difference(const std::function<double(double)>& f, double h);

// Random direction with entries summing to zero and unit L2 norm; used to
// perturb weight vectors without leaving the simplex hyperplane.
std::vector<double> zero_sum_unit(Rng& rng, std::size_t k);

// w + epsilon * v, validated as a weight vector.
WeightVector perturbed_weights(const WeightVector& w, const std::vector<double>& v, double epsilon);

}  // namespace gproj::testsupport
