#pragma once

#include <cstddef>

#include "gproj/projection.hpp"

namespace gproj {

// Ground-truth solvers that minimize the divergence directly, without the
// residual machinery they are used to validate.

enum class OracleMethod { GoldenK2, Grid };

struct OracleSolution {
  WeightVector w_star;
  double divergence_at_star;
  OracleMethod method;
  double w_tolerance;       // localization tolerance in weight space
  std::size_t evaluations;  // objective evaluations spent
};

// The quantity every solver minimizes: D(q_hat(w), target) in the problem's
// orientation. Convex along any line in weight space because the estimate
// is affine in the dual coordinate.
double projection_objective(const ProjectionProblem& problem,
                            const WeightVector& w);

// K = 2 only: golden-section search over w_1 on [1e-9, 1 - 1e-9] until the
// bracket is narrower than 1e-12.
OracleSolution oracle_k2(const ProjectionProblem& problem);

// Any K up to 5: exhaustive search on the simplex lattice
// {w_k = n_k / resolution, n_k >= 1}, followed by coordinate-wise
// golden-section passes along vertex pencils until the weights move less
// than 1e-8 per pass.
OracleSolution oracle_grid(const ProjectionProblem& problem,
                           std::size_t resolution);

}  // namespace gproj
