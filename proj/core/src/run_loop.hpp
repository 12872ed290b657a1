#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <string>

#include "gproj/projection.hpp"

namespace gproj::detail {

// Shared driver for all iterative variants: record -> test residual ->
// step. `step` maps the current weights to the next iterate; any library
// error it throws is rethrown with the iteration index appended.
RunResult run_loop(const ProjectionProblem& problem, WeightVector w,
                   double tol_gamma, std::size_t max_iters, bool record_trace,
                   const std::function<WeightVector(const WeightVector&)>& step);

inline double max_abs(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace gproj::detail
