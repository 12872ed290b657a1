#include "gproj/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <string>
#include <utility>

namespace gproj {
namespace {

constexpr double kEdge = 1e-9;       // keep line searches inside the open simplex
constexpr double kGoldenTol = 1e-12;
constexpr double kRefineTol = 1e-8;
constexpr double kLatticeBudget = 1e7;

// Golden-section minimization over [a, b]; returns the bracket midpoint.
template <typename F>
double golden_min(F&& f, double a, double b, double tol) {
  constexpr double inv_phi = 0.6180339887498949;
  double x1 = b - inv_phi * (b - a);
  double x2 = a + inv_phi * (b - a);
  double f1 = f(x1), f2 = f(x2);
  while (b - a > tol) {
    if (f1 > f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = f(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = f(x1);
    }
  }
  return 0.5 * (a + b);
}

double lattice_size(std::size_t resolution, std::size_t K) {
  // Compositions of `resolution` into K positive parts: C(res-1, K-1).
  double n = 1.0;
  for (std::size_t j = 1; j < K; ++j) {
    n *= static_cast<double>(resolution - j) / static_cast<double>(j);
  }
  return n;
}

// Point on the pencil from vertex k through w, at coordinate t: the k-th
// weight becomes t and the others keep their mutual proportions.
std::vector<double> pencil_point(const std::vector<double>& w, std::size_t k,
                                 double t) {
  const double scale = (1.0 - t) / (1.0 - w[k]);
  std::vector<double> out(w.size());
  for (std::size_t l = 0; l < w.size(); ++l) {
    out[l] = l == k ? t : w[l] * scale;
  }
  return out;
}

}  // namespace

double projection_objective(const ProjectionProblem& problem,
                            const WeightVector& w) {
  return canonical_divergence(current_estimate(problem, w), problem.target,
                              problem.connection);
}

OracleSolution oracle_k2(const ProjectionProblem& problem) {
  if (problem.basis.size() != 2) {
    throw OutOfRange("oracle_k2 handles exactly 2 basis members, got " +
                     std::to_string(problem.basis.size()));
  }
  std::size_t evals = 0;
  const auto objective = [&](double w1) {
    ++evals;
    return projection_objective(problem,
                                WeightVector({w1, 1.0 - w1}));
  };
  const double w1 = golden_min(objective, kEdge, 1.0 - kEdge, kGoldenTol);
  WeightVector w_star({w1, 1.0 - w1});
  const double d = projection_objective(problem, w_star);
  return {std::move(w_star), d, OracleMethod::GoldenK2, kGoldenTol, evals};
}

OracleSolution oracle_grid(const ProjectionProblem& problem,
                           std::size_t resolution) {
  const std::size_t K = problem.basis.size();
  if (K > 5) {
    throw OutOfRange("oracle_grid handles K <= 5, got " + std::to_string(K));
  }
  if (resolution < 10) {
    throw OutOfRange("oracle_grid needs resolution >= 10, got " +
                     std::to_string(resolution));
  }
  if (lattice_size(resolution, K) > kLatticeBudget) {
    throw BudgetExceeded("lattice for resolution " +
                         std::to_string(resolution) + ", K = " +
                         std::to_string(K) + " exceeds 1e7 points");
  }

  std::size_t evals = 0;
  const auto objective_raw = [&](const std::vector<double>& w) {
    ++evals;
    return projection_objective(problem, WeightVector(w));
  };

  // Exhaustive pass over the compositions of `resolution` into K positive
  // parts (n_1, ..., n_K), visiting each lattice point once.
  std::vector<double> best_w;
  double best_d = std::numeric_limits<double>::infinity();
  const double res = static_cast<double>(resolution);
  std::vector<double> w(K);
  const std::function<void(std::size_t, std::size_t)> visit =
      [&](std::size_t k, std::size_t left) {
        if (k + 1 == K) {
          w[k] = static_cast<double>(left) / res;
          const double d = objective_raw(w);
          if (d < best_d) {
            best_d = d;
            best_w = w;
          }
          return;
        }
        // leave at least one unit for each remaining weight
        for (std::size_t nk = 1; nk + (K - k - 1) <= left; ++nk) {
          w[k] = static_cast<double>(nk) / res;
          visit(k + 1, left - nk);
        }
      };
  visit(0, resolution);

  // Sharpen with golden-section passes along the vertex pencils; accept a
  // line minimum only when it improves, so every pass descends. Pencil
  // passes alone stall inside curved valleys, so each pass ends with one
  // more line search along its own net movement.
  for (int pass = 0; pass < 500; ++pass) {
    const std::vector<double> start = best_w;
    double moved = 0.0;
    for (std::size_t k = 0; k < K; ++k) {
      const std::vector<double> base = best_w;
      const auto line = [&](double t) {
        return objective_raw(pencil_point(base, k, t));
      };
      const double t = golden_min(line, kEdge, 1.0 - kEdge, kGoldenTol);
      std::vector<double> cand = pencil_point(base, k, t);
      const double d = objective_raw(cand);
      if (d < best_d) {
        moved = std::max(moved, std::abs(cand[k] - base[k]));
        best_d = d;
        best_w = std::move(cand);
      }
    }

    // Acceleration direction: where the whole pass went. It is zero-sum up
    // to rounding, so points on the ray are renormalized before evaluation.
    std::vector<double> u(K);
    double u_norm = 0.0;
    for (std::size_t k = 0; k < K; ++k) {
      u[k] = best_w[k] - start[k];
      u_norm = std::max(u_norm, std::abs(u[k]));
    }
    if (u_norm > 0.0) {
      double t_max = std::numeric_limits<double>::infinity();
      for (std::size_t k = 0; k < K; ++k) {
        if (u[k] < 0.0) t_max = std::min(t_max, (best_w[k] - kEdge) / -u[k]);
        if (u[k] > 0.0) {
          t_max = std::min(t_max, (1.0 - kEdge - best_w[k]) / u[k]);
        }
      }
      if (std::isfinite(t_max) && t_max > 0.0) {
        const std::vector<double> base = best_w;
        const auto point_at = [&](double t) {
          std::vector<double> cand(K);
          double sum = 0.0;
          for (std::size_t k = 0; k < K; ++k) {
            cand[k] = base[k] + t * u[k];
            sum += cand[k];
          }
          for (double& v : cand) v /= sum;
          return cand;
        };
        const double t =
            golden_min([&](double t) { return objective_raw(point_at(t)); },
                       0.0, t_max, kGoldenTol);
        std::vector<double> cand = point_at(t);
        const double d = objective_raw(cand);
        if (d < best_d) {
          for (std::size_t k = 0; k < K; ++k) {
            moved = std::max(moved, std::abs(cand[k] - base[k]));
          }
          best_d = d;
          best_w = std::move(cand);
        }
      }
    }
    if (moved < kRefineTol) break;
  }

  return {WeightVector(best_w), best_d, OracleMethod::Grid, kRefineTol, evals};
}

}  // namespace gproj
