#include "gproj/stability.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "gproj/variants.hpp"

namespace gproj {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", x);
  return buf;
}

// Golden-section maximization of a unimodal-enough objective on [a, b].
template <typename F>
double golden_max(F&& f, double a, double b, double tol) {
  constexpr double inv_phi = 0.6180339887498949;
  double x1 = b - inv_phi * (b - a);
  double x2 = a + inv_phi * (b - a);
  double f1 = f(x1), f2 = f(x2);
  while (b - a > tol) {
    if (f1 < f2) {
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
  return f(0.5 * (a + b));
}

double pair_fisher(const DiscreteDistribution& p1,
                   const DiscreteDistribution& p2, double w, Connection c) {
  return c == Connection::EAsNabla ? fisher_m_pair(p1, p2, w)
                                   : fisher_e_pair(p1, p2, w);
}

}  // namespace

const char* to_string(BoundKind k) noexcept {
  switch (k) {
    case BoundKind::K2AtOptimum:
      return "k2-at-optimum";
    case BoundKind::K2Uniform:
      return "k2-uniform";
    case BoundKind::EProjHellinger:
      return "e-projection-hellinger";
    case BoundKind::MProjPopoviciu:
      return "m-projection-popoviciu";
    case BoundKind::GeneralK:
      return "general-k";
  }
  return "unknown";
}

double bound_k2_at_optimum(double w_star, double g_at_star) {
  if (!std::isfinite(w_star) || w_star <= 0.0 || w_star >= 1.0) {
    throw OutOfRange("optimal weight must lie strictly inside (0, 1)");
  }
  if (!std::isfinite(g_at_star) || g_at_star < 0.0) {
    throw OutOfRange("Fisher information must be nonnegative");
  }
  const double denom = w_star * (1.0 - w_star) * g_at_star;
  return denom == 0.0 ? kInf : 2.0 / denom;
}

double bound_k2_uniform(const DiscreteDistribution& p1,
                        const DiscreteDistribution& p2, Connection c) {
  const auto phi = [&](double w) {
    return w * (1.0 - w) * pair_fisher(p1, p2, w, c);
  };
  // Locate the grid cell holding the max, then sharpen inside it. phi
  // vanishes at both ends, so the maximizer is interior.
  constexpr int n = 1024;
  int best = 0;
  double best_val = -1.0;
  for (int j = 0; j < n; ++j) {
    const double w = (j + 0.5) / n;
    const double v = phi(w);
    if (v > best_val) {
      best_val = v;
      best = j;
    }
  }
  const double lo = std::max(1e-12, (best - 0.5) / n);
  const double hi = std::min(1.0 - 1e-12, (best + 1.5) / n);
  const double sup = std::max(best_val, golden_max(phi, lo, hi, 1e-10));
  return sup <= 0.0 ? kInf : 2.0 / sup;
}

double bound_e_projection(const DiscreteDistribution& p1,
                          const DiscreteDistribution& p2) {
  const double h2 = hellinger_sq(p1, p2);
  return h2 == 0.0 ? kInf : 2.0 / h2;
}

double bound_m_projection(const DiscreteDistribution& p1,
                          const DiscreteDistribution& p2) {
  if (p1.dim() != p2.dim()) {
    throw DimensionMismatch("bound_m_projection: dimensions do not match");
  }
  // Range of the log-ratio a_i = log(p1_i/p2_i).
  double lo = kInf, hi = -kInf;
  for (std::size_t i = 0; i < p1.dim(); ++i) {
    const double a = std::log(p1[i]) - std::log(p2[i]);
    lo = std::min(lo, a);
    hi = std::max(hi, a);
  }
  const double range = hi - lo;
  return range == 0.0 ? kInf : 32.0 / (range * range);
}

double bound_general_K(const WeightVector& w_star,
                       const std::vector<double>& g_per_k) {
  if (g_per_k.size() != w_star.size()) {
    throw DimensionMismatch("bound_general_K: " +
                            std::to_string(g_per_k.size()) +
                            " Fisher values for " +
                            std::to_string(w_star.size()) + " weights");
  }
  double worst = 0.0;
  for (std::size_t k = 0; k < w_star.size(); ++k) {
    if (!std::isfinite(g_per_k[k]) || g_per_k[k] < 0.0) {
      throw OutOfRange("Fisher information must be nonnegative");
    }
    worst = std::max(worst, w_star[k] * (1.0 - w_star[k]) * g_per_k[k]);
  }
  return worst == 0.0 ? kInf
                      : 2.0 / (static_cast<double>(w_star.size()) * worst);
}

double bound_general_K(const ProjectionProblem& problem,
                       const WeightVector& w_star) {
  return bound_general_K(w_star, pencil_fisher_per_basis(problem, w_star));
}

double pencil_fisher(const ProjectionProblem& problem, const WeightVector& w,
                     std::size_t k) {
  const DiscreteDistribution dagger = antipode_distribution(problem, w, k);
  return pair_fisher(problem.basis[k], dagger, w[k], problem.connection);
}

std::vector<double> pencil_fisher_per_basis(const ProjectionProblem& problem,
                                            const WeightVector& w) {
  std::vector<double> g(w.size());
  for (std::size_t k = 0; k < w.size(); ++k) {
    g[k] = pencil_fisher(problem, w, k);
  }
  return g;
}

double recommended_beta(const BasisSet& basis, Connection c) {
  if (basis.size() != 2) return 1.0;
  const double bound = bound_k2_uniform(basis[0], basis[1], c);
  if (!std::isfinite(bound)) return 1.0;
  return 2.0 * 0.9 * bound;  // f'(0) = beta/2 must stay below the bound
}

double recommended_beta(const ProjectionProblem& problem) {
  return recommended_beta(problem.basis, problem.connection);
}

std::vector<StabilityReport> stability_reports(
    const ProjectionProblem& problem,
    const std::optional<WeightVector>& w_star) {
  std::vector<StabilityReport> out;
  const BasisSet& basis = problem.basis;
  if (basis.size() == 2) {
    if (problem.connection == Connection::EAsNabla) {
      out.push_back({BoundKind::EProjHellinger,
                     bound_e_projection(basis[0], basis[1]),
                     "hellinger_sq = " + fmt(hellinger_sq(basis[0], basis[1]))});
    } else {
      out.push_back({BoundKind::MProjPopoviciu,
                     bound_m_projection(basis[0], basis[1]),
                     "log-ratio range over outcomes"});
    }
    out.push_back({BoundKind::K2Uniform,
                   bound_k2_uniform(basis[0], basis[1], problem.connection),
                   "sup of w(1-w)g(w) over (0,1)"});
    if (w_star) {
      const double g = pencil_fisher(problem, *w_star, 0);
      out.push_back({BoundKind::K2AtOptimum,
                     bound_k2_at_optimum((*w_star)[0], g),
                     "w* = " + fmt((*w_star)[0]) + ", g(w*) = " + fmt(g)});
    }
  }
  if (w_star) {
    out.push_back({BoundKind::GeneralK, bound_general_K(problem, *w_star),
                   "pencil Fisher information at w*, K = " +
                       std::to_string(basis.size())});
  }
  std::sort(out.begin(), out.end(),
            [](const StabilityReport& a, const StabilityReport& b) {
              return a.bound_on_f_prime < b.bound_on_f_prime;
            });
  return out;
}

}  // namespace gproj
