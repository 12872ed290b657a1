#include "gproj/decomposition.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <utility>

#include "gproj/oracle.hpp"

namespace gproj {
namespace {

// Column -> distribution with the column index attached to any failure.
DiscreteDistribution column_distribution(const NonnegativeMatrix& m,
                                         std::size_t j, const char* label) {
  try {
    return DiscreteDistribution(m.column(j));
  } catch (const Error& e) {
    throw InvalidDistribution(std::string(label) + " column " +
                              std::to_string(j) + ": " + e.what());
  }
}

std::vector<double> normalized_column(std::vector<double> col,
                                      std::size_t j) {
  double sum = 0.0;
  for (double v : col) sum += v;
  if (!(sum > 0.0) || !std::isfinite(sum)) {
    throw ZeroColumn("column " + std::to_string(j) + " has no mass");
  }
  for (double& v : col) v /= sum;
  // Lift below-floor entries and spread the added mass over the column.
  double lifted = 0.0;
  for (double& v : col) {
    if (v < kProbFloor) {
      lifted += kProbFloor - v;
      v = kProbFloor;
    }
  }
  if (lifted > 0.0) {
    const double total = 1.0 + lifted;
    for (double& v : col) v /= total;
  }
  return col;
}

double total_objective(const std::vector<double>& per_column) {
  double s = 0.0;
  for (double d : per_column) s += d;
  return s;
}

// A column that uses only part of the dictionary drives the unused weights
// toward zero, where the bare iteration rightly reports underflow. The
// decomposition accepts such face-supported fits: weights that cross the
// floor are pinned there, and pinned components with negative residual no
// longer count toward the stopping rule (their residual cannot shrink).
constexpr double kColumnWeightFloor = 1e-12;

WeightVector project_column(const ProjectionProblem& problem,
                            const RunConfig& config,
                            const std::optional<WeightVector>& warm,
                            double* divergence_out) {
  WeightVector w = warm.value_or(WeightVector::uniform(problem.basis.size()));
  for (std::size_t iter = 0; iter < config.max_iters; ++iter) {
    const std::vector<double> gammas = gamma_vector(problem, w);
    double residual = 0.0;
    for (std::size_t k = 0; k < gammas.size(); ++k) {
      const bool pinned = w[k] <= 2.0 * kColumnWeightFloor && gammas[k] < 0.0;
      if (!pinned) residual = std::max(residual, std::abs(gammas[k]));
    }
    if (residual <= config.tol_gamma) break;

    std::vector<double> next;
    try {
      next = step_A(problem, w, config.learning).values();
    } catch (const NumericalUnderflow&) {
      break;  // w is still valid and already face-level accurate
    }
    double sum = 0.0;
    for (double& v : next) {
      if (v < kColumnWeightFloor) v = kColumnWeightFloor;
      sum += v;
    }
    for (double& v : next) v /= sum;
    w = WeightVector(std::move(next));
  }
  if (divergence_out != nullptr) {
    *divergence_out = projection_objective(problem, w);
  }
  return w;
}

}  // namespace

NonnegativeMatrix::NonnegativeMatrix(std::size_t rows, std::size_t cols,
                                     std::vector<double> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (rows_ < 2 || cols_ < 1) {
    throw OutOfRange("matrix must be at least 2 x 1, got " +
                     std::to_string(rows_) + " x " + std::to_string(cols_));
  }
  if (data_.size() != rows_ * cols_) {
    throw DimensionMismatch("matrix data has " +
                            std::to_string(data_.size()) + " entries, want " +
                            std::to_string(rows_ * cols_));
  }
  std::vector<char> has_mass(cols_, 0);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) {
      const double v = data_[i * cols_ + j];
      if (!std::isfinite(v) || v < 0.0) {
        throw OutOfRange("entry (" + std::to_string(i) + ", " +
                         std::to_string(j) + ") is negative or not finite");
      }
      if (v > 0.0) has_mass[j] = 1;
    }
  }
  for (std::size_t j = 0; j < cols_; ++j) {
    if (!has_mass[j]) {
      throw ZeroColumn("column " + std::to_string(j) + " is all zero");
    }
  }
}

NonnegativeMatrix NonnegativeMatrix::from_columns(
    const std::vector<std::vector<double>>& columns) {
  if (columns.empty()) {
    throw OutOfRange("matrix needs at least one column");
  }
  const std::size_t rows = columns.front().size();
  for (std::size_t j = 0; j < columns.size(); ++j) {
    if (columns[j].size() != rows) {
      throw DimensionMismatch("column " + std::to_string(j) + " has " +
                              std::to_string(columns[j].size()) +
                              " entries, expected " + std::to_string(rows));
    }
  }
  std::vector<double> data(rows * columns.size());
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < columns.size(); ++j) {
      data[i * columns.size() + j] = columns[j][i];
    }
  }
  return NonnegativeMatrix(rows, columns.size(), std::move(data));
}

std::vector<double> NonnegativeMatrix::column(std::size_t j) const {
  std::vector<double> col(rows_);
  for (std::size_t i = 0; i < rows_; ++i) col[i] = data_[i * cols_ + j];
  return col;
}

NonnegativeMatrix column_normalize(const NonnegativeMatrix& x) {
  std::vector<std::vector<double>> cols(x.cols());
  for (std::size_t j = 0; j < x.cols(); ++j) {
    cols[j] = normalized_column(x.column(j), j);
  }
  return NonnegativeMatrix::from_columns(cols);
}

BasisSet basis_from_columns(const NonnegativeMatrix& p) {
  std::vector<DiscreteDistribution> members;
  members.reserve(p.cols());
  for (std::size_t j = 0; j < p.cols(); ++j) {
    members.push_back(column_distribution(p, j, "dictionary"));
  }
  return BasisSet(std::move(members));
}

FactorizationResult decompose_columns(const NonnegativeMatrix& x,
                                      const NonnegativeMatrix& p,
                                      const RunConfig& config) {
  if (p.rows() != x.rows()) {
    throw DimensionMismatch("dictionary has " + std::to_string(p.rows()) +
                            " rows, data has " + std::to_string(x.rows()));
  }
  const BasisSet basis = basis_from_columns(p);
  std::vector<std::vector<double>> w_cols(x.cols());
  std::vector<double> divergences(x.cols());
  for (std::size_t j = 0; j < x.cols(); ++j) {
    const ProjectionProblem problem(column_distribution(x, j, "data"), basis,
                                    Connection::EAsNabla);
    w_cols[j] =
        project_column(problem, config, std::nullopt, &divergences[j]).values();
  }
  FactorizationResult out{p, NonnegativeMatrix::from_columns(w_cols),
                          std::move(divergences), {}};
  out.objective_log.push_back(total_objective(out.column_divergences));
  return out;
}

FactorizationResult nmf(const NonnegativeMatrix& x, std::size_t k,
                        const NmfConfig& config) {
  const std::size_t d = x.rows();
  const std::size_t n = x.cols();
  if (k < 2 || k >= std::min(d, n)) {
    throw RankTooLarge("rank " + std::to_string(k) +
                       " must satisfy 2 <= K < min(d, N) = " +
                       std::to_string(std::min(d, n)));
  }

  // Dictionary start: K evenly spaced data columns nudged 1% toward
  // uniform, which keeps them interior and distinct enough to fit.
  std::vector<std::vector<double>> p_cols(k);
  for (std::size_t c = 0; c < k; ++c) {
    std::vector<double> col = x.column(c * n / k);
    for (double& v : col) v = 0.99 * v + 0.01 / static_cast<double>(d);
    p_cols[c] = normalized_column(std::move(col), c);
  }
  NonnegativeMatrix p = NonnegativeMatrix::from_columns(p_cols);

  std::vector<std::optional<WeightVector>> warm(n);
  std::vector<std::vector<double>> w_cols(n);
  std::vector<double> divergences(n);
  std::vector<double> objective_log;

  for (std::size_t sweep = 0; sweep < config.max_sweeps; ++sweep) {
    // Weight sweep: exact per-column projection, warm-started so the
    // objective cannot back up between sweeps.
    const BasisSet basis = basis_from_columns(p);
    for (std::size_t j = 0; j < n; ++j) {
      const ProjectionProblem problem(column_distribution(x, j, "data"),
                                      basis, Connection::EAsNabla);
      const WeightVector w =
          project_column(problem, config.run, warm[j], &divergences[j]);
      warm[j] = w;
      w_cols[j] = w.values();
    }
    const double objective = total_objective(divergences);
    const bool settled =
        !objective_log.empty() &&
        std::abs(objective_log.back() - objective) <=
            config.tol * std::max(objective_log.back(), 1e-300);
    objective_log.push_back(objective);
    if (settled || sweep + 1 == config.max_sweeps) break;

    // Dictionary sweep: multiplicative KL update, then renormalize columns.
    std::vector<std::vector<double>> next_p(k);
    for (std::size_t c = 0; c < k; ++c) next_p[c].assign(d, 0.0);
    for (std::size_t i = 0; i < d; ++i) {
      // reconstruction row i: (P W)_ij
      std::vector<double> recon(n, 0.0);
      for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t c = 0; c < k; ++c) {
          recon[j] += p.at(i, c) * w_cols[j][c];
        }
      }
      for (std::size_t c = 0; c < k; ++c) {
        double num = 0.0, den = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
          num += w_cols[j][c] * x.at(i, j) / std::max(recon[j], 1e-300);
          den += w_cols[j][c];
        }
        next_p[c][i] = p.at(i, c) * num / std::max(den, 1e-300);
      }
    }
    for (std::size_t c = 0; c < k; ++c) {
      next_p[c] = normalized_column(std::move(next_p[c]), c);
    }
    p = NonnegativeMatrix::from_columns(next_p);
  }

  return {std::move(p), NonnegativeMatrix::from_columns(w_cols),
          std::move(divergences), std::move(objective_log)};
}

}  // namespace gproj
