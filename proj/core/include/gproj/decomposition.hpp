#pragma once

#include <cstddef>
#include <vector>

#include "gproj/projection.hpp"

namespace gproj {

// Dense nonnegative matrix with no all-zero column, stored row-major.
// Immutable once constructed; builders assemble the data vector first.
class NonnegativeMatrix {
 public:
  NonnegativeMatrix(std::size_t rows, std::size_t cols,
                    std::vector<double> data);
  static NonnegativeMatrix from_columns(
      const std::vector<std::vector<double>>& columns);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  double at(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }
  std::vector<double> column(std::size_t j) const;
  const std::vector<double>& data() const noexcept { return data_; }

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<double> data_;
};

// Outcome of a (partial or full) factorization X ~ P W: a column-stochastic
// dictionary P (d x K), column-stochastic weights W (K x N), the final
// divergence of every column fit, and the total objective after each
// weight-estimation sweep.
struct FactorizationResult {
  NonnegativeMatrix dictionary;
  NonnegativeMatrix weights;
  std::vector<double> column_divergences;  // KL(P w_j || x_j) per column
  std::vector<double> objective_log;       // total, one entry per sweep
};

struct NmfConfig {
  RunConfig run;                 // per-column projection settings
  double tol = 1e-9;             // relative objective change between sweeps
  std::size_t max_sweeps = 200;
};

// Normalize every column to a strictly positive distribution: divide by the
// column sum, lift entries below the probability floor, renormalize.
NonnegativeMatrix column_normalize(const NonnegativeMatrix& x);

// Interpret the columns of a column-stochastic matrix as basis members.
BasisSet basis_from_columns(const NonnegativeMatrix& p);

// Fixed-dictionary weight estimation: each column x_j of the
// column-stochastic X is projected onto the mixtures of P's columns by
// minimizing KL(P w || x_j), one convex problem per column.
FactorizationResult decompose_columns(const NonnegativeMatrix& x,
                                      const NonnegativeMatrix& p,
                                      const RunConfig& config);

// Alternating factorization demo. The weight step is the exact per-column
// projection above; the dictionary step is a heuristic multiplicative
// KL update followed by column renormalization, with no descent guarantee
// of its own. Stops when the objective settles or the sweep budget runs out.
FactorizationResult nmf(const NonnegativeMatrix& x, std::size_t k,
                        const NmfConfig& config);

}  // namespace gproj
