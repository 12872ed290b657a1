#pragma once

#include <cstddef>
#include <vector>

#include "gproj/errors.hpp"

namespace gproj {

// Smallest admissible probability. Every distribution must be an interior
// point of the simplex; entries below the floor are rejected, not smoothed.
inline constexpr double kProbFloor = 1e-12;

// Underflow guard for mixture weights. Multiplicative updates cannot produce
// exact zeros, so this only catches runaway shrinkage.
inline constexpr double kWeightMin = 1e-300;

// Tolerance for "sums to one" checks.
inline constexpr double kSimplexSumTol = 1e-12;

// Which of the two dual affine connections plays the role of nabla. The
// projection is always along nabla onto a submanifold that is flat in the
// dual connection.
enum class Connection {
  EAsNabla,  // e-projection onto an m-autoparallel submanifold
  MAsNabla,  // m-projection onto an e-autoparallel submanifold
};

constexpr Connection dual(Connection c) {
  return c == Connection::EAsNabla ? Connection::MAsNabla
                                   : Connection::EAsNabla;
}

// A strictly positive probability vector over d >= 2 outcomes.
class DiscreteDistribution {
 public:
  // Validates length, positivity (>= kProbFloor) and unit sum.
  explicit DiscreteDistribution(std::vector<double> probs);

  // Rescales a positive mass vector to unit sum, then validates.
  static DiscreteDistribution normalized(std::vector<double> mass);

  std::size_t dim() const noexcept { return probs_.size(); }
  double operator[](std::size_t i) const { return probs_[i]; }
  const std::vector<double>& probs() const noexcept { return probs_; }

  bool operator==(const DiscreteDistribution&) const = default;

 private:
  std::vector<double> probs_;
};

// A point on the open weight simplex: K >= 2 positive entries summing to 1.
class WeightVector {
 public:
  explicit WeightVector(std::vector<double> w);

  static WeightVector uniform(std::size_t k);
  static WeightVector normalized(std::vector<double> w);

  std::size_t size() const noexcept { return w_.size(); }
  double operator[](std::size_t k) const { return w_[k]; }
  const std::vector<double>& values() const noexcept { return w_; }

  bool operator==(const WeightVector&) const = default;

 private:
  std::vector<double> w_;
};

// The K >= 2 distributions spanning the autoparallel submanifold.
class BasisSet {
 public:
  explicit BasisSet(std::vector<DiscreteDistribution> members);

  std::size_t size() const noexcept { return members_.size(); }
  std::size_t dim() const noexcept { return members_.front().dim(); }
  const DiscreteDistribution& operator[](std::size_t k) const {
    return members_[k];
  }
  const std::vector<DiscreteDistribution>& members() const noexcept {
    return members_;
  }

 private:
  std::vector<DiscreteDistribution> members_;
};

enum class CoordinateKind { ECoord, MCoord };

// d-1 free coordinates of a distribution, natural (log-ratio) or expectation
// (probability) parameters. The last outcome is the reference.
struct CoordinateVector {
  std::vector<double> values;
  CoordinateKind kind;
};

}  // namespace gproj
