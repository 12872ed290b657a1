#include "gproj/types.hpp"

#include <cmath>
#include <string>

namespace gproj {
namespace {

// Renormalizing a floor-level entry can push it an ulp below kProbFloor;
// allow that much slack so such distributions remain valid.
constexpr double kFloorSlack = kProbFloor * (1.0 - 1e-9);

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

}  // namespace

DiscreteDistribution::DiscreteDistribution(std::vector<double> probs)
    : probs_(std::move(probs)) {
  if (probs_.size() < 2) {
    throw InvalidDistribution("distribution needs at least 2 outcomes, got " +
                              std::to_string(probs_.size()));
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < probs_.size(); ++i) {
    const double p = probs_[i];
    if (!std::isfinite(p)) {
      throw InvalidDistribution("entry " + std::to_string(i) +
                                " is not finite");
    }
    if (p < kFloorSlack) {
      throw ZeroProbability("entry " + std::to_string(i) + " (" + fmt(p) +
                            ") is below the probability floor 1e-12");
    }
    sum += p;
  }
  if (std::abs(sum - 1.0) > kSimplexSumTol) {
    throw InvalidDistribution("entries must sum to 1 within 1e-12 (got " +
                              fmt(sum) + ")");
  }
}

DiscreteDistribution DiscreteDistribution::normalized(
    std::vector<double> mass) {
  double sum = 0.0;
  for (double m : mass) sum += m;
  if (!(sum > 0.0) || !std::isfinite(sum)) {
    throw InvalidDistribution("mass vector has no finite positive total");
  }
  for (double& m : mass) m /= sum;
  return DiscreteDistribution(std::move(mass));
}

WeightVector::WeightVector(std::vector<double> w) : w_(std::move(w)) {
  if (w_.size() < 2) {
    throw OutOfSimplex("weight vector needs at least 2 entries, got " +
                       std::to_string(w_.size()));
  }
  double sum = 0.0;
  for (std::size_t k = 0; k < w_.size(); ++k) {
    if (!std::isfinite(w_[k]) || w_[k] < kWeightMin) {
      throw OutOfSimplex("weight " + std::to_string(k) + " (" + fmt(w_[k]) +
                         ") is not positive");
    }
    sum += w_[k];
  }
  if (std::abs(sum - 1.0) > kSimplexSumTol) {
    throw OutOfSimplex("weights must sum to 1 within 1e-12 (got " + fmt(sum) +
                       ")");
  }
}

WeightVector WeightVector::uniform(std::size_t k) {
  return WeightVector(std::vector<double>(k, 1.0 / static_cast<double>(k)));
}

WeightVector WeightVector::normalized(std::vector<double> w) {
  double sum = 0.0;
  for (double v : w) sum += v;
  if (!(sum > 0.0) || !std::isfinite(sum)) {
    throw OutOfSimplex("weights have no finite positive total");
  }
  for (double& v : w) v /= sum;
  return WeightVector(std::move(w));
}

BasisSet::BasisSet(std::vector<DiscreteDistribution> members)
    : members_(std::move(members)) {
  if (members_.size() < 2) {
    throw OutOfRange("basis needs at least 2 members, got " +
                     std::to_string(members_.size()));
  }
  const std::size_t d = members_.front().dim();
  for (std::size_t k = 1; k < members_.size(); ++k) {
    if (members_[k].dim() != d) {
      throw DimensionMismatch("basis member " + std::to_string(k) +
                              " has dimension " +
                              std::to_string(members_[k].dim()) +
                              ", expected " + std::to_string(d));
    }
  }
}

}  // namespace gproj
