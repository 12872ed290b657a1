#include "gproj/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace gproj {
namespace {

void check_same_dim(const DiscreteDistribution& p, const DiscreteDistribution& q,
                    const char* op) {
  if (p.dim() != q.dim()) {
    throw DimensionMismatch(std::string(op) + ": dimensions " +
                            std::to_string(p.dim()) + " and " +
                            std::to_string(q.dim()) + " do not match");
  }
}

void check_unit_interval(double w, const char* op) {
  if (!std::isfinite(w) || w < 0.0 || w > 1.0) {
    throw OutOfRange(std::string(op) + ": w must lie in [0, 1]");
  }
}

}  // namespace

CoordinateVector to_e_coordinates(const DiscreteDistribution& p) {
  const auto& q = p.probs();
  const double log_ref = std::log(q.back());
  std::vector<double> xi(q.size() - 1);
  for (std::size_t i = 0; i + 1 < q.size(); ++i) {
    xi[i] = std::log(q[i]) - log_ref;
  }
  return {std::move(xi), CoordinateKind::ECoord};
}

CoordinateVector to_m_coordinates(const DiscreteDistribution& p) {
  const auto& q = p.probs();
  return {std::vector<double>(q.begin(), q.end() - 1), CoordinateKind::MCoord};
}

DiscreteDistribution from_e_coordinates(const CoordinateVector& c) {
  if (c.kind != CoordinateKind::ECoord) {
    throw InvalidCoordinates("from_e_coordinates: expected e-coordinates");
  }
  // The reference outcome has implicit coordinate 0; shift by the maximum so
  // the exponentials cannot overflow.
  double shift = 0.0;
  for (double v : c.values) {
    if (!std::isfinite(v)) {
      throw InvalidCoordinates("from_e_coordinates: non-finite coordinate");
    }
    shift = std::max(shift, v);
  }
  std::vector<double> p(c.values.size() + 1);
  for (std::size_t i = 0; i < c.values.size(); ++i) {
    p[i] = std::exp(c.values[i] - shift);
  }
  p.back() = std::exp(-shift);
  return DiscreteDistribution::normalized(std::move(p));
}

DiscreteDistribution from_m_coordinates(const CoordinateVector& c) {
  if (c.kind != CoordinateKind::MCoord) {
    throw InvalidCoordinates("from_m_coordinates: expected m-coordinates");
  }
  double sum = 0.0;
  for (double v : c.values) {
    if (!std::isfinite(v) || v <= 0.0 || v >= 1.0) {
      throw InvalidCoordinates(
          "from_m_coordinates: coordinates must lie in (0, 1)");
    }
    sum += v;
  }
  if (sum >= 1.0) {
    throw InvalidCoordinates("from_m_coordinates: coordinates sum to >= 1");
  }
  std::vector<double> p(c.values);
  p.push_back(1.0 - sum);
  return DiscreteDistribution(std::move(p));
}

Potentials potentials(const DiscreteDistribution& p) {
  const auto& q = p.probs();
  double phi = 0.0;
  for (double qi : q) phi += qi * std::log(qi);
  return {-std::log(q.back()), phi};
}

double kl_divergence(const DiscreteDistribution& p,
                     const DiscreteDistribution& q) {
  check_same_dim(p, q, "kl_divergence");
  double d = 0.0;
  for (std::size_t i = 0; i < p.dim(); ++i) {
    d += p[i] * std::log(p[i] / q[i]);
  }
  return d;
}

double canonical_divergence(const DiscreteDistribution& p,
                            const DiscreteDistribution& q, Connection c) {
  return c == Connection::EAsNabla ? kl_divergence(p, q) : kl_divergence(q, p);
}

namespace {

void check_weight_count(std::size_t w_size, const BasisSet& basis,
                        const char* op) {
  if (w_size != basis.size()) {
    throw DimensionMismatch(std::string(op) + ": " + std::to_string(w_size) +
                            " weights for " + std::to_string(basis.size()) +
                            " basis members");
  }
}

DiscreteDistribution m_mix_raw(const BasisSet& basis,
                               const std::vector<double>& w) {
  std::vector<double> out(basis.dim(), 0.0);
  for (std::size_t k = 0; k < basis.size(); ++k) {
    const auto& pk = basis[k].probs();
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += w[k] * pk[i];
  }
  return DiscreteDistribution::normalized(std::move(out));
}

DiscreteDistribution e_mix_raw(const BasisSet& basis,
                               const std::vector<double>& w) {
  std::vector<double> s(basis.dim(), 0.0);
  for (std::size_t k = 0; k < basis.size(); ++k) {
    const auto& pk = basis[k].probs();
    for (std::size_t i = 0; i < s.size(); ++i) s[i] += w[k] * std::log(pk[i]);
  }
  const double shift = *std::max_element(s.begin(), s.end());
  for (double& v : s) v = std::exp(v - shift);
  return DiscreteDistribution::normalized(std::move(s));
}

}  // namespace

DiscreteDistribution m_mixture(const BasisSet& basis, const WeightVector& w) {
  check_weight_count(w.size(), basis, "m_mixture");
  return m_mix_raw(basis, w.values());
}

DiscreteDistribution e_mixture(const BasisSet& basis, const WeightVector& w) {
  check_weight_count(w.size(), basis, "e_mixture");
  return e_mix_raw(basis, w.values());
}

namespace detail {

DiscreteDistribution mixture_in_dual_coordinate(const BasisSet& basis,
                                                const std::vector<double>& w,
                                                Connection c) {
  check_weight_count(w.size(), basis, "mixture");
  return c == Connection::EAsNabla ? m_mix_raw(basis, w) : e_mix_raw(basis, w);
}

}  // namespace detail

double fisher_m_pair(const DiscreteDistribution& p1,
                     const DiscreteDistribution& p2, double w) {
  check_same_dim(p1, p2, "fisher_m_pair");
  check_unit_interval(w, "fisher_m_pair");
  double g = 0.0;
  for (std::size_t i = 0; i < p1.dim(); ++i) {
    const double diff = p1[i] - p2[i];
    g += diff * diff / (w * p1[i] + (1.0 - w) * p2[i]);
  }
  return g;
}

double fisher_e_pair(const DiscreteDistribution& p1,
                     const DiscreteDistribution& p2, double w) {
  check_same_dim(p1, p2, "fisher_e_pair");
  check_unit_interval(w, "fisher_e_pair");
  const std::size_t d = p1.dim();
  std::vector<double> s(d);
  for (std::size_t i = 0; i < d; ++i) {
    s[i] = w * std::log(p1[i]) + (1.0 - w) * std::log(p2[i]);
  }
  const double shift = *std::max_element(s.begin(), s.end());
  double z = 0.0;
  for (double& v : s) {
    v = std::exp(v - shift);
    z += v;
  }
  double mean = 0.0, second = 0.0;
  for (std::size_t i = 0; i < d; ++i) {
    const double a = std::log(p1[i]) - std::log(p2[i]);
    const double pi = s[i] / z;
    mean += a * pi;
    second += a * a * pi;
  }
  return std::max(second - mean * mean, 0.0);
}

double hellinger_sq(const DiscreteDistribution& p1,
                    const DiscreteDistribution& p2) {
  check_same_dim(p1, p2, "hellinger_sq");
  double h = 0.0;
  for (std::size_t i = 0; i < p1.dim(); ++i) {
    const double diff = std::sqrt(p1[i]) - std::sqrt(p2[i]);
    h += diff * diff;
  }
  return h;
}

}  // namespace gproj
