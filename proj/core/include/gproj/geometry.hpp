#pragma once

#include "gproj/types.hpp"

namespace gproj {

// Coordinate charts of the discrete exponential family with the last outcome
// as reference: e-coordinates are log(p_i/p_d), m-coordinates are the first
// d-1 probabilities.
CoordinateVector to_e_coordinates(const DiscreteDistribution& p);
CoordinateVector to_m_coordinates(const DiscreteDistribution& p);
DiscreteDistribution from_e_coordinates(const CoordinateVector& c);
DiscreteDistribution from_m_coordinates(const CoordinateVector& c);

// Legendre pair of convex potentials: psi = -log p_d (log partition) and
// phi = sum_i p_i log p_i (negative entropy). They satisfy
// psi + phi - <theta, eta> = 0.
struct Potentials {
  double psi;
  double phi;
};
Potentials potentials(const DiscreteDistribution& p);

// KL(p || q) = sum_i p_i log(p_i / q_i), in nats.
double kl_divergence(const DiscreteDistribution& p,
                     const DiscreteDistribution& q);

// Canonical divergence of the dually flat structure. With the e-connection
// as nabla this is KL(p || q); with the m-connection as nabla it is the dual
// divergence KL(q || p).
double canonical_divergence(const DiscreteDistribution& p,
                            const DiscreteDistribution& q, Connection c);

// Convex combination in probability space: sum_k w_k p_k.
DiscreteDistribution m_mixture(const BasisSet& basis, const WeightVector& w);

// Log-linear combination: p_i proportional to exp(sum_k w_k log p_ki),
// computed with max-shifted exponentials.
DiscreteDistribution e_mixture(const BasisSet& basis, const WeightVector& w);

// Fisher information of the one-parameter mixture family
// p(.; w) = w p1 + (1-w) p2 at coordinate w:
//   g(w) = sum_i (p1_i - p2_i)^2 / p_i(w).
double fisher_m_pair(const DiscreteDistribution& p1,
                     const DiscreteDistribution& p2, double w);

// Fisher information of the one-parameter log-linear family through p1 and
// p2 at coordinate w: the variance of a_i = log(p1_i/p2_i) under p(.; w).
double fisher_e_pair(const DiscreteDistribution& p1,
                     const DiscreteDistribution& p2, double w);

// Squared Hellinger distance sum_i (sqrt(p1_i) - sqrt(p2_i))^2, in [0, 2].
double hellinger_sq(const DiscreteDistribution& p1,
                    const DiscreteDistribution& p2);

namespace detail {

// Mixture in the coordinate that is affine for the connection dual to c,
// accepting raw weights (entries may be zero, as for antipode points).
DiscreteDistribution mixture_in_dual_coordinate(const BasisSet& basis,
                                                const std::vector<double>& w,
                                                Connection c);

}  // namespace detail

}  // namespace gproj
