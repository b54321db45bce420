#pragma once

#include <Eigen/Dense>
#include <functional>

namespace fte {

// Output map k and its exact derivative, supplied as a pair. The derivative
// is never approximated numerically; a wrong k_prime is a caller bug, not
// something this library can detect.
struct ScalarMap {
  std::function<double(double)> k;
  std::function<double(double)> k_prime;
  double k_prime_bound = 0.0;  // declared sup of k_prime, > 0
};

// k(y) = slope * y, the default used by every built-in scenario.
inline ScalarMap linear_k(double slope) {
  ScalarMap m;
  m.k = [slope](double y) { return slope * y; };
  m.k_prime = [slope](double) { return slope; };
  m.k_prime_bound = slope;
  return m;
}

struct EstimatorGains {
  Eigen::MatrixXd Gamma;  // symmetric positive definite
  Eigen::MatrixXd B;      // symmetric positive definite
  ScalarMap k;
  // The matrix-filter construction additionally needs B's eigenvalues
  // pairwise distinct; diagnostics::validate_gains enforces it when set.
  bool require_distinct_B_eigs = false;
};

// Convenience builder: Gamma = gamma*I, B as given, k(y) = a*y.
inline EstimatorGains make_gains(double a, const Eigen::MatrixXd& b, double gamma,
                                 bool require_distinct_B_eigs) {
  EstimatorGains g;
  g.Gamma = gamma * Eigen::MatrixXd::Identity(b.rows(), b.cols());
  g.B = b;
  g.k = linear_k(a);
  g.require_distinct_B_eigs = require_distinct_B_eigs;
  return g;
}

}  // namespace fte
