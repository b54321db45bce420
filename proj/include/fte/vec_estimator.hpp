#pragma once

#include <Eigen/Dense>
#include <utility>

#include "fte/gains.hpp"
#include "fte/model.hpp"

namespace fte {

// Estimator built on the vector filtered transformation x = p + mu^T theta.
// The observer state is zeta (1+q) plus the filter mu (q); the output map
// beta shifts zeta so that z = eta - zeta - beta obeys autonomous
// contracting error dynamics.

struct VecEstimatorState {
  Eigen::VectorXd zeta;  // 1+q
  Eigen::VectorXd mu;    // q
  double t = 0.0;
};

// beta(y, mu) = sign(f) * [k(y); Gamma*B*mu * k(y)].
Eigen::VectorXd beta_vec(double y, const Eigen::VectorXd& mu,
                         const EstimatorGains& gains, double sign_f);

// Filter: mu_dot = -|f| k'(y) (I + B) mu + phi(y, t).
Eigen::VectorXd mu_rhs(const Eigen::VectorXd& mu, double y, double t,
                       const PlantMaps& maps, const EstimatorGains& gains);

// Observer update. The drift matrix contribution is evaluated with mu_dot
// already substituted from the filter equation, which is what makes the
// error dynamics close exactly; see error_rhs_vec.
Eigen::VectorXd zeta_rhs_vec(const VecEstimatorState& state, double y,
                             const PlantMaps& maps, const EstimatorGains& gains);

// Independent oracle: the closed error dynamics
//   z_dot = -|f| k'(y) [[1, -mu^T B], [Gamma*B*mu, Gamma*B*mu*mu^T]] z.
// The (1,2) block is -mu^T B; direct integration of this form agrees with
// the reconstructed error to integrator precision, which is the module's
// core equivalence test.
Eigen::VectorXd error_rhs_vec(const Eigen::VectorXd& z, double y, double t,
                              const Eigen::VectorXd& mu, const PlantMaps& maps,
                              const EstimatorGains& gains);

// x_hat = [1 mu^T](zeta + beta), theta_hat = tail of (zeta + beta).
std::pair<double, Eigen::VectorXd> estimates_vec(const VecEstimatorState& state,
                                                 double y,
                                                 const EstimatorGains& gains,
                                                 double sign_f);

// V(z) = (z1^2 + z2^T Gamma^{-1} z2) / 2.
double lyapunov_vec(const Eigen::VectorXd& z, const EstimatorGains& gains);

}  // namespace fte
