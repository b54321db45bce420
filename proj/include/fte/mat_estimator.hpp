#pragma once

#include <Eigen/Dense>
#include <utility>

#include "fte/gains.hpp"
#include "fte/model.hpp"

namespace fte {

// Estimator built on the matrix filtered transformation ones*x = pi + M^T theta.
// Conventions used throughout: S = Gamma*M*B, psi^T = -B*M^T, kappa = ones*k(y),
// and the update law's last term is S_dot*kappa with S_dot = Gamma*M_dot*B
// computed exactly from the filter equation (never finite-differenced).

struct MatEstimatorState {
  Eigen::VectorXd zeta;  // 2q, split (zeta1, zeta2)
  Eigen::MatrixXd M;     // q x q, column i tracks the branch-i filter
  double t = 0.0;
};

// beta = sign(f) [kappa; S*kappa].
Eigen::VectorXd beta_mat(double y, const Eigen::MatrixXd& M,
                         const EstimatorGains& gains, double sign_f);

// Filter: M_dot^T = -|f| k'(y) (I + B) M^T + ones*phi^T, returned as M_dot.
// For diagonal B row i of M^T evolves exactly like a vector filter with
// B = b_i * I, which is what the row-equivalence test checks.
Eigen::MatrixXd M_rhs(const Eigen::MatrixXd& M, double y, double t,
                      const PlantMaps& maps, const EstimatorGains& gains);

// Observer update:
//   zeta_dot = -|f| k' [[I, psi^T],[S, S M^T]](zeta+beta) + [gamma1; 0]
//              - sign(f) (k' [I; S] gamma0 + [0; S_dot] kappa)
// with gamma0 = ones*g0, gamma1 = ones*g1.
Eigen::VectorXd zeta_rhs_mat(const MatEstimatorState& state, double y,
                             const PlantMaps& maps, const EstimatorGains& gains);

// Independent oracle:
//   z_dot = -|f| k'(y) [[I, -B M^T],[Gamma M B, Gamma M B M^T]] z.
Eigen::VectorXd error_rhs_mat(const Eigen::VectorXd& z, double y, double t,
                              const Eigen::MatrixXd& M, const PlantMaps& maps,
                              const EstimatorGains& gains);

// chi_hat = (zeta+beta)_1 + M^T (zeta+beta)_2; x_hat is the mean of chi_hat's
// entries; theta_hat = (zeta+beta)_2.
std::pair<double, Eigen::VectorXd> estimates_mat(const MatEstimatorState& state,
                                                 double y,
                                                 const EstimatorGains& gains,
                                                 double sign_f);

// V(z) = (z1^T z1 + z2^T Gamma^{-1} z2) / 2.
double lyapunov_mat(const Eigen::VectorXd& z, const EstimatorGains& gains);

}  // namespace fte
