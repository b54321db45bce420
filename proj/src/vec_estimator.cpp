#include "fte/vec_estimator.hpp"

#include <stdexcept>

namespace fte {

namespace {

void require_dims(const Eigen::VectorXd& mu, const EstimatorGains& gains) {
  if (gains.B.rows() != gains.B.cols() || gains.Gamma.rows() != gains.Gamma.cols())
    throw std::invalid_argument("gains matrices must be square");
  if (mu.size() != gains.B.rows() || mu.size() != gains.Gamma.rows())
    throw std::invalid_argument("mu dimension does not match gains");
}

}  // namespace

Eigen::VectorXd beta_vec(double y, const Eigen::VectorXd& mu,
                         const EstimatorGains& gains, double sign_f) {
  require_dims(mu, gains);
  const double kv = gains.k.k(y);
  const auto q = mu.size();
  Eigen::VectorXd b(1 + q);
  b(0) = sign_f * kv;
  b.tail(q) = sign_f * kv * (gains.Gamma * (gains.B * mu));
  return b;
}

Eigen::VectorXd mu_rhs(const Eigen::VectorXd& mu, double y, double t,
                       const PlantMaps& maps, const EstimatorGains& gains) {
  require_dims(mu, gains);
  const double af = std::abs(maps.f(y, t)) * gains.k.k_prime(y);
  const Eigen::VectorXd phi = maps.phi(y, t);
  if (phi.size() != mu.size())
    throw std::invalid_argument("mu_rhs: regressor dimension != filter dimension");
  return -af * (mu + gains.B * mu) + phi;
}

Eigen::VectorXd zeta_rhs_vec(const VecEstimatorState& state, double y,
                             const PlantMaps& maps, const EstimatorGains& gains) {
  const auto q = state.mu.size();
  require_dims(state.mu, gains);
  if (state.zeta.size() != 1 + q)
    throw std::invalid_argument("zeta_rhs_vec: zeta must have length 1+q");

  const double t = state.t;
  const double f = maps.f(y, t);
  const double sgn = sign_f(maps);
  const double kp = gains.k.k_prime(y);
  const double kv = gains.k.k(y);
  const double af = std::abs(f) * kp;
  const double g0 = maps.g0(y, t);
  const double g1 = maps.g1(y, t);

  const Eigen::VectorXd mu_dot = mu_rhs(state.mu, y, t, maps, gains);
  const Eigen::VectorXd w = state.zeta + beta_vec(y, state.mu, gains, sgn);

  // d beta / d y = sign(f) k'(y) [1; Gamma B mu]
  Eigen::VectorXd dbeta_dy(1 + q);
  dbeta_dy(0) = sgn * kp;
  dbeta_dy.tail(q) = sgn * kp * (gains.Gamma * (gains.B * state.mu));

  // Drift row of the extended dynamics with the filter equation substituted:
  // p_dot = g1 + (phi - mu_dot)^T theta and phi - mu_dot = |f| k'(I+B) mu.
  const Eigen::VectorXd a_row = af * (state.mu + gains.B * state.mu);

  const double proj = f * (w(0) + state.mu.dot(w.tail(q)));

  Eigen::VectorXd dzeta(1 + q);
  dzeta = -dbeta_dy * proj - dbeta_dy * g0;
  dzeta(0) += a_row.dot(w.tail(q)) + g1;
  // (d beta / d mu) mu_dot acts on the parameter block only.
  dzeta.tail(q) -= sgn * kv * (gains.Gamma * (gains.B * mu_dot));
  return dzeta;
}

Eigen::VectorXd error_rhs_vec(const Eigen::VectorXd& z, double y, double t,
                              const Eigen::VectorXd& mu, const PlantMaps& maps,
                              const EstimatorGains& gains) {
  const auto q = mu.size();
  require_dims(mu, gains);
  if (z.size() != 1 + q)
    throw std::invalid_argument("error_rhs_vec: z must have length 1+q");
  const double af = std::abs(maps.f(y, t)) * gains.k.k_prime(y);
  const Eigen::VectorXd bmu = gains.B * mu;
  const Eigen::VectorXd z2 = z.tail(q);
  Eigen::VectorXd dz(1 + q);
  dz(0) = -af * (z(0) - bmu.dot(z2));
  dz.tail(q) = -af * (gains.Gamma * bmu) * (z(0) + mu.dot(z2));
  return dz;
}

std::pair<double, Eigen::VectorXd> estimates_vec(const VecEstimatorState& state,
                                                 double y,
                                                 const EstimatorGains& gains,
                                                 double sign_f) {
  const auto q = state.mu.size();
  const Eigen::VectorXd w = state.zeta + beta_vec(y, state.mu, gains, sign_f);
  const Eigen::VectorXd theta_hat = w.tail(q);
  const double x_hat = w(0) + state.mu.dot(theta_hat);
  return {x_hat, theta_hat};
}

double lyapunov_vec(const Eigen::VectorXd& z, const EstimatorGains& gains) {
  const auto q = gains.Gamma.rows();
  if (z.size() != 1 + q)
    throw std::invalid_argument("lyapunov_vec: z must have length 1+q");
  const Eigen::VectorXd z2 = z.tail(q);
  return 0.5 * (z(0) * z(0) + z2.dot(gains.Gamma.ldlt().solve(z2)));
}

}  // namespace fte
