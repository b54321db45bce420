#include "fte/mat_estimator.hpp"

#include <stdexcept>

namespace fte {

namespace {

void require_dims(const Eigen::MatrixXd& M, const EstimatorGains& gains) {
  if (M.rows() != M.cols()) throw std::invalid_argument("M must be square");
  if (gains.B.rows() != gains.B.cols() || gains.Gamma.rows() != gains.Gamma.cols())
    throw std::invalid_argument("gains matrices must be square");
  if (M.rows() != gains.B.rows() || M.rows() != gains.Gamma.rows())
    throw std::invalid_argument("M dimension does not match gains");
}

}  // namespace

Eigen::VectorXd beta_mat(double y, const Eigen::MatrixXd& M,
                         const EstimatorGains& gains, double sign_f) {
  require_dims(M, gains);
  const auto q = M.rows();
  const double kv = gains.k.k(y);
  const Eigen::VectorXd kappa = Eigen::VectorXd::Constant(q, kv);
  Eigen::VectorXd b(2 * q);
  b.head(q) = sign_f * kappa;
  b.tail(q) = sign_f * (gains.Gamma * (M * (gains.B * kappa)));
  return b;
}

Eigen::MatrixXd M_rhs(const Eigen::MatrixXd& M, double y, double t,
                      const PlantMaps& maps, const EstimatorGains& gains) {
  require_dims(M, gains);
  const double af = std::abs(maps.f(y, t)) * gains.k.k_prime(y);
  const Eigen::VectorXd phi = maps.phi(y, t);
  if (phi.size() != M.rows())
    throw std::invalid_argument("M_rhs: regressor dimension != filter dimension");
  // Transpose of -|f| k'(I+B) M^T + ones*phi^T; I+B is symmetric.
  return -af * (M + M * gains.B) +
         phi * Eigen::RowVectorXd::Ones(M.cols());
}

Eigen::VectorXd zeta_rhs_mat(const MatEstimatorState& state, double y,
                             const PlantMaps& maps, const EstimatorGains& gains) {
  const auto q = state.M.rows();
  require_dims(state.M, gains);
  if (state.zeta.size() != 2 * q)
    throw std::invalid_argument("zeta_rhs_mat: zeta must have length 2q");

  const double t = state.t;
  const double f = maps.f(y, t);
  const double sgn = sign_f(maps);
  const double kp = gains.k.k_prime(y);
  const double kv = gains.k.k(y);
  const double af = std::abs(f) * kp;
  const double g0 = maps.g0(y, t);
  const double g1 = maps.g1(y, t);

  const Eigen::MatrixXd M_dot = M_rhs(state.M, y, t, maps, gains);
  const Eigen::MatrixXd S = gains.Gamma * state.M * gains.B;
  const Eigen::MatrixXd S_dot = gains.Gamma * M_dot * gains.B;
  const Eigen::VectorXd kappa = Eigen::VectorXd::Constant(q, kv);

  const Eigen::VectorXd w = state.zeta + beta_mat(y, state.M, gains, sgn);
  const Eigen::VectorXd w1 = w.head(q);
  const Eigen::VectorXd w2 = w.tail(q);

  Eigen::VectorXd dzeta(2 * q);
  // Upper block: -|f|k'(w1 + psi^T w2) + gamma1 - sign(f) k' gamma0,
  // with psi^T = -B M^T.
  dzeta.head(q) = -af * (w1 - gains.B * (state.M.transpose() * w2)) +
                  Eigen::VectorXd::Constant(q, g1 - sgn * kp * g0);
  // Lower block: -|f|k' S (w1 + M^T w2) - sign(f)(k' S gamma0 + S_dot kappa).
  dzeta.tail(q) = -af * (S * (w1 + state.M.transpose() * w2)) -
                  sgn * (kp * g0 * (S * Eigen::VectorXd::Ones(q)) + S_dot * kappa);
  return dzeta;
}

Eigen::VectorXd error_rhs_mat(const Eigen::VectorXd& z, double y, double t,
                              const Eigen::MatrixXd& M, const PlantMaps& maps,
                              const EstimatorGains& gains) {
  const auto q = M.rows();
  require_dims(M, gains);
  if (z.size() != 2 * q)
    throw std::invalid_argument("error_rhs_mat: z must have length 2q");
  const double af = std::abs(maps.f(y, t)) * gains.k.k_prime(y);
  const Eigen::VectorXd z1 = z.head(q);
  const Eigen::VectorXd z2 = z.tail(q);
  Eigen::VectorXd dz(2 * q);
  dz.head(q) = -af * (z1 - gains.B * (M.transpose() * z2));
  dz.tail(q) = -af * (gains.Gamma * (M * (gains.B * (z1 + M.transpose() * z2))));
  return dz;
}

std::pair<double, Eigen::VectorXd> estimates_mat(const MatEstimatorState& state,
                                                 double y,
                                                 const EstimatorGains& gains,
                                                 double sign_f) {
  const auto q = state.M.rows();
  const Eigen::VectorXd w = state.zeta + beta_mat(y, state.M, gains, sign_f);
  const Eigen::VectorXd theta_hat = w.tail(q);
  const Eigen::VectorXd chi_hat = w.head(q) + state.M.transpose() * theta_hat;
  return {chi_hat.mean(), theta_hat};
}

double lyapunov_mat(const Eigen::VectorXd& z, const EstimatorGains& gains) {
  const auto q = gains.Gamma.rows();
  if (z.size() != 2 * q)
    throw std::invalid_argument("lyapunov_mat: z must have length 2q");
  const Eigen::VectorXd z1 = z.head(q);
  const Eigen::VectorXd z2 = z.tail(q);
  return 0.5 * (z1.dot(z1) + z2.dot(gains.Gamma.ldlt().solve(z2)));
}

}  // namespace fte
