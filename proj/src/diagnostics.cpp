#include "fte/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "fte/errors.hpp"

namespace fte {

double pe_margin(const std::vector<double>& t,
                 const std::vector<Eigen::VectorXd>& phi, double window) {
  if (t.size() != phi.size())
    throw std::invalid_argument("pe_margin: time and signal sizes differ");
  if (t.size() < 2) throw std::invalid_argument("pe_margin: trace too short");
  if (!(window > 0.0)) throw std::invalid_argument("pe_margin: window must be positive");

  const double dt = t[1] - t[0];
  const auto m = static_cast<std::size_t>(std::llround(window / dt));
  if (m < 10)
    throw std::invalid_argument("pe_margin: window spans fewer than 10 samples");
  if (m >= t.size())
    throw std::invalid_argument("pe_margin: trace shorter than the window");

  const auto q = phi[0].size();
  // Prefix sums of phi phi^T dt make every window Gram an O(q^2) difference.
  std::vector<Eigen::MatrixXd> prefix(t.size() + 1,
                                      Eigen::MatrixXd::Zero(q, q));
  for (std::size_t i = 0; i < phi.size(); ++i) {
    if (phi[i].size() != q)
      throw std::invalid_argument("pe_margin: inconsistent signal dimension");
    prefix[i + 1] = prefix[i] + phi[i] * phi[i].transpose() * dt;
  }

  double margin = std::numeric_limits<double>::infinity();
  for (std::size_t s = 0; s + m < t.size() + 1; ++s) {
    const Eigen::MatrixXd gram = (prefix[s + m] - prefix[s]) / window;
    const double lmin = sym_eigenvalues(gram)(0);
    margin = std::min(margin, lmin);
  }
  return margin;
}

ExcitationReport det_l2_report(const std::vector<double>& t,
                               const std::vector<Eigen::MatrixXd>& M) {
  if (t.size() != M.size())
    throw std::invalid_argument("det_l2_report: time and sample sizes differ");
  if (M.empty()) throw std::invalid_argument("det_l2_report: empty trace");
  for (const auto& m : M)
    if (m.rows() != m.cols())
      throw std::invalid_argument("det_l2_report: non-square sample");

  ExcitationReport rep;
  rep.t = t;
  rep.det_trace.resize(M.size());
  rep.det_l2_integral.resize(M.size());
  rep.lambda_m_sq_trace.resize(M.size());
  rep.sigma_trace.resize(M.size());

  double integral = 0.0;
  double prev_sq = 0.0;
  for (std::size_t i = 0; i < M.size(); ++i) {
    const double det = det_dense(M[i]);
    const double det_sq = det * det;
    if (i > 0) integral += 0.5 * (prev_sq + det_sq) * (t[i] - t[i - 1]);
    prev_sq = det_sq;
    rep.det_trace[i] = det;
    rep.det_l2_integral[i] = integral;
    const double lmin = sym_eigenvalues(M[i] * M[i].transpose())(0);
    rep.lambda_m_sq_trace[i] = std::max(0.0, lmin);
    rep.sigma_trace[i] = std::min(1.0, rep.lambda_m_sq_trace[i]);
  }

  // Growth classification over the latter half of the trace.
  if (t.size() >= 4) {
    const double t_end = t.back();
    const double t_half = 0.5 * t_end;
    const double i_end = rep.det_l2_integral.back();
    double i_half = 0.0;
    for (std::size_t i = 0; i < t.size(); ++i) {
      if (t[i] >= t_half) {
        i_half = rep.det_l2_integral[i];
        break;
      }
    }
    const LogGrowthFit fit =
        fit_log_growth(t, rep.det_l2_integral, t_half, t_end);
    rep.divergence_slope = fit.slope;
    rep.fit_rel_residual = fit.rel_residual;
    if (i_end - i_half <= 1e-6 * std::max(1.0, i_end))
      rep.growth_class = "convergent";
    else if (fit.rel_residual <= fit.linear_rel_residual)
      rep.growth_class = "logarithmic";
    else
      rep.growth_class = "super-logarithmic";
  }
  return rep;
}

GainValidation validate_gains(const EstimatorGains& gains,
                              bool for_matrix_estimator) {
  GainValidation v;
  auto fail = [&v](const std::string& msg) {
    v.ok = false;
    v.violations.push_back(msg);
  };

  auto check_spd = [&](const Eigen::MatrixXd& m, const std::string& name) {
    if (m.rows() != m.cols() || m.size() == 0) {
      fail(name + " must be a nonempty square matrix");
      return;
    }
    const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
    if ((m - m.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale)
      fail(name + " is not symmetric");
    else if (sym_eigenvalues(m)(0) <= 0.0)
      fail(name + " is not positive definite");
  };

  check_spd(gains.Gamma, "Gamma");
  check_spd(gains.B, "B");

  if (for_matrix_estimator && gains.B.rows() == gains.B.cols() &&
      gains.B.size() > 0) {
    const Eigen::VectorXd eigs = sym_eigenvalues(gains.B);
    for (Eigen::Index i = 0; i + 1 < eigs.size(); ++i) {
      const double gap = std::abs(eigs(i + 1) - eigs(i));
      const double scale = std::max(std::abs(eigs(i)), std::abs(eigs(i + 1)));
      if (gap <= 1e-9 * std::max(1.0, scale)) {
        fail("B eigenvalues are not pairwise distinct");
        break;
      }
    }
  }
  return v;
}

OvershootMetric overshoot(const std::vector<double>& t,
                          const std::vector<double>& theta_err,
                          double settle_threshold) {
  if (t.size() != theta_err.size())
    throw std::invalid_argument("overshoot: time and trace sizes differ");
  if (theta_err.empty()) throw std::invalid_argument("overshoot: empty trace");

  OvershootMetric m;
  m.threshold = settle_threshold;
  // The t = 0 record holds the raw initial error; the peak is taken from the
  // first sample after it onward.
  const std::size_t first = theta_err.size() > 1 ? 1 : 0;
  m.peak = theta_err[first];
  for (std::size_t i = first; i < theta_err.size(); ++i)
    m.peak = std::max(m.peak, theta_err[i]);

  m.settle_time = std::numeric_limits<double>::infinity();
  for (std::size_t i = theta_err.size(); i-- > 0;) {
    if (theta_err[i] < settle_threshold)
      m.settle_time = t[i];
    else
      break;
  }
  return m;
}

std::vector<LyapunovViolation> lyapunov_monitor(const std::vector<double>& t,
                                                const std::vector<double>& V,
                                                double per_step_tol) {
  if (t.size() != V.size())
    throw std::invalid_argument("lyapunov_monitor: time and trace sizes differ");
  std::vector<LyapunovViolation> violations;
  for (std::size_t i = 1; i < V.size(); ++i) {
    const double delta = V[i] - V[i - 1];
    if (delta > per_step_tol) violations.push_back({i, t[i], delta});
  }
  return violations;
}

}  // namespace fte
