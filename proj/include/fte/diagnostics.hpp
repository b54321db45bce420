#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "fte/gains.hpp"
#include "fte/numerics.hpp"

namespace fte {

// Excitation is reported as measured quantities, never as a PE/not-PE
// boolean: a finite trace can only support margins and growth-rate fits.
struct ExcitationReport {
  double pe_margin = std::numeric_limits<double>::quiet_NaN();
  double pe_window = std::numeric_limits<double>::quiet_NaN();

  std::vector<double> t;                // sample times of the traces below
  std::vector<double> det_trace;        // det(M(t))
  std::vector<double> det_l2_integral;  // running integral of det^2, non-decreasing
  std::vector<double> lambda_m_sq_trace;  // min eigenvalue of M M^T
  std::vector<double> sigma_trace;        // min(1, lambda_m^2)

  double divergence_slope = std::numeric_limits<double>::quiet_NaN();
  double fit_rel_residual = std::numeric_limits<double>::quiet_NaN();
  // "convergent", "logarithmic", or "super-logarithmic" (integral growing
  // faster than any logarithm, e.g. linearly).
  std::string growth_class;
};

// Smallest eigenvalue of the windowed Gram integral (1/T) * sum phi phi^T dt,
// minimized over all admissible window start samples. Uniform sampling is
// assumed; the window must span at least 10 samples and fit inside the trace.
double pe_margin(const std::vector<double>& t,
                 const std::vector<Eigen::VectorXd>& phi, double window);

// Running det^2 integral (trapezoid), eigenvalue traces of M M^T, and the
// log-growth fit of the integral over the latter half of the trace.
ExcitationReport det_l2_report(const std::vector<double>& t,
                               const std::vector<Eigen::MatrixXd>& M);

struct GainValidation {
  bool ok = true;
  std::vector<std::string> violations;  // one entry per violated condition
};

// Gamma and B must be symmetric positive definite; when
// for_matrix_estimator, B's eigenvalues must also be pairwise distinct with
// relative gap above 1e-9.
GainValidation validate_gains(const EstimatorGains& gains,
                              bool for_matrix_estimator);

struct OvershootMetric {
  double peak = 0.0;         // max of the error norm over samples after t = 0
  double settle_time = 0.0;  // first time from which the norm stays below threshold
  double threshold = 0.0;
};

// theta_err holds sampled values of the parameter-error norm. The t = 0
// sample is excluded from the peak; settle_time is +inf when the trace never
// stays below the threshold.
OvershootMetric overshoot(const std::vector<double>& t,
                          const std::vector<double>& theta_err,
                          double settle_threshold);

struct LyapunovViolation {
  std::size_t index = 0;  // sample index where the increase was observed
  double t = 0.0;
  double delta = 0.0;  // V[i] - V[i-1]
};

// Flags every step where V increases by more than per_step_tol.
std::vector<LyapunovViolation> lyapunov_monitor(const std::vector<double>& t,
                                                const std::vector<double>& V,
                                                double per_step_tol);

}  // namespace fte
