#pragma once

#include <Eigen/Dense>
#include <functional>

namespace fte {

// Gains of the benchmark construction. b1 != b2 is required because the
// defining relation for d1 divides by a*(b1 - b2).
struct BenchmarkSignalParams {
  double a = 0.5;
  double b1 = 0.5;
  double b2 = 2.0;
};

void validate_params(const BenchmarkSignalParams& p);

// A bounded signal with exact first and second derivatives. d, d_dot, d_ddot
// must be analytically consistent; nothing here differentiates numerically.
struct DSignal {
  std::function<double(double)> d;
  std::function<double(double)> d_dot;
  std::function<double(double)> d_ddot;
};

// d(t) = sin(t) / sqrt(1+t). Vanishes at infinity yet its derivative is not
// square integrable, which is exactly the regime the benchmark probes.
// The maps reject t < 0.
DSignal d_default();

// d1 is algebraic in (d, d_dot): a*(b1-b2)*d1 = d_dot + a*(1+b2)*d.
double d1(double t, const BenchmarkSignalParams& p, const DSignal& s);
double d1_dot(double t, const BenchmarkSignalParams& p, const DSignal& s);

// Second regressor entry: phi2 = d1_dot + a*(1+b1)*d1.
double phi2(double t, const BenchmarkSignalParams& p, const DSignal& s);

// Steady-state filter responses for the example structure (unit output gain,
// constant-slope k with slope a, regressor (1, phi2)).
//   branch 1: [1/(a(1+b1)), d1]
//   branch 2: [1/(a(1+b2)), d1 + d]
Eigen::Vector2d mu_ss(double t, const BenchmarkSignalParams& p, const DSignal& s,
                      int branch);

// Columns are the two steady-state vectors.
Eigen::Matrix2d M_ss(double t, const BenchmarkSignalParams& p, const DSignal& s);

// Exact time derivative of M_ss; used by the filter residual check.
Eigen::Matrix2d M_ss_dot(double t, const BenchmarkSignalParams& p, const DSignal& s);

// Closed form -d_dot / (a^2 (1+b1)(1+b2)). The a^2 factor is required for
// this to equal det(M_ss(t)); verified against the assembled matrix.
double det_M_ss(double t, const BenchmarkSignalParams& p, const DSignal& s);

}  // namespace fte
