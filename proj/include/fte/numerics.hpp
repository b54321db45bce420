#pragma once

#include <Eigen/Dense>

namespace fte {

// Determinant of a small dense matrix. Cofactor expansion up to 3x3,
// partial-pivot row reduction beyond that. Deterministic for identical input.
double det_dense(const Eigen::MatrixXd& a);

// Eigenvalues of a symmetric matrix, ascending. Closed-form for n <= 2,
// cyclic Jacobi (absolute off-diagonal tolerance 1e-12 relative to the
// Frobenius norm, at most 100 sweeps) for larger n. The input is symmetrized
// as (A + A^T)/2 before iterating; callers validate symmetry themselves when
// it matters.
Eigen::VectorXd sym_eigenvalues(const Eigen::MatrixXd& a);

// Least-squares fit of y ~ slope * log1p(t) + offset over samples with
// t_lo <= t <= t_hi. rel_residual is ||y - fit||_2 / ||y||_2 on that window.
struct LogGrowthFit {
  double slope = 0.0;
  double offset = 0.0;
  double rel_residual = 0.0;
  // Residual of the competing straight-line fit y ~ c1*t + c0 on the same
  // window; lets callers distinguish logarithmic from linear growth.
  double linear_rel_residual = 0.0;
};

LogGrowthFit fit_log_growth(const std::vector<double>& t,
                            const std::vector<double>& y,
                            double t_lo, double t_hi);

}  // namespace fte
