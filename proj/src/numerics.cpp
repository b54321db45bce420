#include "fte/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace fte {

double det_dense(const Eigen::MatrixXd& a) {
  const auto n = a.rows();
  if (n != a.cols()) throw std::invalid_argument("det_dense: matrix not square");
  if (n == 0) return 1.0;
  if (n == 1) return a(0, 0);
  if (n == 2) return a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0);
  if (n == 3) {
    return a(0, 0) * (a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1)) -
           a(0, 1) * (a(1, 0) * a(2, 2) - a(1, 2) * a(2, 0)) +
           a(0, 2) * (a(1, 0) * a(2, 1) - a(1, 1) * a(2, 0));
  }
  Eigen::MatrixXd m = a;
  double det = 1.0;
  for (Eigen::Index col = 0; col < n; ++col) {
    Eigen::Index pivot = col;
    double best = std::abs(m(col, col));
    for (Eigen::Index r = col + 1; r < n; ++r) {
      if (std::abs(m(r, col)) > best) {
        best = std::abs(m(r, col));
        pivot = r;
      }
    }
    if (best == 0.0) return 0.0;
    if (pivot != col) {
      m.row(pivot).swap(m.row(col));
      det = -det;
    }
    det *= m(col, col);
    for (Eigen::Index r = col + 1; r < n; ++r) {
      const double factor = m(r, col) / m(col, col);
      m.row(r).tail(n - col) -= factor * m.row(col).tail(n - col);
    }
  }
  return det;
}

namespace {

Eigen::VectorXd jacobi_eigenvalues(Eigen::MatrixXd m) {
  const Eigen::Index n = m.rows();
  const double scale = std::max(1.0, m.norm());
  constexpr int kMaxSweeps = 100;
  constexpr double kTol = 1e-12;
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    double off = 0.0;
    for (Eigen::Index p = 0; p < n; ++p)
      for (Eigen::Index q = p + 1; q < n; ++q) off += 2.0 * m(p, q) * m(p, q);
    if (std::sqrt(off) <= kTol * scale) break;
    for (Eigen::Index p = 0; p < n; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        if (m(p, q) == 0.0) continue;
        const double tau = (m(q, q) - m(p, p)) / (2.0 * m(p, q));
        const double t = (tau >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        Eigen::MatrixXd j = Eigen::MatrixXd::Identity(n, n);
        j(p, p) = c;
        j(q, q) = c;
        j(p, q) = s;
        j(q, p) = -s;
        m = j.transpose() * m * j;
      }
    }
  }
  return m.diagonal();
}

}  // namespace

Eigen::VectorXd sym_eigenvalues(const Eigen::MatrixXd& a) {
  const auto n = a.rows();
  if (n != a.cols()) throw std::invalid_argument("sym_eigenvalues: matrix not square");
  Eigen::MatrixXd m = 0.5 * (a + a.transpose());
  Eigen::VectorXd ev;
  if (n == 0) return Eigen::VectorXd();
  if (n == 1) {
    ev = Eigen::VectorXd::Constant(1, m(0, 0));
  } else if (n == 2) {
    const double mean = 0.5 * (m(0, 0) + m(1, 1));
    const double diff = 0.5 * (m(0, 0) - m(1, 1));
    const double rad = std::sqrt(diff * diff + m(0, 1) * m(0, 1));
    ev = Eigen::VectorXd(2);
    ev << mean - rad, mean + rad;
  } else {
    ev = jacobi_eigenvalues(m);
  }
  std::sort(ev.data(), ev.data() + ev.size());
  return ev;
}

LogGrowthFit fit_log_growth(const std::vector<double>& t,
                            const std::vector<double>& y,
                            double t_lo, double t_hi) {
  if (t.size() != y.size()) throw std::invalid_argument("fit_log_growth: size mismatch");
  std::vector<double> xs, ys, ts;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t[i] >= t_lo && t[i] <= t_hi) {
      xs.push_back(std::log1p(t[i]));
      ts.push_back(t[i]);
      ys.push_back(y[i]);
    }
  }
  if (xs.size() < 2) throw std::invalid_argument("fit_log_growth: fewer than two samples in window");

  auto least_squares = [&](const std::vector<double>& x) {
    const double n = static_cast<double>(x.size());
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      sx += x[i];
      sy += ys[i];
      sxx += x[i] * x[i];
      sxy += x[i] * ys[i];
    }
    const double denom = n * sxx - sx * sx;
    const double slope = denom != 0.0 ? (n * sxy - sx * sy) / denom : 0.0;
    const double offset = (sy - slope * sx) / n;
    double res2 = 0.0, norm2 = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double r = ys[i] - (slope * x[i] + offset);
      res2 += r * r;
      norm2 += ys[i] * ys[i];
    }
    const double rel = norm2 > 0.0 ? std::sqrt(res2 / norm2) : 0.0;
    return std::tuple<double, double, double>(slope, offset, rel);
  };

  LogGrowthFit fit;
  std::tie(fit.slope, fit.offset, fit.rel_residual) = least_squares(xs);
  double s1, o1;
  std::tie(s1, o1, fit.linear_rel_residual) = least_squares(ts);
  return fit;
}

}  // namespace fte
