#include "fte/signals.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "fte/errors.hpp"

namespace fte {

void validate_params(const BenchmarkSignalParams& p) {
  if (!(p.a > 0.0)) throw ConfigError("benchmark params: a must be positive");
  if (!(p.b1 > 0.0)) throw ConfigError("benchmark params: b1 must be positive");
  if (!(p.b2 > 0.0)) throw ConfigError("benchmark params: b2 must be positive");
  if (p.b1 == p.b2)
    throw ConfigError("benchmark params: b1 == b2 divides by zero in d1");
}

namespace {

void require_nonnegative_time(double t) {
  if (t < 0.0)
    throw std::domain_error("benchmark signal evaluated at t < 0 (t = " +
                            std::to_string(t) + ")");
}

}  // namespace

DSignal d_default() {
  DSignal s;
  s.d = [](double t) {
    require_nonnegative_time(t);
    return std::sin(t) / std::sqrt(1.0 + t);
  };
  s.d_dot = [](double t) {
    require_nonnegative_time(t);
    const double u = 1.0 / std::sqrt(1.0 + t);
    return std::cos(t) * u - 0.5 * std::sin(t) * u * u * u;
  };
  s.d_ddot = [](double t) {
    require_nonnegative_time(t);
    const double u = 1.0 / std::sqrt(1.0 + t);
    const double u3 = u * u * u;
    return -std::sin(t) * u - std::cos(t) * u3 + 0.75 * std::sin(t) * u3 * u * u;
  };
  return s;
}

double d1(double t, const BenchmarkSignalParams& p, const DSignal& s) {
  validate_params(p);
  return (s.d_dot(t) + p.a * (1.0 + p.b2) * s.d(t)) / (p.a * (p.b1 - p.b2));
}

double d1_dot(double t, const BenchmarkSignalParams& p, const DSignal& s) {
  validate_params(p);
  return (s.d_ddot(t) + p.a * (1.0 + p.b2) * s.d_dot(t)) / (p.a * (p.b1 - p.b2));
}

double phi2(double t, const BenchmarkSignalParams& p, const DSignal& s) {
  return d1_dot(t, p, s) + p.a * (1.0 + p.b1) * d1(t, p, s);
}

Eigen::Vector2d mu_ss(double t, const BenchmarkSignalParams& p, const DSignal& s,
                      int branch) {
  validate_params(p);
  if (branch != 1 && branch != 2)
    throw std::invalid_argument("mu_ss: branch must be 1 or 2");
  const double b = branch == 1 ? p.b1 : p.b2;
  const double second = branch == 1 ? d1(t, p, s) : d1(t, p, s) + s.d(t);
  return Eigen::Vector2d(1.0 / (p.a * (1.0 + b)), second);
}

Eigen::Matrix2d M_ss(double t, const BenchmarkSignalParams& p, const DSignal& s) {
  Eigen::Matrix2d m;
  m.col(0) = mu_ss(t, p, s, 1);
  m.col(1) = mu_ss(t, p, s, 2);
  return m;
}

Eigen::Matrix2d M_ss_dot(double t, const BenchmarkSignalParams& p, const DSignal& s) {
  const double dd1 = d1_dot(t, p, s);
  Eigen::Matrix2d m;
  m << 0.0, 0.0, dd1, dd1 + s.d_dot(t);
  return m;
}

double det_M_ss(double t, const BenchmarkSignalParams& p, const DSignal& s) {
  validate_params(p);
  return -s.d_dot(t) / (p.a * p.a * (1.0 + p.b1) * (1.0 + p.b2));
}

}  // namespace fte
