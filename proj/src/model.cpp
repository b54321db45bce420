#include "fte/model.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "fte/errors.hpp"

namespace fte {

namespace {

void require_finite(double v, const char* map_name, double y, double t) {
  if (!std::isfinite(v)) {
    std::ostringstream os;
    os << "model map " << map_name << " returned a non-finite value at (y=" << y
       << ", t=" << t << ")";
    throw EvaluationError(os.str());
  }
}

}  // namespace

std::pair<double, double> plant_rhs(double y, double x, double t,
                                    const SystemModel& model) {
  const auto& m = model.maps;
  if (model.theta_true.size() != m.q)
    throw std::invalid_argument("plant_rhs: theta_true dimension != q");
  const double f = m.f(y, t);
  require_finite(f, "f", y, t);
  const double g0 = m.g0(y, t);
  require_finite(g0, "g0", y, t);
  const double g1 = m.g1(y, t);
  require_finite(g1, "g1", y, t);
  const Eigen::VectorXd phi = m.phi(y, t);
  if (phi.size() != m.q) throw std::invalid_argument("plant_rhs: phi dimension != q");
  if (!phi.allFinite()) require_finite(std::nan(""), "phi", y, t);
  return {f * x + g0, g1 + phi.dot(model.theta_true)};
}

SystemModel make_example_system() {
  Eigen::VectorXd theta(2);
  theta << -1.0, 1.0;
  return make_example_system(BenchmarkSignalParams{}, theta);
}

SystemModel make_example_system(const BenchmarkSignalParams& params,
                                const Eigen::VectorXd& theta_true) {
  validate_params(params);
  if (theta_true.size() != 2)
    throw ConfigError("example system has exactly two unknown parameters");
  SystemModel model;
  model.maps.q = 2;
  model.maps.f = [](double, double) { return 1.0; };
  model.maps.f_is_positive = true;
  model.maps.g0 = [](double y, double) { return -y; };
  model.maps.g1 = [](double y, double) { return -y; };
  const DSignal sig = d_default();
  model.maps.phi = [params, sig](double, double t) {
    Eigen::VectorXd v(2);
    v << 1.0, phi2(t, params, sig);
    return v;
  };
  model.theta_true = theta_true;
  return model;
}

TrueExtendedState true_extended_state(double x, const Eigen::VectorXd& theta,
                                      const Eigen::VectorXd& mu) {
  if (mu.size() != theta.size())
    throw std::invalid_argument("true_extended_state: mu and theta dimensions differ");
  TrueExtendedState s;
  s.p = x - mu.dot(theta);
  s.eta.resize(1 + theta.size());
  s.eta(0) = s.p;
  s.eta.tail(theta.size()) = theta;
  return s;
}

TrueExtendedState true_extended_state(double x, const Eigen::VectorXd& theta,
                                      const Eigen::MatrixXd& M) {
  const auto q = theta.size();
  if (M.rows() != q || M.cols() != q)
    throw std::invalid_argument("true_extended_state: M must be q x q");
  TrueExtendedState s;
  s.pi = Eigen::VectorXd::Constant(q, x) - M.transpose() * theta;
  s.vartheta.resize(2 * q);
  s.vartheta.head(q) = s.pi;
  s.vartheta.tail(q) = theta;
  return s;
}

bool assumption1_holds(const PlantMaps& maps, double y, double t) {
  const double f = maps.f(y, t);
  if (!std::isfinite(f) || std::abs(f) <= 0.0) return false;
  return (f > 0.0) == maps.f_is_positive;
}

}  // namespace fte
