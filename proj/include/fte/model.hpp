#pragma once

#include <Eigen/Dense>
#include <functional>
#include <utility>

#include "fte/signals.hpp"

namespace fte {

// The part of the plant an estimator is allowed to see: output gain, drifts,
// regressor, and the fixed sign of f. No ground truth in here.
struct PlantMaps {
  int q = 0;
  std::function<double(double y, double t)> f;
  std::function<double(double y, double t)> g0;
  std::function<double(double y, double t)> g1;
  std::function<Eigen::VectorXd(double y, double t)> phi;
  // The sign of f never changes along admissible trajectories, so it is a
  // declared constant, not a pointwise recomputation.
  bool f_is_positive = true;
};

inline double sign_f(const PlantMaps& m) { return m.f_is_positive ? 1.0 : -1.0; }

// Full simulation model: maps plus the ground-truth parameters. theta_true
// is consumed only by the plant integrator and by test oracles; estimator
// code paths take PlantMaps and cannot reach it.
struct SystemModel {
  PlantMaps maps;
  Eigen::VectorXd theta_true;
};

// dy = f*x + g0, dx = g1 + phi^T theta. Throws EvaluationError when a map
// returns a non-finite value, naming the map and the evaluation point.
std::pair<double, double> plant_rhs(double y, double x, double t,
                                    const SystemModel& model);

// The worked example: f = 1, g0 = g1 = -y, theta = (-1, 1), regressor
// (1, phi2(t)) with phi2 built from the benchmark signal family.
SystemModel make_example_system();
SystemModel make_example_system(const BenchmarkSignalParams& params,
                                const Eigen::VectorXd& theta_true);

// True extended states behind the filtered transformations; test oracles.
struct TrueExtendedState {
  double p = 0.0;            // x - mu^T theta
  Eigen::VectorXd eta;       // (p, theta)
  Eigen::VectorXd pi;        // ones*x - M^T theta
  Eigen::VectorXd vartheta;  // (pi, theta)
};

TrueExtendedState true_extended_state(double x, const Eigen::VectorXd& theta,
                                      const Eigen::VectorXd& mu);
TrueExtendedState true_extended_state(double x, const Eigen::VectorXd& theta,
                                      const Eigen::MatrixXd& M);

// Per-sample check that |f| > 0 and that the sign of f matches the declared
// constant. Wired into runs as an observer.
bool assumption1_holds(const PlantMaps& maps, double y, double t);

}  // namespace fte
