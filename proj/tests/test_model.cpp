#include <doctest.h>

#include <cmath>
#include <random>

#include "fte/errors.hpp"
#include "fte/model.hpp"
#include "fte/ode.hpp"

using Eigen::MatrixXd;
using Eigen::VectorXd;

namespace {

fte::SystemModel drift_free_model(double f_value, double g0_value) {
  fte::SystemModel m;
  m.maps.q = 2;
  m.maps.f = [f_value](double, double) { return f_value; };
  m.maps.f_is_positive = f_value > 0.0;
  m.maps.g0 = [g0_value](double, double) { return g0_value; };
  m.maps.g1 = [](double, double) { return 0.0; };
  m.maps.phi = [](double, double) { return Eigen::Vector2d::Zero().eval(); };
  m.theta_true = Eigen::Vector2d::Zero();
  return m;
}

}  // namespace

TEST_CASE("plant rhs on the worked example at the origin") {
  const fte::SystemModel model = fte::make_example_system();
  const auto [dy, dx] = fte::plant_rhs(0.0, 0.0, 0.0, model);
  CHECK(dy == doctest::Approx(0.0));
  CHECK(dx == doctest::Approx(-8.0 / 3.0).epsilon(1e-14));
}

TEST_CASE("plant rhs with zero drift terms") {
  const fte::SystemModel m = drift_free_model(1.0, 0.0);
  const auto [dy, dx] = fte::plant_rhs(0.0, 3.0, 0.0, m);
  CHECK(dy == doctest::Approx(3.0));
  CHECK(dx == doctest::Approx(0.0));
}

TEST_CASE("plant rhs direct substitution") {
  const fte::SystemModel m = drift_free_model(2.0, -1.0);
  const auto [dy, dx] = fte::plant_rhs(0.0, 1.0, 0.0, m);
  CHECK(dy == doctest::Approx(1.0));
  CHECK(dx == doctest::Approx(0.0));
}

TEST_CASE("plant rhs flags non-finite map evaluations") {
  fte::SystemModel m = drift_free_model(1.0, 0.0);
  m.maps.g0 = [](double, double) {
    return std::numeric_limits<double>::quiet_NaN();
  };
  CHECK_THROWS_WITH_AS((void)fte::plant_rhs(0.5, 1.0, 2.0, m),
                       doctest::Contains("g0"), fte::EvaluationError);
}

TEST_CASE("worked example system definition") {
  const fte::SystemModel model = fte::make_example_system();
  CHECK(model.maps.q == 2);
  REQUIRE(model.theta_true.size() == 2);
  CHECK(model.theta_true(0) == -1.0);
  CHECK(model.theta_true(1) == 1.0);
  CHECK(model.maps.f_is_positive);
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  for (int i = 0; i < 25; ++i) {
    const double y = u(rng);
    const double t = std::abs(u(rng));
    CHECK(model.maps.f(y, t) == 1.0);
    CHECK(model.maps.g0(y, t) == -y);
    CHECK(model.maps.g1(y, t) == -y);
    const VectorXd phi = model.maps.phi(y, t);
    REQUIRE(phi.size() == 2);
    CHECK(phi(0) == 1.0);
  }
}

TEST_CASE("extended state from the vector filter") {
  VectorXd theta(2), mu = VectorXd::Zero(2);
  theta << 1.0, 1.0;
  const fte::TrueExtendedState s = fte::true_extended_state(2.0, theta, mu);
  CHECK(s.p == doctest::Approx(2.0));

  VectorXd theta2(2), mu2(2);
  theta2 << -1.0, 1.0;
  mu2 << 4.0 / 3.0, 0.0;
  const fte::TrueExtendedState s2 = fte::true_extended_state(1.0, theta2, mu2);
  CHECK(s2.p == doctest::Approx(7.0 / 3.0).epsilon(1e-14));
  REQUIRE(s2.eta.size() == 3);
  CHECK(s2.eta(0) == s2.p);
  CHECK(s2.eta(1) == theta2(0));
}

TEST_CASE("extended state from the matrix filter") {
  VectorXd theta(2);
  theta << -1.0, 1.0;
  const MatrixXd m = MatrixXd::Identity(2, 2);
  const fte::TrueExtendedState s = fte::true_extended_state(0.0, theta, m);
  REQUIRE(s.pi.size() == 2);
  CHECK(s.pi(0) == doctest::Approx(1.0));
  CHECK(s.pi(1) == doctest::Approx(-1.0));
  REQUIRE(s.vartheta.size() == 4);
  CHECK(s.vartheta(2) == theta(0));
  CHECK(s.vartheta(3) == theta(1));
}

TEST_CASE("transformation identities reconstruct x at random states") {
  std::mt19937 rng(99);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int trial = 0; trial < 100; ++trial) {
    const double x = u(rng);
    VectorXd theta(2), mu(2);
    theta << u(rng), u(rng);
    mu << u(rng), u(rng);
    MatrixXd m(2, 2);
    m << u(rng), u(rng), u(rng), u(rng);

    const fte::TrueExtendedState sv = fte::true_extended_state(x, theta, mu);
    CHECK(std::abs(sv.p + mu.dot(theta) - x) <= 1e-14);

    const fte::TrueExtendedState sm = fte::true_extended_state(x, theta, m);
    const VectorXd chi = sm.pi + m.transpose() * theta;
    CHECK(std::abs(chi(0) - x) <= 1e-13);
    CHECK(std::abs(chi(1) - x) <= 1e-13);
  }
}

TEST_CASE("extended state rejects dimension mismatches") {
  VectorXd theta = VectorXd::Ones(3);
  VectorXd mu = VectorXd::Zero(2);
  CHECK_THROWS_AS((void)fte::true_extended_state(1.0, theta, mu),
                  std::invalid_argument);
}

TEST_CASE("example trajectories stay bounded over a long horizon") {
  // theta^T phi = -1 + phi2 turns the example plant into a Hurwitz linear
  // system driven by the bounded phi2, so |y| and |x| must stay small.
  const fte::SystemModel model = fte::make_example_system();
  fte::StepConfig cfg;
  cfg.dt = 1e-3;
  cfg.t_final = 500.0;
  cfg.record_every = 1000;
  fte::RhsFn rhs = [&model](double t, const VectorXd& s, VectorXd& ds) {
    const auto [dy, dx] = fte::plant_rhs(s(0), s(1), t, model);
    ds(0) = dy;
    ds(1) = dx;
  };
  double sup_y = 0.0, sup_x = 0.0;
  fte::Observer probe = [&](double, const VectorXd& s) {
    sup_y = std::max(sup_y, std::abs(s(0)));
    sup_x = std::max(sup_x, std::abs(s(1)));
  };
  (void)fte::integrate(rhs, Eigen::Vector2d::Zero(), cfg, {probe});
  CHECK(sup_y <= 10.0);
  CHECK(sup_x <= 10.0);
  CHECK(sup_y > 0.0);
}

TEST_CASE("declared sign assumption holds along the example trajectory") {
  const fte::SystemModel model = fte::make_example_system();
  for (double t : {0.0, 1.0, 50.0})
    for (double y : {-2.0, 0.0, 2.0})
      CHECK(fte::assumption1_holds(model.maps, y, t));

  fte::SystemModel flipped = fte::make_example_system();
  flipped.maps.f_is_positive = false;  // now contradicts f == 1
  CHECK_FALSE(fte::assumption1_holds(flipped.maps, 0.0, 0.0));
}
