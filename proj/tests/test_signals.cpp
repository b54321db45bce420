#include <doctest.h>

#include <cmath>
#include <random>

#include "fte/errors.hpp"
#include "fte/gains.hpp"
#include "fte/mat_estimator.hpp"
#include "fte/model.hpp"
#include "fte/signals.hpp"

namespace {

const fte::BenchmarkSignalParams kParams{0.5, 0.5, 2.0};

fte::DSignal zero_signal() {
  fte::DSignal s;
  s.d = [](double) { return 0.0; };
  s.d_dot = [](double) { return 0.0; };
  s.d_ddot = [](double) { return 0.0; };
  return s;
}

}  // namespace

TEST_CASE("d_default closed forms at t = 0 and t = pi") {
  const fte::DSignal sig = fte::d_default();
  CHECK(sig.d(0.0) == doctest::Approx(0.0));
  CHECK(sig.d_dot(0.0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(sig.d_ddot(0.0) == doctest::Approx(-1.0).epsilon(1e-14));

  const double pi = std::acos(-1.0);
  CHECK(sig.d(pi) == doctest::Approx(0.0).epsilon(1e-14));
}

TEST_CASE("d_default decays under its envelope") {
  const fte::DSignal sig = fte::d_default();
  CHECK(std::abs(sig.d(1e4)) <= 0.01);
}

TEST_CASE("d_default rejects negative time") {
  const fte::DSignal sig = fte::d_default();
  CHECK_THROWS_AS((void)sig.d(-1.0), std::domain_error);
}

TEST_CASE("derivatives match central finite differences") {
  const fte::DSignal sig = fte::d_default();
  std::mt19937 rng(2024);
  std::uniform_real_distribution<double> u(0.001, 100.0);
  const double h = 1e-4;
  for (int i = 0; i < 1000; ++i) {
    const double t = u(rng);
    const double fd1 = (sig.d(t + h) - sig.d(t - h)) / (2.0 * h);
    const double fd2 = (sig.d(t + h) - 2.0 * sig.d(t) + sig.d(t - h)) / (h * h);
    CHECK(std::abs(sig.d_dot(t) - fd1) <= 1e-6);
    CHECK(std::abs(sig.d_ddot(t) - fd2) <= 1e-6);
  }
}

TEST_CASE("d1 and phi2 initial values with the worked-example gains") {
  const fte::DSignal sig = fte::d_default();
  CHECK(std::abs(fte::d1(0.0, kParams, sig) - (-4.0 / 3.0)) <= 1e-12);
  CHECK(std::abs(fte::d1_dot(0.0, kParams, sig) - (-2.0 / 3.0)) <= 1e-12);
  CHECK(std::abs(fte::phi2(0.0, kParams, sig) - (-5.0 / 3.0)) <= 1e-12);
}

TEST_CASE("d identically zero collapses d1 and phi2") {
  const fte::DSignal sig = zero_signal();
  for (double t : {0.0, 1.0, 17.5}) {
    CHECK(fte::d1(t, kParams, sig) == 0.0);
    CHECK(fte::phi2(t, kParams, sig) == 0.0);
  }
}

TEST_CASE("phi2 stays bounded over a long scan") {
  const fte::DSignal sig = fte::d_default();
  double sup = 0.0;
  for (double t = 0.0; t <= 1000.0; t += 1e-2)
    sup = std::max(sup, std::abs(fte::phi2(t, kParams, sig)));
  CHECK(std::isfinite(sup));
  CHECK(sup > 0.0);
}

TEST_CASE("benchmark parameter validation") {
  CHECK_NOTHROW(fte::validate_params(kParams));
  CHECK_THROWS_AS(fte::validate_params({0.5, 2.0, 2.0}), fte::ConfigError);
  CHECK_THROWS_AS(fte::validate_params({-0.5, 0.5, 2.0}), fte::ConfigError);
  CHECK_THROWS_AS(fte::validate_params({0.5, 0.0, 2.0}), fte::ConfigError);
}

TEST_CASE("steady-state filter vectors") {
  const fte::DSignal sig = fte::d_default();
  const Eigen::Vector2d m1 = fte::mu_ss(0.0, kParams, sig, 1);
  const Eigen::Vector2d m2 = fte::mu_ss(0.0, kParams, sig, 2);
  CHECK(m1(0) == doctest::Approx(4.0 / 3.0).epsilon(1e-14));
  CHECK(m2(0) == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
  CHECK(m2(1) == doctest::Approx(-4.0 / 3.0).epsilon(1e-14));
}

TEST_CASE("steady-state matrix assembled from the branch vectors") {
  const fte::DSignal sig = fte::d_default();
  const Eigen::Matrix2d m = fte::M_ss(0.0, kParams, sig);
  CHECK(m(0, 0) == doctest::Approx(4.0 / 3.0).epsilon(1e-14));
  CHECK(m(0, 1) == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
  CHECK(m(1, 0) == doctest::Approx(-4.0 / 3.0).epsilon(1e-14));
  CHECK(m(1, 1) == doctest::Approx(-4.0 / 3.0).epsilon(1e-14));

  const fte::DSignal zero = zero_signal();
  const Eigen::Matrix2d mz = fte::M_ss(3.0, kParams, zero);
  CHECK(mz(1, 0) == 0.0);
  CHECK(mz(1, 1) == 0.0);
  CHECK(fte::det_M_ss(3.0, kParams, zero) == 0.0);
}

TEST_CASE("steady-state matrix satisfies the filter dynamics") {
  // Substituting M_ss into the matrix filter rhs must reproduce the analytic
  // time derivative of M_ss.
  const fte::DSignal sig = fte::d_default();
  const fte::SystemModel model = fte::make_example_system();
  Eigen::Matrix2d b = Eigen::Matrix2d::Zero();
  b(0, 0) = kParams.b1;
  b(1, 1) = kParams.b2;
  const fte::EstimatorGains gains = fte::make_gains(kParams.a, b, 1.0, true);
  for (double t : {0.0, 0.7, 3.2, 25.0, 80.0}) {
    const Eigen::Matrix2d m = fte::M_ss(t, kParams, sig);
    const Eigen::Matrix2d rhs = fte::M_rhs(m, 0.3, t, model.maps, gains);
    const Eigen::Matrix2d analytic = fte::M_ss_dot(t, kParams, sig);
    CHECK((rhs - analytic).cwiseAbs().maxCoeff() <= 1e-9);
  }
}

TEST_CASE("closed-form determinant equals the assembled determinant") {
  const fte::DSignal sig = fte::d_default();
  const Eigen::Matrix2d m0 = fte::M_ss(0.0, kParams, sig);
  const double direct = m0(0, 0) * m0(1, 1) - m0(0, 1) * m0(1, 0);
  CHECK(direct == doctest::Approx(-8.0 / 9.0).epsilon(1e-14));
  CHECK(fte::det_M_ss(0.0, kParams, sig) ==
        doctest::Approx(-8.0 / 9.0).epsilon(1e-14));

  std::mt19937 rng(11);
  std::uniform_real_distribution<double> u(0.0, 200.0);
  for (int i = 0; i < 50; ++i) {
    const double t = u(rng);
    const Eigen::Matrix2d m = fte::M_ss(t, kParams, sig);
    const double assembled = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
    CHECK(std::abs(fte::det_M_ss(t, kParams, sig) - assembled) <= 1e-12);
  }
}

TEST_CASE("d_dot fails square integrability numerically") {
  // Cumulative integral of d_dot^2 keeps growing: I(4T) - I(T) >= 0.1 for
  // T in {25, 100, 400}.
  const fte::DSignal sig = fte::d_default();
  const double dt = 1e-3;
  auto integral_to = [&](double T) {
    double acc = 0.0;
    double prev = sig.d_dot(0.0) * sig.d_dot(0.0);
    const long n = std::lround(T / dt);
    for (long k = 1; k <= n; ++k) {
      const double v = sig.d_dot(k * dt);
      const double sq = v * v;
      acc += 0.5 * (prev + sq) * dt;
      prev = sq;
    }
    return acc;
  };
  const double i25 = integral_to(25.0);
  const double i100 = integral_to(100.0);
  const double i400 = integral_to(400.0);
  const double i1600 = integral_to(1600.0);
  CHECK(i100 - i25 >= 0.1);
  CHECK(i400 - i100 >= 0.1);
  CHECK(i1600 - i400 >= 0.1);
  CHECK(i25 < i100);
  CHECK(i100 < i400);
}
