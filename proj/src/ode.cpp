#include "fte/ode.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "fte/errors.hpp"

namespace fte {

void StateLayout::add(const std::string& name, int size) {
  if (size <= 0) throw std::invalid_argument("StateLayout: field size must be positive");
  if (has(name)) throw std::invalid_argument("StateLayout: duplicate field " + name);
  fields_.push_back({name, total_, size});
  total_ += size;
}

bool StateLayout::has(const std::string& name) const {
  for (const auto& f : fields_)
    if (f.name == name) return true;
  return false;
}

const StateLayout::Field& StateLayout::find(const std::string& name) const {
  for (const auto& f : fields_)
    if (f.name == name) return f;
  throw std::invalid_argument("StateLayout: unknown field " + name);
}

int StateLayout::offset(const std::string& name) const { return find(name).offset; }
int StateLayout::size_of(const std::string& name) const { return find(name).size; }

std::string StateLayout::label(int flat_index) const {
  for (const auto& f : fields_) {
    if (flat_index >= f.offset && flat_index < f.offset + f.size) {
      if (f.size == 1) return f.name;
      return f.name + "[" + std::to_string(flat_index - f.offset) + "]";
    }
  }
  return "state[" + std::to_string(flat_index) + "]";
}

Eigen::VectorBlock<Eigen::VectorXd> StateLayout::segment(
    Eigen::VectorXd& v, const std::string& name) const {
  const Field& f = find(name);
  return v.segment(f.offset, f.size);
}

Eigen::VectorBlock<const Eigen::VectorXd> StateLayout::segment(
    const Eigen::VectorXd& v, const std::string& name) const {
  const Field& f = find(name);
  return v.segment(f.offset, f.size);
}

void validate_step_config(const StepConfig& cfg) {
  if (!(cfg.dt > 0.0)) throw ConfigError("step config: dt must be positive");
  if (!(cfg.t_final >= cfg.dt))
    throw ConfigError("step config: t_final must be at least dt");
  if (cfg.record_every < 1)
    throw ConfigError("step config: record_every must be a positive integer");
}

namespace {

void check_stage(const Eigen::VectorXd& ds, int stage, const StateLayout* layout) {
  if (ds.allFinite()) return;
  int bad = 0;
  for (int i = 0; i < ds.size(); ++i) {
    if (!std::isfinite(ds(i))) {
      bad = i;
      break;
    }
  }
  std::ostringstream os;
  os << "rk4 stage " << stage << " produced a non-finite derivative in ";
  if (layout)
    os << layout->label(bad);
  else
    os << "state[" << bad << "]";
  throw IntegrationError(os.str());
}

}  // namespace

Eigen::VectorXd rk4_step(const RhsFn& rhs, const Eigen::VectorXd& s, double t,
                         double dt, const StateLayout* layout) {
  const auto n = s.size();
  Eigen::VectorXd k1(n), k2(n), k3(n), k4(n);
  rhs(t, s, k1);
  check_stage(k1, 1, layout);
  rhs(t + 0.5 * dt, s + 0.5 * dt * k1, k2);
  check_stage(k2, 2, layout);
  rhs(t + 0.5 * dt, s + 0.5 * dt * k2, k3);
  check_stage(k3, 3, layout);
  rhs(t + dt, s + dt * k3, k4);
  check_stage(k4, 4, layout);
  return s + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

Trajectory integrate(const RhsFn& rhs, const Eigen::VectorXd& s0,
                     const StepConfig& cfg,
                     const std::vector<Observer>& observers,
                     const StateLayout* layout) {
  validate_step_config(cfg);
  const long n_steps = static_cast<long>(std::floor(cfg.t_final / cfg.dt + 1e-9));

  Trajectory traj;
  traj.t.reserve(static_cast<std::size_t>(n_steps / cfg.record_every) + 1);
  traj.s.reserve(traj.t.capacity());

  const auto n = s0.size();
  Eigen::VectorXd s = s0;
  Eigen::VectorXd k1(n), k2(n), k3(n), k4(n), tmp(n);

  auto record = [&](double t) {
    traj.t.push_back(t);
    traj.s.push_back(s);
    for (const auto& obs : observers) obs(t, s);
  };

  record(0.0);
  for (long k = 0; k < n_steps; ++k) {
    const double t = static_cast<double>(k) * cfg.dt;
    try {
      rhs(t, s, k1);
      check_stage(k1, 1, layout);
      tmp = s + 0.5 * cfg.dt * k1;
      rhs(t + 0.5 * cfg.dt, tmp, k2);
      check_stage(k2, 2, layout);
      tmp = s + 0.5 * cfg.dt * k2;
      rhs(t + 0.5 * cfg.dt, tmp, k3);
      check_stage(k3, 3, layout);
      tmp = s + cfg.dt * k3;
      rhs(t + cfg.dt, tmp, k4);
      check_stage(k4, 4, layout);
    } catch (const IntegrationError& e) {
      throw IntegrationError(std::string(e.what()) + " at t = " + std::to_string(t));
    } catch (const EvaluationError& e) {
      throw IntegrationError(std::string(e.what()) + " at t = " + std::to_string(t));
    }
    s += (cfg.dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if (!s.allFinite()) {
      int bad = 0;
      for (int i = 0; i < s.size(); ++i)
        if (!std::isfinite(s(i))) {
          bad = i;
          break;
        }
      std::ostringstream os;
      os << "state became non-finite in "
         << (layout ? layout->label(bad) : "state[" + std::to_string(bad) + "]")
         << " at t = " << static_cast<double>(k + 1) * cfg.dt;
      throw IntegrationError(os.str());
    }
    if ((k + 1) % cfg.record_every == 0)
      record(static_cast<double>(k + 1) * cfg.dt);
  }
  traj.step_count = n_steps;
  return traj;
}

}  // namespace fte
