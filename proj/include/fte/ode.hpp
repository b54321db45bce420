#pragma once

#include <Eigen/Dense>
#include <functional>
#include <string>
#include <vector>

namespace fte {

// Names the segments of a flat state vector so composed systems can address
// their pieces and integration errors can name the offending coordinate.
// Fields are contiguous, non-overlapping, and cover the vector exactly.
class StateLayout {
 public:
  void add(const std::string& name, int size);
  bool has(const std::string& name) const;
  int offset(const std::string& name) const;
  int size_of(const std::string& name) const;
  int total() const { return total_; }
  // "mu_vec_b1[1]" style label for a flat index; used in error messages.
  std::string label(int flat_index) const;

  Eigen::VectorBlock<Eigen::VectorXd> segment(Eigen::VectorXd& v,
                                              const std::string& name) const;
  Eigen::VectorBlock<const Eigen::VectorXd> segment(const Eigen::VectorXd& v,
                                                    const std::string& name) const;

 private:
  struct Field {
    std::string name;
    int offset;
    int size;
  };
  const Field& find(const std::string& name) const;
  std::vector<Field> fields_;
  int total_ = 0;
};

struct StepConfig {
  double dt = 1e-3;
  double t_final = 0.0;
  int record_every = 1;
};

void validate_step_config(const StepConfig& cfg);

// Writes ds in place; must not resize it.
using RhsFn = std::function<void(double t, const Eigen::VectorXd& s,
                                 Eigen::VectorXd& ds)>;

// Called at every recorded step with (t, state).
using Observer = std::function<void(double t, const Eigen::VectorXd& s)>;

struct Trajectory {
  std::vector<double> t;
  std::vector<Eigen::VectorXd> s;
  long step_count = 0;
};

// One classical fourth-order step. Every stage is checked for finiteness;
// a bad stage raises IntegrationError naming the stage and the coordinate
// (via the layout when given, flat index otherwise).
Eigen::VectorXd rk4_step(const RhsFn& rhs, const Eigen::VectorXd& s, double t,
                         double dt, const StateLayout* layout = nullptr);

// Fixed-step march over [0, t_final] with t_k = k*dt built from the integer
// step count, never by accumulation. Records (and calls observers) at t = 0
// and every record_every-th step; record count is
// floor(t_final/(dt*record_every)) + 1.
Trajectory integrate(const RhsFn& rhs, const Eigen::VectorXd& s0,
                     const StepConfig& cfg,
                     const std::vector<Observer>& observers = {},
                     const StateLayout* layout = nullptr);

}  // namespace fte
