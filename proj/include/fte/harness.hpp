#pragma once

#include <Eigen/Dense>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "fte/csv.hpp"
#include "fte/diagnostics.hpp"
#include "fte/gains.hpp"
#include "fte/model.hpp"
#include "fte/ode.hpp"

namespace fte {

enum class EstimatorKind { vec_b1, vec_b2, mat_B };

std::string to_string(EstimatorKind kind);
EstimatorKind estimator_from_string(const std::string& name);

struct ScenarioConfig {
  std::string system = "example";  // "example" or a path to an override file
  std::vector<EstimatorKind> estimators = {
      EstimatorKind::vec_b1, EstimatorKind::vec_b2, EstimatorKind::mat_B};
  double a = 0.5;
  double b1 = 0.5;
  double b2 = 2.0;
  double gamma = 1.0;  // Gamma = gamma * I
  double dt = 1e-3;
  double t_final = 300.0;
  int record_every = 1;
  // Keyed by state-layout field name ("y", "x", "mu_vec_b1", "M_mat_B", ...).
  // A single value broadcasts across the field; a list must match its size.
  std::map<std::string, std::vector<double>> initial_conditions;
  double m0 = 0.0;  // when nonzero, M(0) = m0 * I (overridden by an explicit IC)
  std::string output_dir = "out";
  std::string file_stem = "run";
  bool emit_svg = true;
  bool det_log_y = false;  // log ordinate for the |det M| panel
};

// Strict schema: schema_version is required and must equal 1; unknown fields
// are rejected. load_config reads a file; config_from_json_text parses a
// document given as text (used by tests).
ScenarioConfig load_config(const std::filesystem::path& path);
ScenarioConfig config_from_json_text(const std::string& text);
std::string config_to_json_text(const ScenarioConfig& cfg);

// Field-level checks, gain validation per selected estimator, and the
// explicit-integrator stability guard: configurations with
// dt * gamma * a * sup||M B M^T|| > 2.5 are refused (the fourth-order scheme
// is stable on the real axis only up to about 2.785). The sup is estimated
// from the steady-state filter response over the run horizon.
void validate_config(const ScenarioConfig& cfg);

// Estimated stiffness product dt * gamma * a * sup||M B M^T|| for reporting.
double effective_stiffness(const ScenarioConfig& cfg);

// The assembled coupled system: plant + every selected estimator + running
// integral accumulators, with a layout naming each block. Tests reuse this
// to wrap the rhs with extra coordinates.
struct ScenarioSystem {
  StateLayout layout;
  RhsFn rhs;
  Eigen::VectorXd s0;
  SystemModel model;
  BenchmarkSignalParams params;
  DSignal dsig;
  std::map<EstimatorKind, EstimatorGains> gains;
};

ScenarioSystem build_scenario(const ScenarioConfig& cfg);

struct EstimatorArtifacts {
  EstimatorKind kind = EstimatorKind::vec_b1;
  std::vector<double> x_hat;
  std::vector<double> x_err;           // x - x_hat
  std::vector<Eigen::VectorXd> theta_hat;
  std::vector<double> theta_err_norm;  // ||theta - theta_hat||_2
  std::vector<double> V;               // Lyapunov value of the reconstructed error
  OvershootMetric overshoot;
};

struct RunArtifacts {
  std::vector<double> t;
  std::vector<double> y;
  std::vector<double> x;
  std::vector<EstimatorArtifacts> estimators;

  // Present when mat_B is selected; empty otherwise.
  std::vector<Eigen::MatrixXd> M;
  std::vector<double> det_M;
  std::vector<double> abs_det_M;
  std::vector<double> lambda_m_sq;
  std::vector<double> int_det_M_sq;
  ExcitationReport excitation;

  std::vector<double> int_d_dot_sq;

  long step_count = 0;
  double wall_time_s = 0.0;
  ScenarioConfig config;  // resolved echo

  Table table;  // exactly what emit_csv wrote
  std::filesystem::path csv_path;
  std::filesystem::path meta_path;
  std::vector<std::filesystem::path> svg_paths;
};

// Integrates the configured scenario and persists CSV + metadata (+ SVG when
// enabled) under cfg.output_dir with cfg.file_stem as the name prefix.
RunArtifacts run_scenario(const ScenarioConfig& cfg);

// Three-estimator comparison with the worked-example defaults. Emits the
// error figure (parameter-error and state-error panels; dashed, dash-dot,
// solid for vec_b1, vec_b2, mat_B) and the |det M| figure.
RunArtifacts figure1_scenario(const std::string& output_dir = "out");

struct Figure2Result {
  std::vector<double> gammas;
  std::vector<RunArtifacts> runs;
  std::filesystem::path svg_path;
  std::filesystem::path metrics_csv_path;
};

// Gain sweep gamma in {1, 100, 10000} on the matrix estimator, step size
// lowered with gamma (1e-3, 1e-4, 1e-5). Emits overlaid transient panels and
// an overshoot metrics table.
Figure2Result figure2_scenario(const std::string& output_dir = "out");

// Diagnostics over an externally supplied CSV. Column conventions: the time
// column is "t"; a matrix block uses names M00, M01, ..., row-major; a
// regressor block uses phi0, phi1, .... pe_start restricts the PE-margin
// minimization to windows starting at or after that time.
ExcitationReport diagnose_trace(const std::filesystem::path& csv_path,
                                double window, double pe_start = 0.0);

}  // namespace fte
