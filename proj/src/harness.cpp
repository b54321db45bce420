#include "fte/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "fte/errors.hpp"
#include "fte/mat_estimator.hpp"
#include "fte/numerics.hpp"
#include "fte/svg.hpp"
#include "fte/vec_estimator.hpp"

namespace fte {

using json = nlohmann::ordered_json;

std::string to_string(EstimatorKind kind) {
  switch (kind) {
    case EstimatorKind::vec_b1: return "vec_b1";
    case EstimatorKind::vec_b2: return "vec_b2";
    case EstimatorKind::mat_B: return "mat_B";
  }
  return "unknown";
}

EstimatorKind estimator_from_string(const std::string& name) {
  if (name == "vec_b1") return EstimatorKind::vec_b1;
  if (name == "vec_b2") return EstimatorKind::vec_b2;
  if (name == "mat_B") return EstimatorKind::mat_B;
  throw ConfigError("unknown estimator '" + name +
                    "' (expected vec_b1, vec_b2, or mat_B)");
}

namespace {

const char* style_for(EstimatorKind kind) {
  switch (kind) {
    case EstimatorKind::vec_b1: return "dashed";
    case EstimatorKind::vec_b2: return "dash-dot";
    case EstimatorKind::mat_B: return "solid";
  }
  return "solid";
}

double require_number(const json& j, const std::string& key) {
  if (!j.is_number()) throw ConfigError("config field '" + key + "' must be a number");
  return j.get<double>();
}

Eigen::VectorXd theta_from_system_field(const std::string& system) {
  Eigen::VectorXd theta(2);
  theta << -1.0, 1.0;
  if (system == "example") return theta;
  std::ifstream in(system);
  if (!in)
    throw ConfigError("system override file not found: " + system);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw ConfigError("system override file " + system + ": " + e.what());
  }
  for (const auto& item : j.items()) {
    if (item.key() != "theta_true")
      throw ConfigError("system override file: unknown field '" + item.key() + "'");
  }
  if (!j.contains("theta_true") || !j["theta_true"].is_array() ||
      j["theta_true"].size() != 2)
    throw ConfigError("system override file: theta_true must be a 2-element array");
  theta(0) = require_number(j["theta_true"][0], "theta_true[0]");
  theta(1) = require_number(j["theta_true"][1], "theta_true[1]");
  return theta;
}

}  // namespace

ScenarioConfig config_from_json_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config must be a JSON object");

  static const std::set<std::string> known = {
      "schema_version", "system", "estimators", "a", "b1", "b2", "gamma",
      "dt", "t_final", "record_every", "initial_conditions", "m0",
      "output_dir", "file_stem", "emit_svg", "det_log_y"};
  for (const auto& item : j.items()) {
    if (!known.count(item.key()))
      throw ConfigError("config: unknown field '" + item.key() + "'");
  }
  if (!j.contains("schema_version"))
    throw ConfigError("config: schema_version is required");
  if (!j["schema_version"].is_number_integer() ||
      j["schema_version"].get<int>() != 1)
    throw ConfigError("config: schema_version must be the integer 1");

  ScenarioConfig cfg;
  if (j.contains("system")) {
    if (!j["system"].is_string()) throw ConfigError("config: system must be a string");
    cfg.system = j["system"].get<std::string>();
  }
  if (j.contains("estimators")) {
    if (!j["estimators"].is_array())
      throw ConfigError("config: estimators must be an array of names");
    cfg.estimators.clear();
    for (const auto& e : j["estimators"]) {
      if (!e.is_string())
        throw ConfigError("config: estimators entries must be strings");
      cfg.estimators.push_back(estimator_from_string(e.get<std::string>()));
    }
  }
  auto num = [&](const char* key, double& slot) {
    if (j.contains(key)) slot = require_number(j[key], key);
  };
  num("a", cfg.a);
  num("b1", cfg.b1);
  num("b2", cfg.b2);
  num("gamma", cfg.gamma);
  num("dt", cfg.dt);
  num("t_final", cfg.t_final);
  num("m0", cfg.m0);
  if (j.contains("record_every")) {
    if (!j["record_every"].is_number_integer())
      throw ConfigError("config: record_every must be an integer");
    cfg.record_every = j["record_every"].get<int>();
  }
  if (j.contains("initial_conditions")) {
    if (!j["initial_conditions"].is_object())
      throw ConfigError("config: initial_conditions must be an object");
    for (const auto& item : j["initial_conditions"].items()) {
      std::vector<double> vals;
      if (item.value().is_number()) {
        vals.push_back(item.value().get<double>());
      } else if (item.value().is_array()) {
        for (const auto& v : item.value())
          vals.push_back(require_number(v, "initial_conditions." + item.key()));
      } else {
        throw ConfigError("config: initial_conditions." + item.key() +
                          " must be a number or an array");
      }
      cfg.initial_conditions[item.key()] = std::move(vals);
    }
  }
  auto str = [&](const char* key, std::string& slot) {
    if (j.contains(key)) {
      if (!j[key].is_string())
        throw ConfigError(std::string("config: ") + key + " must be a string");
      slot = j[key].get<std::string>();
    }
  };
  str("output_dir", cfg.output_dir);
  str("file_stem", cfg.file_stem);
  auto flag = [&](const char* key, bool& slot) {
    if (j.contains(key)) {
      if (!j[key].is_boolean())
        throw ConfigError(std::string("config: ") + key + " must be a boolean");
      slot = j[key].get<bool>();
    }
  };
  flag("emit_svg", cfg.emit_svg);
  flag("det_log_y", cfg.det_log_y);
  return cfg;
}

ScenarioConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return config_from_json_text(ss.str());
}

std::string config_to_json_text(const ScenarioConfig& cfg) {
  json j;
  j["schema_version"] = 1;
  j["system"] = cfg.system;
  json ests = json::array();
  for (auto e : cfg.estimators) ests.push_back(to_string(e));
  j["estimators"] = ests;
  j["a"] = cfg.a;
  j["b1"] = cfg.b1;
  j["b2"] = cfg.b2;
  j["gamma"] = cfg.gamma;
  j["dt"] = cfg.dt;
  j["t_final"] = cfg.t_final;
  j["record_every"] = cfg.record_every;
  json ics = json::object();
  for (const auto& [name, vals] : cfg.initial_conditions) ics[name] = vals;
  j["initial_conditions"] = ics;
  j["m0"] = cfg.m0;
  j["output_dir"] = cfg.output_dir;
  j["file_stem"] = cfg.file_stem;
  j["emit_svg"] = cfg.emit_svg;
  j["det_log_y"] = cfg.det_log_y;
  return j.dump(2);
}

double effective_stiffness(const ScenarioConfig& cfg) {
  const BenchmarkSignalParams params{cfg.a, cfg.b1, cfg.b2};
  const DSignal sig = d_default();
  Eigen::Matrix2d B = Eigen::Matrix2d::Zero();
  B(0, 0) = cfg.b1;
  B(1, 1) = cfg.b2;
  double sup = 0.0;
  const double horizon = std::min(cfg.t_final, 600.0);
  for (double t = 0.0; t <= horizon; t += 0.5) {
    const Eigen::Matrix2d m = M_ss(t, params, sig);
    const Eigen::Matrix2d mbm = m * B * m.transpose();
    sup = std::max(sup, sym_eigenvalues(mbm).maxCoeff());
  }
  return cfg.dt * cfg.gamma * cfg.a * sup;
}

void validate_config(const ScenarioConfig& cfg) {
  std::vector<std::string> problems;
  auto positive = [&](double v, const char* name) {
    if (!(v > 0.0)) problems.push_back(std::string(name) + " must be positive");
  };
  positive(cfg.a, "a");
  positive(cfg.b1, "b1");
  positive(cfg.b2, "b2");
  positive(cfg.gamma, "gamma");
  positive(cfg.dt, "dt");
  if (!(cfg.t_final >= cfg.dt)) problems.push_back("t_final must be at least dt");
  if (cfg.record_every < 1) problems.push_back("record_every must be a positive integer");
  if (cfg.estimators.empty()) problems.push_back("estimators must not be empty");
  {
    std::set<EstimatorKind> seen;
    for (auto e : cfg.estimators)
      if (!seen.insert(e).second)
        problems.push_back("estimators contains '" + to_string(e) + "' twice");
  }
  // The benchmark regressor construction divides by b1 - b2, and the matrix
  // filter needs distinct eigenvalues; both rule out b1 == b2 here.
  if (cfg.b1 == cfg.b2) problems.push_back("b1 and b2 must differ");

  if (problems.empty()) {
    for (auto e : cfg.estimators) {
      Eigen::Matrix2d B = Eigen::Matrix2d::Zero();
      bool matrix = e == EstimatorKind::mat_B;
      if (e == EstimatorKind::vec_b1)
        B = cfg.b1 * Eigen::Matrix2d::Identity();
      else if (e == EstimatorKind::vec_b2)
        B = cfg.b2 * Eigen::Matrix2d::Identity();
      else {
        B(0, 0) = cfg.b1;
        B(1, 1) = cfg.b2;
      }
      const GainValidation v =
          validate_gains(make_gains(cfg.a, B, cfg.gamma, matrix), matrix);
      for (const auto& msg : v.violations)
        problems.push_back(to_string(e) + ": " + msg);
    }
  }

  if (problems.empty() && cfg.system != "example")
    theta_from_system_field(cfg.system);  // throws ConfigError when unusable

  if (problems.empty()) {
    const double stiffness = effective_stiffness(cfg);
    if (stiffness > 2.5) {
      std::ostringstream os;
      os << "dt * gamma * a * sup||M B M^T|| = " << stiffness
         << " exceeds the stability limit 2.5 of the explicit integrator; "
            "reduce dt or gamma";
      problems.push_back(os.str());
    }
  }

  if (!problems.empty()) {
    std::string msg = "invalid config:";
    for (const auto& p : problems) msg += "\n  - " + p;
    throw ConfigError(msg);
  }
}

ScenarioSystem build_scenario(const ScenarioConfig& cfg) {
  ScenarioSystem sys;
  sys.params = BenchmarkSignalParams{cfg.a, cfg.b1, cfg.b2};
  sys.dsig = d_default();
  sys.model = make_example_system(sys.params, theta_from_system_field(cfg.system));

  const int q = sys.model.maps.q;
  sys.layout.add("y", 1);
  sys.layout.add("x", 1);
  bool has_mat = false;
  for (auto e : cfg.estimators) {
    const std::string name = to_string(e);
    if (e == EstimatorKind::mat_B) {
      has_mat = true;
      sys.layout.add("zeta_" + name, 2 * q);
      sys.layout.add("M_" + name, q * q);  // column-major
      Eigen::Matrix2d B = Eigen::Matrix2d::Zero();
      B(0, 0) = cfg.b1;
      B(1, 1) = cfg.b2;
      sys.gains.emplace(e, make_gains(cfg.a, B, cfg.gamma, true));
    } else {
      sys.layout.add("zeta_" + name, 1 + q);
      sys.layout.add("mu_" + name, q);
      const double b = e == EstimatorKind::vec_b1 ? cfg.b1 : cfg.b2;
      sys.gains.emplace(
          e, make_gains(cfg.a, b * Eigen::MatrixXd::Identity(q, q), cfg.gamma,
                        false));
    }
  }
  if (has_mat) sys.layout.add("int_det_M_sq", 1);
  sys.layout.add("int_d_dot_sq", 1);

  // Initial state: all zero unless configured otherwise.
  sys.s0 = Eigen::VectorXd::Zero(sys.layout.total());
  if (cfg.m0 != 0.0 && has_mat) {
    Eigen::Map<Eigen::MatrixXd> m(
        sys.s0.data() + sys.layout.offset("M_mat_B"), q, q);
    m = cfg.m0 * Eigen::MatrixXd::Identity(q, q);
  }
  for (const auto& [name, vals] : cfg.initial_conditions) {
    if (!sys.layout.has(name))
      throw ConfigError("initial_conditions: unknown state field '" + name + "'");
    const int off = sys.layout.offset(name);
    const int size = sys.layout.size_of(name);
    if (vals.size() == 1) {
      for (int i = 0; i < size; ++i) sys.s0(off + i) = vals[0];
    } else if (static_cast<int>(vals.size()) == size) {
      for (int i = 0; i < size; ++i) sys.s0(off + i) = vals[i];
    } else {
      throw ConfigError("initial_conditions: field '" + name + "' expects 1 or " +
                        std::to_string(size) + " values");
    }
  }

  struct EstimatorSlot {
    EstimatorKind kind;
    int zeta_off;
    int filter_off;  // mu or M
    EstimatorGains gains;
  };
  std::vector<EstimatorSlot> slots;
  for (auto e : cfg.estimators) {
    const std::string name = to_string(e);
    slots.push_back({e, sys.layout.offset("zeta_" + name),
                     sys.layout.offset(e == EstimatorKind::mat_B ? "M_" + name
                                                                 : "mu_" + name),
                     sys.gains.at(e)});
  }
  const int det_acc = has_mat ? sys.layout.offset("int_det_M_sq") : -1;
  const int ddot_acc = sys.layout.offset("int_d_dot_sq");
  const SystemModel model = sys.model;
  const DSignal dsig = sys.dsig;

  sys.rhs = [slots, model, dsig, det_acc, ddot_acc, q](
                double t, const Eigen::VectorXd& s, Eigen::VectorXd& ds) {
    const double y = s(0);
    const double x = s(1);
    const auto [dy, dx] = plant_rhs(y, x, t, model);
    ds(0) = dy;
    ds(1) = dx;
    for (const auto& slot : slots) {
      if (slot.kind == EstimatorKind::mat_B) {
        MatEstimatorState st;
        st.zeta = s.segment(slot.zeta_off, 2 * q);
        st.M = Eigen::Map<const Eigen::MatrixXd>(s.data() + slot.filter_off, q, q);
        st.t = t;
        ds.segment(slot.zeta_off, 2 * q) =
            zeta_rhs_mat(st, y, model.maps, slot.gains);
        const Eigen::MatrixXd m_dot = M_rhs(st.M, y, t, model.maps, slot.gains);
        Eigen::Map<Eigen::MatrixXd>(ds.data() + slot.filter_off, q, q) = m_dot;
        if (det_acc >= 0) {
          const double det = det_dense(st.M);
          ds(det_acc) = det * det;
        }
      } else {
        VecEstimatorState st;
        st.zeta = s.segment(slot.zeta_off, 1 + q);
        st.mu = s.segment(slot.filter_off, q);
        st.t = t;
        ds.segment(slot.zeta_off, 1 + q) =
            zeta_rhs_vec(st, y, model.maps, slot.gains);
        ds.segment(slot.filter_off, q) =
            mu_rhs(st.mu, y, t, model.maps, slot.gains);
      }
    }
    const double dd = dsig.d_dot(t);
    ds(ddot_acc) = dd * dd;
  };
  return sys;
}

namespace {

json overshoot_to_json(const OvershootMetric& m) {
  json j;
  j["peak"] = m.peak;
  j["settle_time"] = std::isinf(m.settle_time) ? json("inf") : json(m.settle_time);
  j["threshold"] = m.threshold;
  return j;
}

}  // namespace

RunArtifacts run_scenario(const ScenarioConfig& cfg) {
  validate_config(cfg);
  ScenarioSystem sys = build_scenario(cfg);

  StepConfig scfg;
  scfg.dt = cfg.dt;
  scfg.t_final = cfg.t_final;
  scfg.record_every = cfg.record_every;

  // Observer: the declared sign of f must hold along the whole trajectory.
  const PlantMaps maps = sys.model.maps;
  Observer sign_monitor = [maps](double t, const Eigen::VectorXd& s) {
    if (!assumption1_holds(maps, s(0), t)) {
      std::ostringstream os;
      os << "output-gain sign assumption violated at t = " << t;
      throw IntegrationError(os.str());
    }
  };

  const auto wall_start = std::chrono::steady_clock::now();
  Trajectory traj = integrate(sys.rhs, sys.s0, scfg, {sign_monitor}, &sys.layout);
  const auto wall_end = std::chrono::steady_clock::now();

  RunArtifacts art;
  art.config = cfg;
  art.step_count = traj.step_count;
  art.wall_time_s = std::chrono::duration<double>(wall_end - wall_start).count();
  art.t = traj.t;

  const int q = sys.model.maps.q;
  const Eigen::VectorXd theta_true = sys.model.theta_true;
  const std::size_t n = traj.t.size();
  art.y.resize(n);
  art.x.resize(n);
  art.int_d_dot_sq.resize(n);
  const bool has_mat = sys.layout.has("M_mat_B");
  if (has_mat) {
    art.M.resize(n);
    art.det_M.resize(n);
    art.abs_det_M.resize(n);
    art.lambda_m_sq.resize(n);
    art.int_det_M_sq.resize(n);
  }
  for (auto e : cfg.estimators) {
    EstimatorArtifacts ea;
    ea.kind = e;
    ea.x_hat.resize(n);
    ea.x_err.resize(n);
    ea.theta_hat.resize(n);
    ea.theta_err_norm.resize(n);
    ea.V.resize(n);
    art.estimators.push_back(std::move(ea));
  }

  for (std::size_t i = 0; i < n; ++i) {
    const Eigen::VectorXd& s = traj.s[i];
    const double t = traj.t[i];
    const double y = s(0);
    const double x = s(1);
    art.y[i] = y;
    art.x[i] = x;
    art.int_d_dot_sq[i] = s(sys.layout.offset("int_d_dot_sq"));

    for (std::size_t ei = 0; ei < cfg.estimators.size(); ++ei) {
      const EstimatorKind kind = cfg.estimators[ei];
      EstimatorArtifacts& ea = art.estimators[ei];
      const EstimatorGains& gains = sys.gains.at(kind);
      const std::string name = to_string(kind);
      const double sgn = sign_f(sys.model.maps);
      if (kind == EstimatorKind::mat_B) {
        MatEstimatorState st;
        st.zeta = s.segment(sys.layout.offset("zeta_" + name), 2 * q);
        st.M = Eigen::Map<const Eigen::MatrixXd>(
            s.data() + sys.layout.offset("M_" + name), q, q);
        st.t = t;
        const auto [x_hat, theta_hat] = estimates_mat(st, y, gains, sgn);
        ea.x_hat[i] = x_hat;
        ea.x_err[i] = x - x_hat;
        ea.theta_hat[i] = theta_hat;
        ea.theta_err_norm[i] = (theta_true - theta_hat).norm();
        const Eigen::VectorXd w = st.zeta + beta_mat(y, st.M, gains, sgn);
        const TrueExtendedState tes = true_extended_state(x, theta_true, st.M);
        ea.V[i] = lyapunov_mat(tes.vartheta - w, gains);
      } else {
        VecEstimatorState st;
        st.zeta = s.segment(sys.layout.offset("zeta_" + name), 1 + q);
        st.mu = s.segment(sys.layout.offset("mu_" + name), q);
        st.t = t;
        const auto [x_hat, theta_hat] = estimates_vec(st, y, gains, sgn);
        ea.x_hat[i] = x_hat;
        ea.x_err[i] = x - x_hat;
        ea.theta_hat[i] = theta_hat;
        ea.theta_err_norm[i] = (theta_true - theta_hat).norm();
        const Eigen::VectorXd w = st.zeta + beta_vec(y, st.mu, gains, sgn);
        const TrueExtendedState tes = true_extended_state(x, theta_true, st.mu);
        ea.V[i] = lyapunov_vec(tes.eta - w, gains);
      }
    }

    if (has_mat) {
      const Eigen::MatrixXd m = Eigen::Map<const Eigen::MatrixXd>(
          s.data() + sys.layout.offset("M_mat_B"), q, q);
      art.M[i] = m;
      art.det_M[i] = det_dense(m);
      art.abs_det_M[i] = std::abs(art.det_M[i]);
      art.lambda_m_sq[i] =
          std::max(0.0, sym_eigenvalues(m * m.transpose())(0));
      art.int_det_M_sq[i] = s(sys.layout.offset("int_det_M_sq"));
    }
  }

  // Overshoot metrics: threshold 5% of the first post-initial error norm.
  for (auto& ea : art.estimators) {
    const std::size_t first = n > 1 ? 1 : 0;
    const double thr = 0.05 * ea.theta_err_norm[first];
    ea.overshoot = overshoot(art.t, ea.theta_err_norm, thr);
  }

  if (has_mat) art.excitation = det_l2_report(art.t, art.M);

  // CSV table; column order is fixed and documented in the README.
  Table& tbl = art.table;
  tbl.columns = {"t", "y", "x"};
  for (auto e : cfg.estimators) {
    const std::string name = to_string(e);
    tbl.columns.push_back("xhat_" + name);
    tbl.columns.push_back("x_err_" + name);
    for (int k = 0; k < q; ++k)
      tbl.columns.push_back("thetahat_" + name + "_" + std::to_string(k));
    tbl.columns.push_back("theta_err_norm_" + name);
    tbl.columns.push_back("V_" + name);
  }
  if (has_mat) {
    for (int r = 0; r < q; ++r)
      for (int c = 0; c < q; ++c)
        tbl.columns.push_back("M" + std::to_string(r) + std::to_string(c));
    tbl.columns.insert(tbl.columns.end(),
                       {"det_M", "abs_det_M", "lambda_m_sq", "int_det_M_sq"});
  }
  tbl.columns.push_back("int_d_dot_sq");

  tbl.rows.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> row;
    row.reserve(tbl.columns.size());
    row.push_back(art.t[i]);
    row.push_back(art.y[i]);
    row.push_back(art.x[i]);
    for (const auto& ea : art.estimators) {
      row.push_back(ea.x_hat[i]);
      row.push_back(ea.x_err[i]);
      for (int k = 0; k < q; ++k) row.push_back(ea.theta_hat[i](k));
      row.push_back(ea.theta_err_norm[i]);
      row.push_back(ea.V[i]);
    }
    if (has_mat) {
      for (int r = 0; r < q; ++r)
        for (int c = 0; c < q; ++c) row.push_back(art.M[i](r, c));
      row.push_back(art.det_M[i]);
      row.push_back(art.abs_det_M[i]);
      row.push_back(art.lambda_m_sq[i]);
      row.push_back(art.int_det_M_sq[i]);
    }
    row.push_back(art.int_d_dot_sq[i]);
    tbl.rows.push_back(std::move(row));
  }

  // Persist.
  std::error_code ec;
  std::filesystem::create_directories(cfg.output_dir, ec);
  if (ec) throw IoError("cannot create output directory " + cfg.output_dir);
  const std::filesystem::path dir(cfg.output_dir);
  art.csv_path = dir / (cfg.file_stem + ".csv");
  emit_csv(tbl, art.csv_path);

  if (cfg.emit_svg) {
    std::vector<PanelSpec> error_panels(2);
    error_panels[0].title = "parameter estimation error";
    error_panels[0].y_label = "||theta - theta_hat|| [-]";
    error_panels[1].title = "state estimation error";
    error_panels[1].y_label = "x - x_hat [-]";
    for (const auto& ea : art.estimators) {
      Series s1;
      s1.label = to_string(ea.kind);
      s1.style = style_for(ea.kind);
      s1.t = art.t;
      s1.y = ea.theta_err_norm;
      error_panels[0].series.push_back(std::move(s1));
      Series s2;
      s2.label = to_string(ea.kind);
      s2.style = style_for(ea.kind);
      s2.t = art.t;
      s2.y = ea.x_err;
      error_panels[1].series.push_back(std::move(s2));
    }
    const auto err_path = dir / (cfg.file_stem + "_errors.svg");
    emit_svg(error_panels, err_path);
    art.svg_paths.push_back(err_path);

    if (has_mat) {
      PanelSpec det_panel;
      det_panel.title = "|det M(t)|";
      det_panel.y_label = cfg.det_log_y ? "log10 |det M| [-]" : "|det M| [-]";
      det_panel.log_y = cfg.det_log_y;
      Series s;
      s.label = "mat_B";
      s.style = "solid";
      s.t = art.t;
      s.y = art.abs_det_M;
      det_panel.series.push_back(std::move(s));
      const auto det_path = dir / (cfg.file_stem + "_det.svg");
      emit_svg({det_panel}, det_path);
      art.svg_paths.push_back(det_path);
    }
  }

  // Metadata: full config echo plus run facts; enough to reproduce the run.
  json meta;
  meta["schema_version"] = 1;
  meta["config"] = json::parse(config_to_json_text(cfg));
  meta["step_count"] = art.step_count;
  meta["record_count"] = n;
  meta["wall_time_s"] = art.wall_time_s;
  json outputs;
  outputs["csv"] = art.csv_path.string();
  json svgs = json::array();
  for (const auto& p : art.svg_paths) svgs.push_back(p.string());
  outputs["svg"] = svgs;
  meta["outputs"] = outputs;
  json metrics;
  for (const auto& ea : art.estimators) {
    json m;
    m["overshoot"] = overshoot_to_json(ea.overshoot);
    m["final_theta_err_norm"] = ea.theta_err_norm.back();
    m["final_x_err"] = ea.x_err.back();
    m["lyapunov_violations"] =
        lyapunov_monitor(art.t, ea.V, 1e-8).size();
    metrics[to_string(ea.kind)] = m;
  }
  meta["estimators"] = metrics;
  if (has_mat) {
    json exc;
    exc["divergence_slope"] = art.excitation.divergence_slope;
    exc["fit_rel_residual"] = art.excitation.fit_rel_residual;
    exc["growth_class"] = art.excitation.growth_class;
    exc["det_l2_final"] = art.excitation.det_l2_integral.back();
    meta["excitation"] = exc;
  }
  art.meta_path = dir / (cfg.file_stem + "_meta.json");
  std::ofstream mf(art.meta_path, std::ios::binary);
  if (!mf) throw IoError("cannot open " + art.meta_path.string());
  mf << meta.dump(2) << "\n";
  if (!mf) throw IoError("write failed for " + art.meta_path.string());

  return art;
}

RunArtifacts figure1_scenario(const std::string& output_dir) {
  ScenarioConfig cfg;
  cfg.record_every = 10;
  cfg.output_dir = output_dir;
  cfg.file_stem = "fig1";
  return run_scenario(cfg);
}

Figure2Result figure2_scenario(const std::string& output_dir) {
  struct Member {
    double gamma;
    double dt;
    int record_every;
    const char* stem;
    const char* style;
  };
  // Step size follows gamma: the Gamma-scaled blocks grow linearly in gamma,
  // and the explicit scheme's stable step shrinks accordingly.
  const Member members[] = {
      {1.0, 1e-3, 10, "fig2_gamma1", "dashed"},
      {100.0, 1e-4, 100, "fig2_gamma100", "dash-dot"},
      {10000.0, 1e-5, 1000, "fig2_gamma10000", "solid"},
  };

  Figure2Result result;
  std::vector<PanelSpec> panels(2);
  panels[0].title = "parameter estimation error vs gamma";
  panels[0].y_label = "||theta - theta_hat|| [-]";
  panels[1].title = "state estimation error vs gamma";
  panels[1].y_label = "|x - x_hat| [-]";

  Table metrics;
  metrics.columns = {"gamma", "peak", "settle_time", "threshold"};

  for (const Member& m : members) {
    ScenarioConfig cfg;
    cfg.estimators = {EstimatorKind::mat_B};
    cfg.gamma = m.gamma;
    cfg.dt = m.dt;
    cfg.record_every = m.record_every;
    cfg.t_final = 40.0;
    cfg.output_dir = output_dir;
    cfg.file_stem = m.stem;
    cfg.emit_svg = false;
    RunArtifacts art = run_scenario(cfg);

    const EstimatorArtifacts& ea = art.estimators.front();
    Series s1;
    s1.label = "gamma = " + format_value(m.gamma);
    s1.style = m.style;
    s1.t = art.t;
    s1.y = ea.theta_err_norm;
    panels[0].series.push_back(std::move(s1));
    Series s2;
    s2.label = "gamma = " + format_value(m.gamma);
    s2.style = m.style;
    s2.t = art.t;
    s2.y.resize(ea.x_err.size());
    for (std::size_t i = 0; i < ea.x_err.size(); ++i)
      s2.y[i] = std::abs(ea.x_err[i]);
    panels[1].series.push_back(std::move(s2));

    metrics.rows.push_back({m.gamma, ea.overshoot.peak, ea.overshoot.settle_time,
                            ea.overshoot.threshold});

    result.gammas.push_back(m.gamma);
    result.runs.push_back(std::move(art));
  }

  const std::filesystem::path dir(output_dir);
  result.svg_path = dir / "fig2.svg";
  emit_svg(panels, result.svg_path);
  result.metrics_csv_path = dir / "fig2_metrics.csv";
  emit_csv(metrics, result.metrics_csv_path);
  return result;
}

ExcitationReport diagnose_trace(const std::filesystem::path& csv_path,
                                double window, double pe_start) {
  const Table tbl = parse_csv(csv_path);
  auto col_index = [&](const std::string& name) -> int {
    for (std::size_t i = 0; i < tbl.columns.size(); ++i)
      if (tbl.columns[i] == name) return static_cast<int>(i);
    return -1;
  };
  const int t_col = col_index("t");
  if (t_col < 0) throw IoError("diagnose: CSV has no 't' column");
  std::vector<double> t(tbl.rows.size());
  for (std::size_t i = 0; i < tbl.rows.size(); ++i) t[i] = tbl.rows[i][t_col];

  // Matrix block: columns M00, M01, ... (row-major), q inferred from count.
  std::vector<int> m_cols;
  int q = 0;
  for (q = 1; q < 10; ++q) {
    std::vector<int> cols;
    bool complete = true;
    for (int r = 0; r < q && complete; ++r)
      for (int c = 0; c < q && complete; ++c) {
        const int idx =
            col_index("M" + std::to_string(r) + std::to_string(c));
        if (idx < 0)
          complete = false;
        else
          cols.push_back(idx);
      }
    const int more =
        col_index("M" + std::to_string(q) + std::to_string(0));
    if (complete && more < 0) {
      m_cols = cols;
      break;
    }
    if (!complete) {
      q = 0;
      break;
    }
  }

  // Regressor block: phi0, phi1, ...
  std::vector<int> phi_cols;
  for (int k = 0;; ++k) {
    const int idx = col_index("phi" + std::to_string(k));
    if (idx < 0) break;
    phi_cols.push_back(idx);
  }

  if (m_cols.empty() && phi_cols.empty())
    throw IoError(
        "diagnose: CSV has neither a matrix block (M00, M01, ...) nor a "
        "regressor block (phi0, phi1, ...)");

  ExcitationReport rep;
  if (!m_cols.empty()) {
    std::vector<Eigen::MatrixXd> M(tbl.rows.size());
    for (std::size_t i = 0; i < tbl.rows.size(); ++i) {
      Eigen::MatrixXd m(q, q);
      int k = 0;
      for (int r = 0; r < q; ++r)
        for (int c = 0; c < q; ++c) m(r, c) = tbl.rows[i][m_cols[k++]];
      M[i] = std::move(m);
    }
    rep = det_l2_report(t, M);
  }
  if (!phi_cols.empty()) {
    std::vector<double> tp;
    std::vector<Eigen::VectorXd> phi;
    for (std::size_t i = 0; i < tbl.rows.size(); ++i) {
      if (t[i] + 1e-12 < pe_start) continue;
      Eigen::VectorXd v(phi_cols.size());
      for (std::size_t k = 0; k < phi_cols.size(); ++k)
        v(k) = tbl.rows[i][phi_cols[k]];
      tp.push_back(t[i]);
      phi.push_back(std::move(v));
    }
    rep.pe_margin = pe_margin(tp, phi, window);
    rep.pe_window = window;
    if (rep.t.empty()) rep.t = tp;
  }
  return rep;
}

}  // namespace fte
