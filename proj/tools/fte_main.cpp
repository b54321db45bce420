#include <cmath>
#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fte/errors.hpp"
#include "fte/harness.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitIntegration = 3;
constexpr int kExitIo = 4;

std::vector<fte::EstimatorKind> parse_estimator_list(const std::string& csv) {
  std::vector<fte::EstimatorKind> out;
  std::size_t pos = 0;
  while (pos <= csv.size()) {
    const std::size_t comma = csv.find(',', pos);
    const std::string item =
        csv.substr(pos, comma == std::string::npos ? std::string::npos
                                                   : comma - pos);
    if (!item.empty()) out.push_back(fte::estimator_from_string(item));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  if (out.empty())
    throw fte::ConfigError("--estimators given but no names were parsed");
  return out;
}

void print_run_summary(const fte::RunArtifacts& art) {
  std::printf("steps: %ld  records: %zu  wall: %.3f s\n", art.step_count,
              art.t.size(), art.wall_time_s);
  for (const auto& ea : art.estimators) {
    std::printf("%-8s final |x err| = %.6e   final ||theta err|| = %.6e\n",
                fte::to_string(ea.kind).c_str(), std::abs(ea.x_err.back()),
                ea.theta_err_norm.back());
  }
  std::printf("csv:  %s\n", art.csv_path.string().c_str());
  std::printf("meta: %s\n", art.meta_path.string().c_str());
  for (const auto& p : art.svg_paths)
    std::printf("svg:  %s\n", p.string().c_str());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"filtered-transformation estimator toolkit"};
  app.require_subcommand(1);

  // run
  auto* run = app.add_subcommand("run", "integrate one scenario");
  std::string run_config;
  std::string run_output_dir, run_file_stem, run_system, run_estimators;
  double run_dt = 0, run_t_final = 0, run_gamma = 0;
  int run_record_every = 0;
  bool run_no_svg = false;
  run->add_option("--config", run_config, "JSON config file (defaults used otherwise)");
  run->add_option("--output-dir", run_output_dir, "output directory");
  run->add_option("--file-stem", run_file_stem, "output file name prefix");
  run->add_option("--system", run_system, "'example' or a system override file");
  run->add_option("--estimators", run_estimators,
                  "comma-separated subset of vec_b1,vec_b2,mat_B");
  auto* opt_dt = run->add_option("--dt", run_dt, "step size");
  auto* opt_tf = run->add_option("--t-final", run_t_final, "horizon");
  auto* opt_gamma = run->add_option("--gamma", run_gamma, "adaptation gain scale");
  auto* opt_re = run->add_option("--record-every", run_record_every,
                                 "record every k-th step");
  run->add_flag("--no-svg", run_no_svg, "skip figure output");

  // fig1 / fig2
  auto* fig1 = app.add_subcommand("fig1", "three-estimator comparison figure");
  std::string fig1_dir = "out";
  fig1->add_option("--output-dir", fig1_dir, "output directory");
  auto* fig2 = app.add_subcommand("fig2", "adaptation-gain sweep figure");
  std::string fig2_dir = "out";
  fig2->add_option("--output-dir", fig2_dir, "output directory");

  // diagnose
  auto* diag = app.add_subcommand("diagnose", "excitation diagnostics on a CSV trace");
  std::string diag_csv;
  double diag_window = 1.0, diag_pe_start = 0.0;
  diag->add_option("csv", diag_csv, "trace file (t plus M00.../phi0... columns)")
      ->required();
  diag->add_option("--window", diag_window, "PE window length [s]")->required();
  diag->add_option("--pe-start", diag_pe_start,
                   "minimum window start time [s]");

  // validate
  auto* val = app.add_subcommand("validate", "check a config without running");
  std::string val_config;
  val->add_option("--config", val_config, "JSON config file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (run->parsed()) {
      fte::ScenarioConfig cfg;
      if (!run_config.empty()) cfg = fte::load_config(run_config);
      if (!run_output_dir.empty()) cfg.output_dir = run_output_dir;
      if (!run_file_stem.empty()) cfg.file_stem = run_file_stem;
      if (!run_system.empty()) cfg.system = run_system;
      if (!run_estimators.empty())
        cfg.estimators = parse_estimator_list(run_estimators);
      if (opt_dt->count()) cfg.dt = run_dt;
      if (opt_tf->count()) cfg.t_final = run_t_final;
      if (opt_gamma->count()) cfg.gamma = run_gamma;
      if (opt_re->count()) cfg.record_every = run_record_every;
      if (run_no_svg) cfg.emit_svg = false;
      print_run_summary(fte::run_scenario(cfg));
    } else if (fig1->parsed()) {
      print_run_summary(fte::figure1_scenario(fig1_dir));
    } else if (fig2->parsed()) {
      const fte::Figure2Result res = fte::figure2_scenario(fig2_dir);
      for (std::size_t i = 0; i < res.gammas.size(); ++i) {
        const auto& os = res.runs[i].estimators.front().overshoot;
        std::printf("gamma = %-8g peak = %.6f  settle = %.3f s\n",
                    res.gammas[i], os.peak, os.settle_time);
      }
      std::printf("svg:  %s\n", res.svg_path.string().c_str());
      std::printf("csv:  %s\n", res.metrics_csv_path.string().c_str());
    } else if (diag->parsed()) {
      const fte::ExcitationReport rep =
          fte::diagnose_trace(diag_csv, diag_window, diag_pe_start);
      if (!std::isnan(rep.pe_margin))
        std::printf("pe_margin (window %g s): %.6e\n", rep.pe_window,
                    rep.pe_margin);
      if (!rep.det_l2_integral.empty()) {
        std::printf("det L2 integral: %.6f\n", rep.det_l2_integral.back());
        std::printf("log-growth slope: %.6f  rel residual: %.3e  class: %s\n",
                    rep.divergence_slope, rep.fit_rel_residual,
                    rep.growth_class.c_str());
      }
    } else if (val->parsed()) {
      const fte::ScenarioConfig cfg = fte::load_config(val_config);
      fte::validate_config(cfg);
      std::printf("config OK (stiffness product %.4f <= 2.5)\n",
                  fte::effective_stiffness(cfg));
    }
  } catch (const fte::ConfigError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitConfig;
  } catch (const fte::IntegrationError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitIntegration;
  } catch (const fte::IoError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitIo;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return kExitOk;
}
