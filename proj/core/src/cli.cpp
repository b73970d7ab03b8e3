#include "areosync/cli.hpp"

#include <cmath>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "areosync/config.hpp"
#include "areosync/constants.hpp"
#include "areosync/errors.hpp"
#include "areosync/io.hpp"
#include "areosync/sim_engine.hpp"

namespace areosync {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitRuntimeAbort = 2;
constexpr int kExitCertifyFailure = 3;

struct CommonOptions {
  std::string config_path;
  std::string out_dir;
  bool no_moons = false;
  std::optional<std::uint64_t> seed;
  std::optional<double> dt;
  std::optional<double> horizon_sols;
};

void add_common_options(CLI::App* cmd, CommonOptions& opts) {
  cmd->add_option("--config", opts.config_path, "Scenario config (JSON)")
      ->check(CLI::ExistingFile);
  cmd->add_option("--out-dir", opts.out_dir, "Output directory");
  cmd->add_flag("--no-moons", opts.no_moons, "Disable moon perturbations");
  cmd->add_option("--seed", opts.seed, "Initial-condition seed");
  cmd->add_option("--dt", opts.dt, "Integrator step, seconds");
  cmd->add_option("--horizon-sols", opts.horizon_sols, "Simulation horizon, Sols");
}

// Config first, then flag overrides, then re-validation.
ParsedConfig resolve_config(const CommonOptions& opts) {
  ParsedConfig parsed = opts.config_path.empty()
                            ? parse_config("{}")
                            : load_config_file(opts.config_path);
  Scenario& s = parsed.scenario;
  if (opts.no_moons) s.moons_enabled = false;
  if (opts.seed) s.seed = *opts.seed;
  if (opts.dt) s.dt = *opts.dt;
  if (opts.horizon_sols) s.horizon = constants::sols_to_seconds(*opts.horizon_sols);
  if (!opts.out_dir.empty()) parsed.artifacts.out_dir = opts.out_dir;
  s.validate();
  return parsed;
}

int command_run(const CommonOptions& opts) {
  const ParsedConfig parsed = resolve_config(opts);
  const RunArtifacts& artifacts = parsed.artifacts;

  const RunResult result = run(parsed.scenario);
  write_trajectory(result.log, artifacts.resolve(artifacts.trajectory_csv),
                   artifacts.resolve(artifacts.links_csv));
  write_report(result.report, artifacts.resolve(artifacts.report_json));
  if (artifacts.plot_stride > 0) {
    write_plot_data(result.log, artifacts.plot_stride,
                    artifacts.resolve(artifacts.plot_csv));
  }

  if (result.status == RunStatus::kAborted) {
    std::cerr << "run aborted: " << result.diagnostic << "\n";
    return kExitRuntimeAbort;
  }

  const AcquisitionReport& report = result.report;
  if (report.acquired) {
    std::printf("acquired: yes (t_acq = %.2f Sols = %.0f s)\n",
                report.t_acq_sols, report.t_acq_s);
  } else {
    std::printf("acquired: no\n");
  }
  std::printf("max |tau_r| = %.6f N, max |tau_theta| = %.6f N\n",
              report.max_abs_tau_r, report.max_abs_tau_theta);
  std::printf("saturation events: %d, lyapunov monotone: %s\n",
              report.saturation_events, report.lyapunov_monotone ? "yes" : "no");
  std::printf("artifacts: %s, %s, %s\n",
              artifacts.resolve(artifacts.trajectory_csv).c_str(),
              artifacts.resolve(artifacts.links_csv).c_str(),
              artifacts.resolve(artifacts.report_json).c_str());
  return kExitOk;
}

int command_certify(const CommonOptions& opts) {
  ParsedConfig parsed = resolve_config(opts);
  Scenario& s = parsed.scenario;
  // Certification reruns at integrator-level logging over a short horizon so
  // the finite-difference certificate is tight.
  if (!opts.horizon_sols) {
    s.horizon = constants::sols_to_seconds(1.0);
  }
  s.logging_interval = s.dt;
  s.validate();

  const RunResult result = run(s);
  if (result.status == RunStatus::kAborted) {
    std::cerr << "certify run aborted: " << result.diagnostic << "\n";
    return kExitRuntimeAbort;
  }

  const Topology topo = build_path_incidence(s.n_sats);
  const EquilibriumPoint eq = compute_equilibrium(s.desired, topo, s.link_output_fn);
  CertificationReport cert = certify(result.log, eq);

  const RunArtifacts& artifacts = parsed.artifacts;
  const std::string series_path = artifacts.resolve(artifacts.plot_csv);
  write_plot_data(result.log, 1, series_path);
  cert.v_series_ref = series_path;
  write_certification(cert, artifacts.resolve(artifacts.certification_json));

  double worst = 0.0;
  for (const SubsystemCertification& sub : cert.subsystems) {
    worst = std::min(worst, sub.worst_slack);
  }
  std::printf("certified subsystems: %zu, violations: %d, worst slack: %.3e\n",
              cert.subsystems.size(), cert.total_violations, worst);
  std::printf("certificate: %s\n",
              artifacts.resolve(artifacts.certification_json).c_str());
  return cert.total_violations == 0 ? kExitOk : kExitCertifyFailure;
}

int command_equilibrium(const CommonOptions& opts) {
  const ParsedConfig parsed = resolve_config(opts);
  const Scenario& s = parsed.scenario;
  const Topology topo = build_path_incidence(s.n_sats);
  const EquilibriumPoint eq = compute_equilibrium(s.desired, topo, s.link_output_fn);

  std::printf("r_d = %.6f km\n", eq.r_bar / 1000.0);
  std::printf("v_d = %.1f m/s\n", eq.v_bar);
  std::printf("omega_d = %.10e rad/s\n", eq.omega_bar);
  constexpr double kDegPerRad = 180.0 / 3.14159265358979323846;
  for (int l = 0; l < topo.n_links; ++l) {
    std::printf("link %d spacing = %.10f deg\n", l,
                eq.theta_rel_bar(l) * kDegPerRad);
  }
  return kExitOk;
}

int command_dump_topology(int n_sats) {
  const Topology topo = build_path_incidence(n_sats);
  for (int i = 0; i < topo.n_sats; ++i) {
    std::string row;
    for (int l = 0; l < topo.n_links; ++l) {
      if (l > 0) row += ',';
      row += std::to_string(static_cast<int>(topo.incidence(i, l)));
    }
    std::printf("%s\n", row.c_str());
  }
  return kExitOk;
}

}  // namespace

int cli_main(const std::vector<std::string>& args) {
  CLI::App app{"areosync: distributed acquisition and station-keeping of an "
               "equally-spaced areostationary constellation"};
  app.require_subcommand(1);

  CommonOptions run_opts;
  CLI::App* cmd_run = app.add_subcommand("run", "Integrate a scenario and write artifacts");
  add_common_options(cmd_run, run_opts);

  CommonOptions certify_opts;
  CLI::App* cmd_certify = app.add_subcommand(
      "certify", "Short dt-level run plus a passivity certificate");
  add_common_options(cmd_certify, certify_opts);

  CommonOptions eq_opts;
  CLI::App* cmd_eq = app.add_subcommand("equilibrium", "Print the constellation equilibrium");
  cmd_eq->add_option("--config", eq_opts.config_path, "Scenario config (JSON)")
      ->check(CLI::ExistingFile);

  int dump_n = 0;
  CLI::App* cmd_dump = app.add_subcommand("dump-topology", "Dump the incidence matrix as CSV");
  cmd_dump->add_option("--n", dump_n, "Number of satellites")->required();

  // CLI11 wants mutable char*; keep the storage alive for the parse.
  std::vector<std::string> storage = args;
  std::vector<char*> argv;
  std::string program = "areosync";
  argv.push_back(program.data());
  for (std::string& arg : storage) argv.push_back(arg.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitValidation;
  }

  try {
    if (cmd_run->parsed()) return command_run(run_opts);
    if (cmd_certify->parsed()) return command_certify(certify_opts);
    if (cmd_eq->parsed()) return command_equilibrium(eq_opts);
    if (cmd_dump->parsed()) return command_dump_topology(dump_n);
  } catch (const ValidationError& e) {
    std::cerr << e.what() << "\n";
    return kExitValidation;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid argument: " << e.what() << "\n";
    return kExitValidation;
  } catch (const SimulationError& e) {
    std::cerr << "simulation error: " << e.what() << "\n";
    return kExitRuntimeAbort;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntimeAbort;
  }
  return kExitValidation;
}

int cli_main(int argc, const char* const* argv) {
  std::vector<std::string> args;
  args.reserve(argc > 0 ? argc - 1 : 0);
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return cli_main(args);
}

}  // namespace areosync
