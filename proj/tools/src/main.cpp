#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "commands.hpp"
#include "gaitlift/builtins.hpp"

using namespace gaitlift::cli;

namespace {

void add_run_options(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("--net", cfg.net, "builtin network name or network JSON file")
      ->capture_default_str();
  cmd->add_option("--params", cfg.params, "parameter JSON file or bundled name");
  cmd->add_option("--seed", cfg.seed, "seed for the initial state")->capture_default_str();
  cmd->add_option("--transient", cfg.transient, "time discarded before period detection")
      ->capture_default_str();
  cmd->add_option("--step", cfg.step, "RK4 step (0 picks min(1e-3, eps/20))")
      ->capture_default_str();
  cmd->add_option("--samples", cfg.samples, "samples per period")->capture_default_str();
  cmd->add_option("--out", cfg.out, "output path (simulate: prefix for .csv/.json)");
}

void add_module_options(CLI::App* cmd, FloquetOptions& opt) {
  // -h stays free for --h.
  cmd->set_help_flag("--help", "Print this help message and exit");
  cmd->add_option("--h", opt.h, "lateral strength of a 2-node module (default: params h, else beta)");
  cmd->add_option("--node", opt.node, "CPG node the module copies")->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rate-model CPG networks: simulation, Floquet multipliers and transverse stability"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(gaitlift::kToolVersion));

  RunConfig cfg;
  FloquetOptions fopt;
  SweepOptions sopt;
  std::string alpha = "-1:1:5", beta = "-1:1:5", gamma = "-1:1:5";
  std::string export_name, table;

  auto* simulate = app.add_subcommand("simulate", "find the periodic orbit, write trajectory and phase pattern");
  add_run_options(simulate, cfg);

  auto* floquet = app.add_subcommand("floquet", "CPG and transverse Floquet multipliers");
  add_run_options(floquet, cfg);
  add_module_options(floquet, fopt);
  floquet->add_option("--module-kind", fopt.module_kind, "none, 1node or 2node")
      ->check(CLI::IsMember({"none", "1node", "2node"}))
      ->capture_default_str();

  auto* stability = app.add_subcommand("stability", "analytic transverse stability conditions");
  add_run_options(stability, cfg);
  add_module_options(stability, fopt);

  auto* sweep = app.add_subcommand("sweep", "gait classification over an (alpha, beta, gamma) grid");
  add_run_options(sweep, cfg);
  sweep->add_option("--alpha", alpha, "value or lo:hi:n")->capture_default_str();
  sweep->add_option("--beta", beta, "value or lo:hi:n")->capture_default_str();
  sweep->add_option("--gamma", gamma, "value or lo:hi:n")->capture_default_str();
  sweep->add_option("--threads", sopt.threads, "worker threads (0: all cores, capped by GAITLIFT_THREADS)");

  auto* net = app.add_subcommand("net", "network catalogue");
  net->require_subcommand(1);
  auto* net_export = net->add_subcommand("export", "write a builtin network as JSON");
  net_export->add_option("name", export_name, "builtin name")->required();
  net_export->add_option("--out", cfg.out, "output file");
  auto* net_list = net->add_subcommand("list", "list builtin networks");

  auto* repro = app.add_subcommand("repro", "recompute a bundled table");
  repro->add_option("table", table, "table id")->required();
  add_run_options(repro, cfg);
  auto* repro_list = app.add_subcommand("tables", "list repro table ids and bundled parameter sets");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kError;
  }

  return guarded([&]() -> int {
    if (*simulate) return cmd_simulate(cfg, std::cout);
    if (*floquet) return cmd_floquet(cfg, fopt, std::cout);
    if (*stability) return cmd_stability(cfg, fopt, std::cout);
    if (*sweep) {
      sopt.alpha = parse_range(alpha);
      sopt.beta = parse_range(beta);
      sopt.gamma = parse_range(gamma);
      return cmd_sweep(cfg, sopt, std::cout);
    }
    if (*net_export) return cmd_net_export(export_name, cfg, std::cout);
    if (*net_list) {
      for (const auto& n : gaitlift::builtin_names()) std::cout << n << '\n';
      return kOk;
    }
    if (*repro) return cmd_repro(table, cfg, std::cout);
    if (*repro_list) {
      for (const auto& t : repro_tables()) std::cout << "table  " << t << '\n';
      for (const auto& p : bundled_param_names()) std::cout << "params " << p << '\n';
      return kOk;
    }
    return kError;
  });
}
