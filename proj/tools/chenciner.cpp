// Command line front end: analyze, curves, simulate, diagram, verify.

#include <CLI11.hpp>

#include "chenciner/cli.hpp"

namespace {

void add_sim_flags(CLI::App* cmd, chenciner::SimulationConfig* sim) {
  cmd->add_option("--steps", sim->max_steps, "maximum map iterations");
  cmd->add_option("--convergence-tol", sim->convergence_tol,
                  "window deviation treated as converged");
  cmd->add_option("--escape-radius", sim->escape_radius, "radius treated as escape");
  cmd->add_option("--window", sim->window, "convergence window length");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"analysis of the truncated degenerate Neimark-Sacker normal form"};
  app.require_subcommand(1);

  chenciner::AnalyzeOptions an;
  CLI::App* analyze = app.add_subcommand("analyze", "classify one parameter point");
  analyze->add_option("--config", an.config_path, "model config JSON")->required();
  analyze->add_option("--alpha1", an.alpha1, "alpha1")->required();
  analyze->add_option("--alpha2", an.alpha2, "alpha2")->required();
  analyze->add_option("--out", an.out_dir, "output directory");
  analyze->add_flag("--portrait", an.portrait, "also render a phase portrait");
  add_sim_flags(analyze, &an.sim);

  chenciner::CurvesOptions cu;
  CLI::App* curves = app.add_subcommand("curves", "expand and trace B1, B2 and C");
  curves->add_option("--config", cu.config_path, "model config JSON")->required();
  curves->add_option("--range", cu.range, "alpha1 half-range (default epsilon/2 capped at 0.05)");
  curves->add_option("--points", cu.points, "grid points across the range");
  curves->add_option("--out", cu.out_dir, "output directory");

  chenciner::SimulateOptions si;
  CLI::App* simulate = app.add_subcommand("simulate", "iterate one orbit");
  simulate->add_option("--config", si.config_path, "model config JSON")->required();
  simulate->add_option("--alpha1", si.alpha1, "alpha1")->required();
  simulate->add_option("--alpha2", si.alpha2, "alpha2")->required();
  simulate->add_option("--rho0", si.rho0, "starting radius")->required();
  simulate->add_option("--phi0", si.phi0, "starting angle");
  simulate->add_option("--out", si.out_dir, "output directory");
  add_sim_flags(simulate, &si.sim);

  chenciner::DiagramOptions di;
  double a1min = 0, a1max = 0, a2min = 0, a2max = 0;
  CLI::App* diagram = app.add_subcommand("diagram", "render the bifurcation diagram");
  diagram->add_option("--config", di.config_path, "model config JSON")->required();
  diagram->add_option("--resolution", di.resolution, "grid cells per side (min 16)");
  auto* o1 = diagram->add_option("--a1-min", a1min, "window alpha1 lower edge");
  auto* o2 = diagram->add_option("--a1-max", a1max, "window alpha1 upper edge");
  auto* o3 = diagram->add_option("--a2-min", a2min, "window alpha2 lower edge");
  auto* o4 = diagram->add_option("--a2-max", a2max, "window alpha2 upper edge");
  diagram->add_option("--out", di.out_dir, "output directory");

  chenciner::VerifyCmdOptions ve;
  CLI::App* verify = app.add_subcommand("verify", "run the property suite");
  verify->add_option("--config", ve.config_path, "model config JSON (optional focus model)");
  verify->add_option("--seed", ve.props.seed, "random model seed");
  verify->add_option("--models", ve.props.models, "number of random models");
  verify->add_option("--points", ve.props.points_per_model, "points per model");
  verify->add_option("--out", ve.out_dir, "output directory");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*analyze) return chenciner::run_analyze(an);
    if (*curves) return chenciner::run_curves(cu);
    if (*simulate) return chenciner::run_simulate(si);
    if (*diagram) {
      int have = (o1->count() ? 1 : 0) + (o2->count() ? 1 : 0) + (o3->count() ? 1 : 0) +
                 (o4->count() ? 1 : 0);
      if (have != 0 && have != 4)
        throw chenciner::ConfigError("window", "give all four window edges or none");
      if (have == 4) {
        di.window = {a1min, a1max, a2min, a2max};
        di.window_set = true;
      }
      return chenciner::run_diagram(di);
    }
    if (*verify) return chenciner::run_verify(ve);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return chenciner::exit_code_for(e);
  }
  return chenciner::kOk;
}
