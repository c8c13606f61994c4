// Command-line surface: curve verification, residual evaluation,
// curvature-torsion classification, algebraic solving, constrained
// minimization, parameter sweeps and the non-constant-curvature probe.

#include <CLI11.hpp>

#include "polycurve/commands.hpp"

namespace {

using polycurve::cli::RunConfig;

/// Record a flag into the params map only when the user supplied it, so the
/// command layer can distinguish defaults from explicit values.
void capture(CLI::App* cmd, const char* flag, const char* key, const char* help,
             std::vector<std::pair<std::string, std::shared_ptr<std::string>>>& sink) {
  auto storage = std::make_shared<std::string>();
  cmd->add_option(flag, *storage, help);
  sink.emplace_back(key, storage);
}

struct SubcommandSpec {
  CLI::App* app;
  std::vector<std::pair<std::string, std::shared_ptr<std::string>>> params;
  std::shared_ptr<std::string> output = std::make_shared<std::string>();
  std::shared_ptr<std::string> format = std::make_shared<std::string>("json");
  std::shared_ptr<std::vector<std::string>> inputs = std::make_shared<std::vector<std::string>>();
};

SubcommandSpec make_subcommand(CLI::App& app, const char* name, const char* description) {
  SubcommandSpec spec;
  spec.app = app.add_subcommand(name, description);
  spec.app->add_option("--out", *spec.output, "output file (stdout when omitted)");
  spec.app->add_option("--format", *spec.format, "output format: json or csv");
  return spec;
}

RunConfig to_config(const char* command, const SubcommandSpec& spec) {
  RunConfig config;
  config.command = command;
  config.output = *spec.output;
  config.format = *spec.format;
  config.inputs = *spec.inputs;
  for (const auto& [key, storage] : spec.params)
    if (!storage->empty()) config.params[key] = *storage;
  return config;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"r-harmonic curve toolkit on round spheres and space forms"};
  app.require_subcommand(1);

  auto verify = make_subcommand(app, "verify", "verify an explicit solution family");
  capture(verify.app, "--family", "family", "r-circle | biharmonic-two-freq", verify.params);
  capture(verify.app, "--r", "r", "energy order", verify.params);
  capture(verify.app, "--a2", "a2", "squared first frequency of the two-frequency family",
          verify.params);
  capture(verify.app, "--n", "n", "sphere dimension", verify.params);
  capture(verify.app, "--n-eval", "n-eval", "evaluation grid size", verify.params);

  auto residual = make_subcommand(app, "residual", "evaluate a residual on a curve file");
  residual.app->add_option("--curve", *residual.inputs, "curve JSON file")->required();
  capture(residual.app, "--kind", "kind",
          "geodesic | biharmonic | triharmonic | fourharmonic | intrinsic | extrinsic",
          residual.params);
  capture(residual.app, "--r", "r", "order for intrinsic/extrinsic kinds", residual.params);
  capture(residual.app, "--n-eval", "n-eval", "evaluation grid size", residual.params);

  auto classify = make_subcommand(app, "classify", "curvature-torsion classification check");
  classify.app->add_option("--in", *classify.inputs, "CSV of K,r,k,tau tuples");
  capture(classify.app, "--K", "K", "sectional curvature", classify.params);
  capture(classify.app, "--r", "r", "energy order", classify.params);
  capture(classify.app, "--k", "k", "geodesic curvature", classify.params);
  capture(classify.app, "--tau", "tau", "torsion", classify.params);

  auto solve = make_subcommand(app, "solve", "solve an algebraic critical-point system");
  capture(solve.app, "--system", "system",
          "single-freq | relation | biharmonic-three-freq | triharmonic-two-freq",
          solve.params);
  capture(solve.app, "--r", "r", "energy order", solve.params);
  capture(solve.app, "--K", "K", "sectional curvature", solve.params);
  capture(solve.app, "--tau", "tau", "torsion", solve.params);
  capture(solve.app, "--eps1", "eps1", "three-frequency rhs perturbation", solve.params);
  capture(solve.app, "--eps2", "eps2", "three-frequency rhs perturbation", solve.params);
  capture(solve.app, "--eps3", "eps3", "three-frequency rhs perturbation", solve.params);
  capture(solve.app, "--freq-axis", "freq-axis", "seed grid points per frequency axis",
          solve.params);
  capture(solve.app, "--simplex-axis", "simplex-axis", "seed grid points on the simplex",
          solve.params);

  auto minimize = make_subcommand(app, "minimize", "constrained gradient flow");
  capture(minimize.app, "--r", "r", "energy order", minimize.params);
  capture(minimize.app, "--N", "N", "sample count", minimize.params);
  capture(minimize.app, "--mode", "mode", "restricted | full", minimize.params);
  capture(minimize.app, "--max-iters", "max-iters", "iteration cap", minimize.params);
  capture(minimize.app, "--seed", "seed", "RNG seed of the full-mode start", minimize.params);
  capture(minimize.app, "--alpha0-sq", "alpha0-sq", "restricted-mode starting amplitude",
          minimize.params);

  auto sweep = make_subcommand(app, "sweep", "residual scan over a parameter grid");
  capture(sweep.app, "--family", "family", "single-freq | two-freq", sweep.params);
  capture(sweep.app, "--r", "r", "energy order", sweep.params);
  capture(sweep.app, "--a2", "a2", "grid min:max:count for a^2", sweep.params);
  capture(sweep.app, "--b2", "b2", "grid min:max:count for b^2", sweep.params);
  capture(sweep.app, "--n-eval", "n-eval", "evaluation grid size", sweep.params);

  auto probe = make_subcommand(app, "probe", "non-constant-curvature conservation probe");
  capture(probe.app, "--alpha", "alpha", "curvature coefficient k1 = alpha/s", probe.params);
  capture(probe.app, "--beta", "beta", "second curvature coefficient k2 = beta/s",
          probe.params);
  capture(probe.app, "--smin", "smin", "lower end of the parameter range", probe.params);
  capture(probe.app, "--smax", "smax", "upper end of the parameter range", probe.params);
  capture(probe.app, "--num", "num", "grid size", probe.params);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return polycurve::cli::kExitValidation;
  }

  const std::pair<const char*, const SubcommandSpec*> table[] = {
      {"verify", &verify},   {"residual", &residual}, {"classify", &classify},
      {"solve", &solve},     {"minimize", &minimize}, {"sweep", &sweep},
      {"probe", &probe},
  };
  for (const auto& [name, spec] : table)
    if (spec->app->parsed()) return polycurve::cli::run(to_config(name, *spec));
  return polycurve::cli::kExitValidation;
}
