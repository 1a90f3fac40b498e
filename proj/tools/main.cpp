// bcert: rigorous verification that the Henon-like family
//   f(X, Y, Z) = (Y, mu + Y^2 + beta X, xi Z + Y)
// has a blender near its homoclinic loops, for every xi in a requested range.
//
// Subcommands:
//   prove            full verification sweep, writes a JSON certificate
//   hyperbolicity    loop covering + quadratic-form sweep, writes a JSON report
//   export-geometry  CSV dump of every h-set (local bounds, global corners,
//                    corner images) for plotting
//   selftest         quick built-in consistency checks
//
// Exit codes: 0 verified / success, 1 completed but not verified (outputs are
// still written), 2 configuration or I/O errors.

#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "blendercert/report.hpp"

namespace {

struct XiShorthand {
  std::vector<double> values;  // one value = a point, two = [min, max]
  CLI::Option* option = nullptr;
};

// Options shared by the sweep subcommands.  `--xi a b` is shorthand for
// `--xi-min a --xi-max b` (one value gives a point range) and conflicts with
// the explicit flags.
void add_sweep_options(CLI::App* sub, bcert::CliConfig& cfg, XiShorthand& xi) {
  xi.option = sub->add_option("--xi", xi.values,
                              "xi range: one value (a point) or two values "
                              "(min max); shorthand for --xi-min/--xi-max")
                  ->expected(1, 2)
                  ->envname("BLENDERCERT_XI");
  auto* xi_min = sub->add_option("--xi-min", cfg.xi_min, "lower end of the xi range")
                     ->capture_default_str()
                     ->envname("BLENDERCERT_XI_MIN");
  auto* xi_max = sub->add_option("--xi-max", cfg.xi_max, "upper end of the xi range")
                     ->capture_default_str()
                     ->envname("BLENDERCERT_XI_MAX");
  xi.option->excludes(xi_min);
  xi.option->excludes(xi_max);
  sub->add_option("--xi-width", cfg.xi_width,
                  "maximum width of one verification block")
      ->capture_default_str()
      ->check(CLI::PositiveNumber)
      ->envname("BLENDERCERT_XI_WIDTH");
  sub->add_option("--jobs", cfg.jobs,
                  "worker threads (0 = one per hardware thread)")
      ->capture_default_str()
      ->envname("BLENDERCERT_JOBS");
}

void add_param_options(CLI::App* sub, bcert::CliConfig& cfg) {
  sub->add_option("--mu", cfg.mu, "map parameter mu")
      ->capture_default_str()
      ->envname("BLENDERCERT_MU");
  sub->add_option("--beta", cfg.beta, "map parameter beta")
      ->capture_default_str()
      ->envname("BLENDERCERT_BETA");
  sub->add_option("--data", cfg.data_path,
                  "construction JSON (charts, anchors, ladder and cone "
                  "constants); default: built-in data")
      ->envname("BLENDERCERT_DATA");
}

void apply_xi_shorthand(const XiShorthand& xi, bcert::CliConfig& cfg) {
  if (xi.values.empty()) return;
  cfg.xi_min = xi.values.front();
  cfg.xi_max = xi.values.size() == 2 ? xi.values[1] : xi.values.front();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Validated blender certificates for a Henon-like family\n"
      "f(X, Y, Z) = (Y, mu + Y^2 + beta X, xi Z + Y)"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "print help for every subcommand");

  bcert::CliConfig prove_cfg;
  XiShorthand prove_xi;
  CLI::App* prove = app.add_subcommand(
      "prove", "run the full verification sweep and write a JSON certificate");
  add_sweep_options(prove, prove_cfg, prove_xi);
  add_param_options(prove, prove_cfg);
  prove->add_option("--out", prove_cfg.out_path, "certificate output path")
      ->capture_default_str()
      ->envname("BLENDERCERT_OUT");
  prove->add_flag("--verbose", prove_cfg.verbose, "print one line per block");

  bcert::CliConfig hyp_cfg;
  hyp_cfg.out_path = "hyperbolicity.json";
  XiShorthand hyp_xi;
  CLI::App* hyp = app.add_subcommand(
      "hyperbolicity",
      "verify the loop covering relations and quadratic-form conditions only");
  add_sweep_options(hyp, hyp_cfg, hyp_xi);
  add_param_options(hyp, hyp_cfg);
  hyp->add_option("--out", hyp_cfg.out_path, "report output path")
      ->capture_default_str()
      ->envname("BLENDERCERT_OUT");
  hyp->add_flag("--verbose", hyp_cfg.verbose, "print one line per block");

  bcert::CliConfig geo_cfg;
  geo_cfg.xi_min = 1.1;
  geo_cfg.xi_max = 1.1;
  XiShorthand geo_xi;
  CLI::App* geo = app.add_subcommand(
      "export-geometry", "write every h-set's local bounds, global corners and "
                         "corner images as CSV");
  geo_xi.option = geo->add_option("--xi", geo_xi.values,
                                  "xi value (or range) for the geometry")
                      ->expected(1, 2)
                      ->envname("BLENDERCERT_XI");
  add_param_options(geo, geo_cfg);
  geo->add_option("--geometry", geo_cfg.geometry_path, "CSV output path")
      ->capture_default_str()
      ->envname("BLENDERCERT_GEOMETRY");

  CLI::App* self = app.add_subcommand("selftest", "run built-in consistency checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;  // help/version exit cleanly; errors are config errors
  }

  bcert::CliConfig cfg;
  if (prove->parsed()) {
    apply_xi_shorthand(prove_xi, prove_cfg);
    prove_cfg.command = bcert::Command::prove;
    cfg = prove_cfg;
  } else if (hyp->parsed()) {
    apply_xi_shorthand(hyp_xi, hyp_cfg);
    hyp_cfg.command = bcert::Command::hyperbolicity;
    cfg = hyp_cfg;
  } else if (geo->parsed()) {
    apply_xi_shorthand(geo_xi, geo_cfg);
    geo_cfg.command = bcert::Command::export_geometry;
    cfg = geo_cfg;
  } else if (self->parsed()) {
    cfg.command = bcert::Command::selftest;
  }

  return bcert::run(cfg, std::cout, std::cerr);
}
