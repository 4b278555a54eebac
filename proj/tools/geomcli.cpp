// geomcli: reports, meshes, sample tables and closed-form/oracle verification
// for C-ruled surfaces.

#include <iostream>

#include <CLI11.hpp>

#include "cruled/app.hpp"
#include "cruled/errors.hpp"

namespace {

void add_common(CLI::App* cmd, cruled::RunConfig& cfg, std::string& convention) {
  cmd->add_option("--curve", cfg.curve, "curve-spec JSON path or built-in name (example-4.1, example-4.2, circle, helix:a:b)")
      ->required();
  cmd->add_option("--s-samples", cfg.s_samples, "number of s samples")->capture_default_str();
  cmd->add_option("--v-min", cfg.v_min, "lower end of the ruling parameter range")->capture_default_str();
  cmd->add_option("--v-max", cfg.v_max, "upper end of the ruling parameter range")->capture_default_str();
  cmd->add_option("--v-samples", cfg.v_samples, "number of v samples")->capture_default_str();
  cmd->add_option("--fd-step", cfg.fd_step, "finite-difference step of the oracle")->capture_default_str();
  cmd->add_option("--tol", cfg.tol, "closed form vs oracle tolerance")->capture_default_str();
  cmd->add_option("--frame-tol", cfg.frame_tol, "frame ODE residual tolerance")->capture_default_str();
  cmd->add_option("--class-tol", cfg.class_tol, "curve classification tolerance")->capture_default_str();
  cmd->add_option("--convention", convention, "principal normal convention")
      ->check(CLI::IsMember({"strict", "smooth"}))
      ->capture_default_str();
  cmd->add_option("--out", cfg.out_dir, "output directory")->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"C-ruled surface toolkit"};
  app.require_subcommand(1);

  cruled::RunConfig cfg;
  std::string convention = "smooth";
  bool no_striction = false;

  auto* report = app.add_subcommand("report", "write report.json");
  auto* mesh = app.add_subcommand("mesh", "write surface.obj and striction.obj");
  auto* samples = app.add_subcommand("samples", "write samples.csv");
  auto* verify = app.add_subcommand("verify", "write verify.json; exit status 1 on any FAIL record");
  for (auto* cmd : {report, mesh, samples, verify}) add_common(cmd, cfg, convention);
  mesh->add_flag("--no-striction", no_striction, "skip the striction polyline");

  CLI11_PARSE(app, argc, argv);

  try {
    cfg.convention = cruled::parse_convention(convention);
    cfg.striction_polyline = !no_striction;
    if (report->parsed()) {
      std::cout << cruled::run_report(cfg).string() << "\n";
    } else if (mesh->parsed()) {
      const auto files = cruled::export_mesh(cfg);
      std::cout << files.surface.string() << "\n";
      if (files.striction) std::cout << files.striction->string() << "\n";
    } else if (samples->parsed()) {
      std::cout << cruled::export_samples(cfg).string() << "\n";
    } else {
      cruled::VerificationResult result;
      const int code = cruled::verify(cfg, &result);
      std::cout << "PASS " << result.count(cruled::Status::Pass) << "  WARN " << result.count(cruled::Status::Warn)
                << "  FAIL " << result.count(cruled::Status::Fail) << "\n";
      return code;
    }
  } catch (const cruled::GeomError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
