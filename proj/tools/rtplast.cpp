// Command-line front end: run scenarios, verification suites and stress-space
// portraits.
//
// Exit codes: 0 success, 1 validation failure, 2 check failure.

#include <fstream>
#include <iostream>
#include <memory>
#include <string>

#include "CLI11.hpp"

#include "rtplast/scenario.hpp"
#include "rtplast/verify.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kInvalid = 1;
constexpr int kCheckFailed = 2;

// Writes to `path`, or stdout when empty.
template <class Fn>
int with_output(const std::string& path, Fn&& fn) {
  if (path.empty()) {
    fn(std::cout);
    return kOk;
  }
  std::ofstream out(path);
  if (!out) {
    std::cerr << "error: cannot open output file '" << path << "'\n";
    return kInvalid;
  }
  fn(out);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rate-type elastoplastic material-point simulator"};
  app.require_subcommand(1);

  std::string out_path;
  std::uint64_t seed = 0;
  double dt = 0.0;
  app.add_option("--out", out_path, "Output path (overrides the scenario's output.path)");
  app.add_option("--seed", seed, "Seed for randomized verification suites")->default_val(0);
  app.add_option("--dt", dt, "Override dt_max")->check(CLI::PositiveNumber);

  std::string run_file;
  auto* run = app.add_subcommand("run", "Integrate a scenario and write its trajectory CSV");
  run->add_option("file", run_file, "Scenario file (JSON)")->required();

  std::string suite;
  auto* verify = app.add_subcommand("verify", "Run a property suite");
  verify->add_option("suite", suite, "objectivity, prop1, prop2, prop3, hardening-rule, normality, "
                                     "perfect-plasticity, elastic-shear, convergence or all")
      ->required();

  std::string portrait_file;
  auto* portrait = app.add_subcommand("portrait", "Sample f and mu on a 2D slice of stress space");
  portrait->add_option("file", portrait_file, "Scenario file with a 'portrait' section")->required();

  for (auto* sub : {run, verify, portrait}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kInvalid;
  }

  try {
    if (*run) {
      rtp::Scenario sc = rtp::load_scenario(run_file);
      if (dt > 0.0) sc.options.dt_max = dt;
      const rtp::Trajectory traj = rtp::run_scenario(sc);
      const rtp::MaterialModel model = sc.build_model();
      return with_output(out_path.empty() ? sc.output_path : out_path, [&](std::ostream& os) {
        rtp::write_trajectory_csv(os, traj, model, sc.stride);
      });
    }
    if (*portrait) {
      const rtp::Scenario sc = rtp::load_scenario(portrait_file);
      if (!sc.portrait) throw rtp::ScenarioError("portrait", "missing required field");
      const rtp::MaterialModel model = sc.build_model();
      return with_output(out_path.empty() ? sc.output_path : out_path, [&](std::ostream& os) {
        rtp::write_portrait_csv(os, model, *sc.portrait);
      });
    }
    const auto reports = rtp::run_suites(suite, seed);
    bool ok = true;
    int status = with_output(out_path, [&](std::ostream& os) {
      for (const auto& r : reports) {
        os << rtp::format_report(r);
        ok = ok && r.passed();
      }
    });
    if (status != kOk) return status;
    return ok ? kOk : kCheckFailed;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInvalid;
  }
}
