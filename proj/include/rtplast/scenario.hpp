#pragma once

//! \file scenario.hpp
//! \brief JSON scenario files, trajectory CSV output and stress-space
//! portraits for the command-line front end.
//!
//! A scenario document:
//!
//!   {
//!     "model":   { "lambda_e": 1, "mu_e": 1, "c0": 0.1, "c1": 0.2,
//!                  "stress_scale": 1,
//!                  "yield": { "type": "von_mises" } },
//!     "initial": { "T": [T11, T22, T33, T23, T13, T12], "k": 0.5 },
//!     "motion":  [ { "type": "simple_shear", "rate": 1, "duration": 2 },
//!                  { "type": "constant_velocity_gradient",
//!                    "L": [[..], [..], [..]], "duration": 1 },
//!                  { "type": "rigid_rotation", "axis": [0, 0, 1],
//!                    "rate": 1, "duration": 1 } ],
//!     "superposed_rotation": { "axis": [0, 0, 1], "spin_rate": 0.5 },
//!     "options": { "dt_max": 1e-3, "tol_yield": 1e-9, "tol_psi": 1e-9,
//!                  "event_bisection_iters": 80, "case3_probe_depth": 2 },
//!     "output":  { "stride": 1, "path": "out.csv" },
//!     "portrait": { "basis": [[6 comps], [6 comps]], "offset": [6 comps],
//!                   "range_a": [min, max, n], "range_b": [min, max, n] }
//!   }
//!
//! Everything except "initial" and "motion" has defaults; "portrait" is only
//! read by the portrait subcommand. The yield type may also be
//! "drucker_prager_like" with an "alpha" field.

#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rtplast/constitutive.hpp"
#include "rtplast/motion.hpp"
#include "rtplast/response.hpp"

namespace rtp {

//! Invalid scenario content. The message starts with the offending key path,
//! e.g. "motion[1].duration: must be positive".
class ScenarioError : public Error {
 public:
  ScenarioError(std::string key_path, const std::string& message);

  const std::string& key_path() const { return key_path_; }

 private:
  std::string key_path_;
};

struct MotionSegmentSpec {
  enum class Kind { SimpleShear, ConstantVelocityGradient, RigidRotation };

  Kind kind = Kind::SimpleShear;
  double duration = 0.0;
  double rate = 0.0;  // shear or rotation rate
  Vec3 axis = Vec3::UnitZ();
  Mat3 velocity_gradient = Mat3::Zero();
};

struct PortraitSpec {
  Sym3 basis_a;
  Sym3 basis_b;
  Sym3 offset;
  double a_min = 0.0, a_max = 0.0;
  int a_count = 1;
  double b_min = 0.0, b_max = 0.0;
  int b_count = 1;
};

struct Scenario {
  ModelParameters model;
  MaterialState initial;
  std::vector<MotionSegmentSpec> motion;
  std::optional<Vec3> superposed_axis;
  double superposed_spin_rate = 0.0;
  IntegrationOptions options;
  int stride = 1;
  std::string output_path;
  std::optional<PortraitSpec> portrait;

  MaterialModel build_model() const;
  std::shared_ptr<const Motion> build_motion() const;
  double duration() const;
};

//! Parses and validates a scenario document. Throws ScenarioError.
Scenario parse_scenario(std::string_view json_text);
Scenario load_scenario(const std::string& path);

//! Integrates the scenario over its full motion program.
Trajectory run_scenario(const Scenario& scenario);

//! Columns: t, T11..T12 (Voigt order 11,22,33,23,13,12), k, f, psi, mu, mode,
//! D11..D12, W23, W13, W12, case. Reals use 17 significant digits; the case
//! column is filled on the first row of each segment. Every `stride`-th
//! sample of a segment is written, plus its first and last sample.
void write_trajectory_csv(std::ostream& os, const Trajectory& traj, const MaterialModel& model,
                          int stride = 1);

//! Grid of f, mu and sign(mu) over offset + a basis_a + b basis_b. Columns:
//! a, b, f, mu, sign_mu, status. Points where grad f is undefined get
//! status "singular_gradient" and empty mu columns. Throws ScenarioError if
//! the basis is linearly dependent.
void write_portrait_csv(std::ostream& os, const MaterialModel& model, const PortraitSpec& spec);

}  // namespace rtp
