#pragma once

//! \file response.hpp
//! \brief Strain-driven material-point response: case classification at
//! segment starts, RK4 integration of the elastic and plastic stress ODEs,
//! and event location for yield onset and unloading.
//!
//! Along a motion the stress obeys T' = h(T, D) - T W + W T with
//!   h = A(T)[D]                   (elastic; k held constant)
//!   h = A(T)[D] + psi(T, D) B(T)  (plastic; k = f(T))
//! and the response is rebuilt interval by interval. Each interval starts
//! with a classification of (T0, k0, D0) into one of four cases; case III
//! (on the yield surface with psi = 0) is settled by probing how psi evolves
//! along a short elastic trial path.

#include <string_view>
#include <vector>

#include "rtplast/constitutive.hpp"
#include "rtplast/motion.hpp"

namespace rtp {

//! f(T) > k + tol_yield at a state that must satisfy the axiom T in E.
class AxiomViolated : public Error {
 public:
  using Error::Error;
};

class StepSizeUnderflow : public Error {
 public:
  using Error::Error;
};

enum class ResponseMode { Elastic, Plastic };

//! Initial situations on entry to an interval:
//!   I   f(T0) < k0
//!   II  f(T0) = k0, psi(T0, D0) < 0
//!   III f(T0) = k0, psi(T0, D0) = 0
//!   IV  f(T0) = k0, psi(T0, D0) > 0
enum class CaseLabel { I, II, III, IV };

std::string_view to_string(ResponseMode m);
std::string_view to_string(CaseLabel c);

struct MaterialState {
  double t = 0.0;
  Sym3 stress;
  double k = 0.0;
};

struct IntegrationOptions {
  double dt_max = 1e-3;
  double tol_yield = 1e-9;
  double tol_psi = 1e-9;
  int event_bisection_iters = 80;
  //! Number of forward differences of t -> psi examined in case III.
  int case3_probe_depth = 2;

  //! Throws std::invalid_argument if any tolerance is non-positive.
  void validate() const;
};

struct Sample {
  double t = 0.0;
  Sym3 stress;
  double k = 0.0;
  Sym3 d;
  Skw3 w;
  double psi = 0.0;  // NaN where grad f is undefined
  double mu = 0.0;   // NaN where grad f is undefined
  Sym3 stress_rate;
  double k_rate = 0.0;
};

enum class SegmentEnd { YieldOnset, Unloading, Breakpoint, EndTime };

struct Segment {
  ResponseMode mode = ResponseMode::Elastic;
  CaseLabel entry_case = CaseLabel::I;
  SegmentEnd end = SegmentEnd::EndTime;
  std::vector<Sample> samples;

  double t_begin() const { return samples.front().t; }
  double t_end() const { return samples.back().t; }
};

struct Trajectory {
  std::vector<Segment> segments;

  MaterialState final_state() const;
  //! Cubic Hermite interpolation between accepted steps, using the stored
  //! rates. Throws OutOfDomain outside the integrated interval.
  Sym3 stress_at(double t) const;
  double k_at(double t) const;
};

//! f(T) <= k + tol.
bool in_elastic_domain(const MaterialModel& model, const Sym3& stress, double k, double tol);

//! Throws AxiomViolated if f(T0) > k0 + tol_yield.
CaseLabel classify(const MaterialModel& model, const Sym3& stress, double k, const Sym3& d,
                   const IntegrationOptions& opts);

//! Decides case III by forward differences of psi along a short elastic trial
//! path from `state`: the first difference exceeding tol_psi in magnitude
//! decides (positive means Plastic); if none does the response is Elastic.
ResponseMode resolve_case_iii(const MaterialModel& model, const MaterialState& state,
                              const Motion& motion, const IntegrationOptions& opts);

//! Case label and the response mode it leads to at `state`, using the
//! right-hand stretching.
struct Onset {
  CaseLabel label;
  ResponseMode mode;
};
Onset initial_response(const MaterialModel& model, const MaterialState& state,
                       const Motion& motion, const IntegrationOptions& opts);

//! Material stress rate T' for the given mode.
Sym3 rhs(const MaterialModel& model, ResponseMode mode, const Sym3& stress, const Sym3& d,
         const Skw3& w);

//! Throws SingularGradient when a plastic response ends a step within
//! dt_max * |T'| of the locus where grad f is undefined.
Trajectory integrate(const MaterialModel& model, const Motion& motion, const MaterialState& state0,
                     double t_end, const IntegrationOptions& opts = {});

}  // namespace rtp
