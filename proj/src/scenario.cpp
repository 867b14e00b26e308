#include "rtplast/scenario.hpp"

#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

#include <fmt/format.h>

#include "json.hpp"

namespace rtp {

using nlohmann::json;

ScenarioError::ScenarioError(std::string key_path, const std::string& message)
    : Error(key_path + ": " + message), key_path_(std::move(key_path)) {}

namespace {

std::string join(const std::string& path, const std::string& key) {
  return path.empty() ? key : path + "." + key;
}

std::string index(const std::string& path, std::size_t i) {
  return path + "[" + std::to_string(i) + "]";
}

const json& require(const json& obj, const std::string& path, const std::string& key) {
  if (!obj.is_object()) throw ScenarioError(path.empty() ? "<root>" : path, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) throw ScenarioError(join(path, key), "missing required field");
  return *it;
}

double number(const json& v, const std::string& path) {
  if (!v.is_number()) throw ScenarioError(path, "expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw ScenarioError(path, "must be finite");
  return x;
}

double number_or(const json& obj, const std::string& path, const std::string& key, double fallback) {
  auto it = obj.find(key);
  return it == obj.end() ? fallback : number(*it, join(path, key));
}

int integer_or(const json& obj, const std::string& path, const std::string& key, int fallback) {
  auto it = obj.find(key);
  if (it == obj.end()) return fallback;
  if (!it->is_number_integer()) throw ScenarioError(join(path, key), "expected an integer");
  return it->get<int>();
}

std::vector<double> numbers(const json& v, const std::string& path, std::size_t count) {
  if (!v.is_array() || v.size() != count)
    throw ScenarioError(path, "expected an array of " + std::to_string(count) + " numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < count; ++i) out.push_back(number(v[i], index(path, i)));
  return out;
}

Sym3 sym3(const json& v, const std::string& path) {
  const auto c = numbers(v, path, 6);
  return {c[0], c[1], c[2], c[3], c[4], c[5]};
}

Vec3 vec3(const json& v, const std::string& path) {
  const auto c = numbers(v, path, 3);
  const Vec3 out(c[0], c[1], c[2]);
  if (!(out.norm() > 0.0)) throw ScenarioError(path, "axis must be nonzero");
  return out;
}

Mat3 mat3(const json& v, const std::string& path) {
  if (!v.is_array() || v.size() != 3) throw ScenarioError(path, "expected a 3x3 array");
  Mat3 m;
  for (std::size_t i = 0; i < 3; ++i) {
    const auto row = numbers(v[i], index(path, i), 3);
    for (std::size_t j = 0; j < 3; ++j) m(int(i), int(j)) = row[j];
  }
  return m;
}

void parse_model(const json& doc, Scenario& sc) {
  auto it = doc.find("model");
  if (it == doc.end()) return;
  const json& m = *it;
  const std::string path = "model";
  if (!m.is_object()) throw ScenarioError(path, "expected an object");
  ModelParameters& p = sc.model;
  p.lambda_e = number_or(m, path, "lambda_e", p.lambda_e);
  p.mu_e = number_or(m, path, "mu_e", p.mu_e);
  p.c0 = number_or(m, path, "c0", p.c0);
  p.c1 = number_or(m, path, "c1", p.c1);
  p.stress_scale = number_or(m, path, "stress_scale", p.stress_scale);
  if (!(p.mu_e > 0.0)) throw ScenarioError("model.mu_e", "must be positive");
  if (!(3.0 * p.lambda_e + 2.0 * p.mu_e > 0.0))
    throw ScenarioError("model.lambda_e", "3 lambda_e + 2 mu_e must be positive");
  if (!(p.c0 > 0.0)) throw ScenarioError("model.c0", "must be positive");
  if (!(p.c1 > 0.0)) throw ScenarioError("model.c1", "must be positive");
  if (!(p.stress_scale > 0.0)) throw ScenarioError("model.stress_scale", "must be positive");

  if (auto y = m.find("yield"); y != m.end()) {
    const std::string ypath = "model.yield";
    const json& type = require(*y, ypath, "type");
    if (!type.is_string()) throw ScenarioError("model.yield.type", "expected a string");
    const auto name = type.get<std::string>();
    if (name == "von_mises") {
      p.yield = YieldKind::VonMises;
    } else if (name == "drucker_prager_like") {
      p.yield = YieldKind::DruckerPragerLike;
      p.alpha = number(require(*y, ypath, "alpha"), "model.yield.alpha");
    } else {
      throw ScenarioError("model.yield.type", "unknown yield function '" + name + "'");
    }
  }
}

MotionSegmentSpec parse_segment(const json& s, const std::string& path) {
  MotionSegmentSpec spec;
  const json& type = require(s, path, "type");
  if (!type.is_string()) throw ScenarioError(join(path, "type"), "expected a string");
  const auto name = type.get<std::string>();
  spec.duration = number(require(s, path, "duration"), join(path, "duration"));
  if (!(spec.duration > 0.0)) throw ScenarioError(join(path, "duration"), "must be positive");
  if (name == "simple_shear") {
    spec.kind = MotionSegmentSpec::Kind::SimpleShear;
    spec.rate = number(require(s, path, "rate"), join(path, "rate"));
  } else if (name == "constant_velocity_gradient") {
    spec.kind = MotionSegmentSpec::Kind::ConstantVelocityGradient;
    spec.velocity_gradient = mat3(require(s, path, "L"), join(path, "L"));
  } else if (name == "rigid_rotation") {
    spec.kind = MotionSegmentSpec::Kind::RigidRotation;
    spec.axis = vec3(require(s, path, "axis"), join(path, "axis"));
    spec.rate = number(require(s, path, "rate"), join(path, "rate"));
  } else {
    throw ScenarioError(join(path, "type"), "unknown motion type '" + name + "'");
  }
  return spec;
}

std::tuple<double, double, int> range(const json& v, const std::string& path) {
  if (!v.is_array() || v.size() != 3) throw ScenarioError(path, "expected [min, max, count]");
  const double lo = number(v[0], index(path, 0));
  const double hi = number(v[1], index(path, 1));
  if (!v[2].is_number_integer() || v[2].get<int>() < 1)
    throw ScenarioError(index(path, 2), "count must be a positive integer");
  if (hi < lo) throw ScenarioError(path, "max must not be below min");
  return {lo, hi, v[2].get<int>()};
}

PortraitSpec parse_portrait(const json& p) {
  const std::string path = "portrait";
  PortraitSpec spec;
  const json& basis = require(p, path, "basis");
  if (!basis.is_array() || basis.size() != 2)
    throw ScenarioError("portrait.basis", "expected two tensors");
  spec.basis_a = sym3(basis[0], "portrait.basis[0]");
  spec.basis_b = sym3(basis[1], "portrait.basis[1]");
  if (auto o = p.find("offset"); o != p.end()) spec.offset = sym3(*o, "portrait.offset");
  std::tie(spec.a_min, spec.a_max, spec.a_count) = range(require(p, path, "range_a"), "portrait.range_a");
  std::tie(spec.b_min, spec.b_max, spec.b_count) = range(require(p, path, "range_b"), "portrait.range_b");
  return spec;
}

std::string real(double x) { return fmt::format("{:.17g}", x); }

}  // namespace

MaterialModel Scenario::build_model() const { return make_model(model); }

std::shared_ptr<const Motion> Scenario::build_motion() const {
  std::vector<PiecewiseMotion::Segment> segs;
  for (const auto& s : motion) {
    std::shared_ptr<const Motion> m;
    switch (s.kind) {
      case MotionSegmentSpec::Kind::SimpleShear:
        m = std::make_shared<SimpleShear>(s.rate);
        break;
      case MotionSegmentSpec::Kind::ConstantVelocityGradient:
        m = std::make_shared<ConstantVelocityGradient>(s.velocity_gradient);
        break;
      case MotionSegmentSpec::Kind::RigidRotation:
        m = std::make_shared<RigidRotation>(s.axis, s.rate);
        break;
    }
    segs.push_back({s.duration, std::move(m)});
  }
  std::shared_ptr<const Motion> base = std::make_shared<PiecewiseMotion>(std::move(segs));
  if (superposed_axis)
    return std::make_shared<SuperposedRotation>(base, *superposed_axis, superposed_spin_rate);
  return base;
}

double Scenario::duration() const {
  double d = 0.0;
  for (const auto& s : motion) d += s.duration;
  return d;
}

Scenario parse_scenario(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ScenarioError("<root>", std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ScenarioError("<root>", "expected an object");

  Scenario sc;
  parse_model(doc, sc);

  const json& init = require(doc, "", "initial");
  sc.initial.t = 0.0;
  sc.initial.stress = sym3(require(init, "initial", "T"), "initial.T");
  sc.initial.k = number(require(init, "initial", "k"), "initial.k");

  const json& motion = require(doc, "", "motion");
  if (!motion.is_array()) throw ScenarioError("motion", "expected an array of segments");
  if (motion.empty()) throw ScenarioError("motion", "no segments");
  for (std::size_t i = 0; i < motion.size(); ++i)
    sc.motion.push_back(parse_segment(motion[i], index("motion", i)));

  if (auto r = doc.find("superposed_rotation"); r != doc.end()) {
    sc.superposed_axis = vec3(require(*r, "superposed_rotation", "axis"), "superposed_rotation.axis");
    sc.superposed_spin_rate =
        number(require(*r, "superposed_rotation", "spin_rate"), "superposed_rotation.spin_rate");
  }

  if (auto o = doc.find("options"); o != doc.end()) {
    const std::string path = "options";
    if (!o->is_object()) throw ScenarioError(path, "expected an object");
    IntegrationOptions& opt = sc.options;
    opt.dt_max = number_or(*o, path, "dt_max", opt.dt_max);
    opt.tol_yield = number_or(*o, path, "tol_yield", opt.tol_yield);
    opt.tol_psi = number_or(*o, path, "tol_psi", opt.tol_psi);
    opt.event_bisection_iters = integer_or(*o, path, "event_bisection_iters", opt.event_bisection_iters);
    opt.case3_probe_depth = integer_or(*o, path, "case3_probe_depth", opt.case3_probe_depth);
    if (!(opt.dt_max > 0.0)) throw ScenarioError("options.dt_max", "must be positive");
    if (!(opt.tol_yield > 0.0)) throw ScenarioError("options.tol_yield", "must be positive");
    if (!(opt.tol_psi > 0.0)) throw ScenarioError("options.tol_psi", "must be positive");
    if (opt.event_bisection_iters < 1)
      throw ScenarioError("options.event_bisection_iters", "must be at least 1");
    if (opt.case3_probe_depth < 1) throw ScenarioError("options.case3_probe_depth", "must be at least 1");
  }

  if (auto o = doc.find("output"); o != doc.end()) {
    if (!o->is_object()) throw ScenarioError("output", "expected an object");
    sc.stride = integer_or(*o, "output", "stride", 1);
    if (sc.stride < 1) throw ScenarioError("output.stride", "must be at least 1");
    if (auto p = o->find("path"); p != o->end()) {
      if (!p->is_string()) throw ScenarioError("output.path", "expected a string");
      sc.output_path = p->get<std::string>();
    }
  }

  if (auto p = doc.find("portrait"); p != doc.end()) sc.portrait = parse_portrait(*p);

  const MaterialModel model = sc.build_model();
  const double excess = model.f(sc.initial.stress) - sc.initial.k;
  if (excess > sc.options.tol_yield)
    throw ScenarioError("initial.k",
                        fmt::format("axiom violated: f(T0) exceeds k0 by {:.6g}", excess));

  const auto built = sc.build_motion();
  std::vector<double> grid;
  constexpr int kGrid = 200;
  for (int i = 0; i <= kGrid; ++i) grid.push_back(sc.duration() * i / kGrid);
  const MotionReport report = validate(*built, grid);
  if (!report.ok())
    throw ScenarioError("motion", fmt::format("invalid deformation at t = {:.6g}: {}",
                                              report.violations.front().t,
                                              report.violations.front().what));
  return sc;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ScenarioError("<file>", "cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str());
}

Trajectory run_scenario(const Scenario& scenario) {
  const MaterialModel model = scenario.build_model();
  const auto motion = scenario.build_motion();
  return integrate(model, *motion, scenario.initial, scenario.duration(), scenario.options);
}

void write_trajectory_csv(std::ostream& os, const Trajectory& traj, const MaterialModel& model,
                          int stride) {
  if (stride < 1) stride = 1;
  os << "t,T11,T22,T33,T23,T13,T12,k,f,psi,mu,mode,D11,D22,D33,D23,D13,D12,W23,W13,W12,case\n";
  for (const auto& seg : traj.segments) {
    const std::size_t n = seg.samples.size();
    for (std::size_t i = 0; i < n; ++i) {
      if (i != 0 && i + 1 != n && i % static_cast<std::size_t>(stride) != 0) continue;
      const Sample& s = seg.samples[i];
      os << real(s.t);
      for (int c = 0; c < 6; ++c) os << ',' << real(s.stress[c]);
      os << ',' << real(s.k) << ',' << real(model.f(s.stress)) << ',' << real(s.psi) << ','
         << real(s.mu) << ',' << to_string(seg.mode);
      for (int c = 0; c < 6; ++c) os << ',' << real(s.d[c]);
      os << ',' << real(s.w.w23()) << ',' << real(s.w.w13()) << ',' << real(s.w.w12()) << ',';
      if (i == 0) os << to_string(seg.entry_case);
      os << '\n';
    }
  }
}

void write_portrait_csv(std::ostream& os, const MaterialModel& model, const PortraitSpec& spec) {
  const double na = norm(spec.basis_a);
  const double nb = norm(spec.basis_b);
  if (!(na > 0.0) || !(nb > 0.0)) throw ScenarioError("portrait.basis", "basis tensors must be nonzero");
  const double cosine = inner(spec.basis_a, spec.basis_b) / (na * nb);
  if (std::abs(cosine) > 1.0 - 1e-12)
    throw ScenarioError("portrait.basis", "basis tensors are linearly dependent");

  auto coord = [](double lo, double hi, int n, int i) {
    return n == 1 ? lo : lo + (hi - lo) * i / (n - 1);
  };
  os << "a,b,f,mu,sign_mu,status\n";
  for (int i = 0; i < spec.a_count; ++i) {
    const double a = coord(spec.a_min, spec.a_max, spec.a_count, i);
    for (int j = 0; j < spec.b_count; ++j) {
      const double b = coord(spec.b_min, spec.b_max, spec.b_count, j);
      const Sym3 stress = spec.offset + a * spec.basis_a + b * spec.basis_b;
      os << real(a) << ',' << real(b) << ',' << real(model.f(stress)) << ',';
      if (model.gradient_defined(stress)) {
        const double m = mu(model, stress);
        os << real(m) << ',' << (m > 0.0 ? 1 : (m < 0.0 ? -1 : 0)) << ",ok\n";
      } else {
        os << ",,singular_gradient\n";
      }
    }
  }
}

}  // namespace rtp
