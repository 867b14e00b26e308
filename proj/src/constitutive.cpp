#include "rtplast/constitutive.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace rtp {

GradeZeroIsotropic::GradeZeroIsotropic(double lambda, double mu) : lambda_(lambda), mu_(mu) {
  if (!(mu > 0.0)) throw std::invalid_argument("GradeZeroIsotropic: mu_e must be positive");
  if (!(3.0 * lambda + 2.0 * mu > 0.0))
    throw std::invalid_argument("GradeZeroIsotropic: 3 lambda_e + 2 mu_e must be positive");
}

Sym3 GradeZeroIsotropic::apply(const Sym3&, const Sym3& d) const {
  return lambda_ * trace(d) * Sym3::identity() + 2.0 * mu_ * d;
}

Sym3 GradeZeroIsotropic::apply_transpose(const Sym3& stress, const Sym3& s) const {
  return apply(stress, s);
}

Sym3 GradeZeroIsotropic::apply_inverse(const Sym3&, const Sym3& s) const {
  const double shift = lambda_ / (3.0 * lambda_ + 2.0 * mu_) * trace(s);
  return (s - shift * Sym3::identity()) / (2.0 * mu_);
}

double VonMises::value(const Sym3& stress) const { return norm(deviator(stress)); }

Sym3 VonMises::gradient(const Sym3& stress) const {
  const Sym3 dev = deviator(stress);
  return dev / norm(dev);
}

bool VonMises::is_regular(const Sym3& stress, double grad_eps) const {
  return norm(deviator(stress)) >= grad_eps;
}

DruckerPragerLike::DruckerPragerLike(double alpha) : alpha_(alpha) {
  if (!std::isfinite(alpha)) throw std::invalid_argument("DruckerPragerLike: alpha must be finite");
}

double DruckerPragerLike::value(const Sym3& stress) const {
  return norm(deviator(stress)) + alpha_ * trace(stress);
}

Sym3 DruckerPragerLike::gradient(const Sym3& stress) const {
  const Sym3 dev = deviator(stress);
  return dev / norm(dev) + alpha_ * Sym3::identity();
}

bool DruckerPragerLike::is_regular(const Sym3& stress, double grad_eps) const {
  return norm(deviator(stress)) >= grad_eps;
}

NormalityDirection::NormalityDirection(std::shared_ptr<const ElasticTangent> elastic,
                                       std::shared_ptr<const YieldFunction> yield, double c0,
                                       double c1)
    : elastic_(std::move(elastic)), yield_(std::move(yield)), c0_(c0), c1_(c1) {
  if (!elastic_ || !yield_) throw std::invalid_argument("NormalityDirection: null component");
  if (!(c0 > 0.0) || !(c1 > 0.0))
    throw std::invalid_argument("NormalityDirection: c0 and c1 must be positive");
}

double NormalityDirection::beta(const Sym3& stress) const {
  return -(c0_ + c1_ * yield_->value(stress));
}

Sym3 NormalityDirection::value(const Sym3& stress) const {
  return beta(stress) * elastic_->apply(stress, yield_->gradient(stress));
}

Sym3 MaterialModel::grad_f(const Sym3& stress) const {
  if (!gradient_defined(stress))
    throw SingularGradient("yield-function gradient undefined at this stress (|dev T| < grad_eps)");
  return yield->gradient(stress);
}

Sym3 MaterialModel::b(const Sym3& stress) const {
  if (!gradient_defined(stress))
    throw SingularGradient("plastic direction undefined at this stress (|dev T| < grad_eps)");
  return direction->value(stress);
}

MaterialModel make_model(const ModelParameters& p) {
  if (!(p.stress_scale > 0.0)) throw std::invalid_argument("stress_scale must be positive");
  auto elastic = std::make_shared<const GradeZeroIsotropic>(p.lambda_e, p.mu_e);
  std::shared_ptr<const YieldFunction> yield;
  switch (p.yield) {
    case YieldKind::VonMises:
      yield = std::make_shared<const VonMises>();
      break;
    case YieldKind::DruckerPragerLike:
      yield = std::make_shared<const DruckerPragerLike>(p.alpha);
      break;
  }
  auto direction = std::make_shared<const NormalityDirection>(elastic, yield, p.c0, p.c1);
  return MaterialModel{elastic, yield, direction, 1e-9 * p.stress_scale};
}

MaterialModel default_model(YieldKind yield, double alpha) {
  ModelParameters p;
  p.yield = yield;
  p.alpha = yield == YieldKind::DruckerPragerLike ? alpha : 0.0;
  return make_model(p);
}

double psi(const MaterialModel& model, const Sym3& stress, const Sym3& d) {
  return inner(model.a(stress, d), model.grad_f(stress));
}

double mu(const MaterialModel& model, const Sym3& stress) {
  return 1.0 + inner(model.grad_f(stress), model.b(stress));
}

Sym3 p_tensor(const MaterialModel& model, const Sym3& stress) {
  return model.elastic->apply_transpose(stress, model.grad_f(stress));
}

Sym3 c_apply(const MaterialModel& model, const Sym3& stress, const Sym3& d) {
  return model.a(stress, d) + psi(model, stress, d) * model.b(stress);
}

}  // namespace rtp
