#pragma once

//! \file constitutive.hpp
//! \brief Elastic tangent A, yield function f and plastic direction B, plus
//! the scalar and tensor fields built from them (psi, mu, P, C).

#include <memory>

#include "rtplast/tensor.hpp"

namespace rtp {

//! Raised when the yield-function gradient is requested on its singular
//! locus (the hydrostatic axis for the deviatoric-norm yield functions).
class SingularGradient : public Error {
 public:
  using Error::Error;
};

//! Stress-dependent linear operator on Sym. Implementations must be
//! isotropic and invertible.
class ElasticTangent {
 public:
  virtual ~ElasticTangent() = default;

  virtual Sym3 apply(const Sym3& stress, const Sym3& d) const = 0;
  virtual Sym3 apply_transpose(const Sym3& stress, const Sym3& s) const = 0;
  virtual Sym3 apply_inverse(const Sym3& stress, const Sym3& s) const = 0;
};

//! A(T)[D] = lambda tr(D) I + 2 mu D, independent of T.
class GradeZeroIsotropic final : public ElasticTangent {
 public:
  GradeZeroIsotropic(double lambda, double mu);

  Sym3 apply(const Sym3& stress, const Sym3& d) const override;
  Sym3 apply_transpose(const Sym3& stress, const Sym3& s) const override;
  Sym3 apply_inverse(const Sym3& stress, const Sym3& s) const override;

  double lambda() const { return lambda_; }
  double mu() const { return mu_; }

 private:
  double lambda_;
  double mu_;
};

//! Isotropic scalar function of stress.
class YieldFunction {
 public:
  virtual ~YieldFunction() = default;

  virtual double value(const Sym3& stress) const = 0;
  //! Undefined where is_regular() is false; callers go through MaterialModel.
  virtual Sym3 gradient(const Sym3& stress) const = 0;
  virtual bool is_regular(const Sym3& stress, double grad_eps) const = 0;
};

//! f(T) = |dev T|.
class VonMises final : public YieldFunction {
 public:
  double value(const Sym3& stress) const override;
  Sym3 gradient(const Sym3& stress) const override;
  bool is_regular(const Sym3& stress, double grad_eps) const override;
};

//! f(T) = |dev T| + alpha tr T.
class DruckerPragerLike final : public YieldFunction {
 public:
  explicit DruckerPragerLike(double alpha);

  double value(const Sym3& stress) const override;
  Sym3 gradient(const Sym3& stress) const override;
  bool is_regular(const Sym3& stress, double grad_eps) const override;

  double alpha() const { return alpha_; }

 private:
  double alpha_;
};

//! Plastic direction B: Sym -> Sym, isotropic, nonzero on the admissible
//! stress domain.
class PlasticDirection {
 public:
  virtual ~PlasticDirection() = default;

  virtual Sym3 value(const Sym3& stress) const = 0;
};

//! B(T) = beta(T) A(T)[grad f(T)] with beta(T) = -(c0 + c1 f(T)).
//! Gives plastic stretching normal to the yield surface.
class NormalityDirection final : public PlasticDirection {
 public:
  NormalityDirection(std::shared_ptr<const ElasticTangent> elastic,
                     std::shared_ptr<const YieldFunction> yield, double c0, double c1);

  Sym3 value(const Sym3& stress) const override;
  double beta(const Sym3& stress) const;

  double c0() const { return c0_; }
  double c1() const { return c1_; }

 private:
  std::shared_ptr<const ElasticTangent> elastic_;
  std::shared_ptr<const YieldFunction> yield_;
  double c0_;
  double c1_;
};

//! The constitutive triple (A, f, B). Immutable after construction.
struct MaterialModel {
  std::shared_ptr<const ElasticTangent> elastic;
  std::shared_ptr<const YieldFunction> yield;
  std::shared_ptr<const PlasticDirection> direction;
  double grad_eps = 1e-9;

  double f(const Sym3& stress) const { return yield->value(stress); }
  bool gradient_defined(const Sym3& stress) const { return yield->is_regular(stress, grad_eps); }
  //! grad f(T); throws SingularGradient off the admissible domain.
  Sym3 grad_f(const Sym3& stress) const;
  //! B(T); throws SingularGradient off the admissible domain.
  Sym3 b(const Sym3& stress) const;
  Sym3 a(const Sym3& stress, const Sym3& d) const { return elastic->apply(stress, d); }
  Sym3 a_inv(const Sym3& stress, const Sym3& s) const { return elastic->apply_inverse(stress, s); }
};

enum class YieldKind { VonMises, DruckerPragerLike };

struct ModelParameters {
  double lambda_e = 1.0;
  double mu_e = 1.0;
  YieldKind yield = YieldKind::VonMises;
  double alpha = 0.0;
  double c0 = 0.1;
  double c1 = 0.2;
  double stress_scale = 1.0;
};

//! Grade-zero elasticity, the chosen yield function and normality direction.
//! Throws std::invalid_argument on inadmissible parameters.
MaterialModel make_model(const ModelParameters& p);

//! Defaults: mu_e = lambda_e = 1, c0 = 0.1, c1 = 0.2 (limit surface at f = 2).
MaterialModel default_model(YieldKind yield = YieldKind::VonMises, double alpha = 0.3);

//! psi(T, D) = A(T)[D] : grad f(T).
double psi(const MaterialModel& model, const Sym3& stress, const Sym3& d);
//! mu(T) = 1 + grad f(T) : B(T).
double mu(const MaterialModel& model, const Sym3& stress);
//! P(T) = A(T)^T[grad f(T)], so that psi(T, D) = D : P(T).
Sym3 p_tensor(const MaterialModel& model, const Sym3& stress);
//! C(T)[D] = A(T)[D] + psi(T, D) B(T), the plastic right-hand side.
Sym3 c_apply(const MaterialModel& model, const Sym3& stress, const Sym3& d);

}  // namespace rtp
