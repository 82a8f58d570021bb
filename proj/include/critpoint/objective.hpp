#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>

#include "critpoint/types.hpp"

namespace critpoint {

// A twice-differentiable objective with known smoothness data.  l2() bounds
// the Lipschitz constant of the Hessian; l1(), when present, bounds the
// Lipschitz constant of the gradient.  inf_lower_bound() is a certified lower
// bound on inf f, so delta_upper(x) = f(x) - inf_lower_bound() bounds the
// suboptimality at x.
class Objective {
 public:
  virtual ~Objective() = default;

  virtual std::string name() const = 0;
  virtual int dim() const = 0;
  virtual double value(const Vec& x) const = 0;
  virtual Vec gradient(const Vec& x) const = 0;

  virtual bool has_analytic_hessian() const { return false; }
  virtual Mat analytic_hessian(const Vec&) const {
    throw unsupported_mode_error(name() + ": no analytic hessian");
  }

  virtual double l2() const = 0;
  virtual std::optional<double> l1() const = 0;
  virtual double inf_lower_bound() const = 0;

  virtual Vec start_point() const = 0;

  double delta_upper(const Vec& x) const { return value(x) - inf_lower_bound(); }

  void check_dim(const Vec& x) const {
    if (x.size() != dim())
      throw argument_error(name() + ": expected dimension " + std::to_string(dim()) +
                           ", got " + std::to_string(x.size()));
  }
};

// Family construction parameters as parsed from CLI flags or a config file.
// Unknown numeric keys are rejected by the factory.
struct FamilyParams {
  std::string name;
  int d = 2;
  std::uint64_t seed = 0;
  std::map<std::string, double> num;
  std::map<std::string, std::string> str;

  double get(const std::string& key, double fallback) const {
    auto it = num.find(key);
    return it == num.end() ? fallback : it->second;
  }
  std::string get_str(const std::string& key, const std::string& fallback) const {
    auto it = str.find(key);
    return it == str.end() ? fallback : it->second;
  }
};

// f(x) = 1/2 x'Ax + beta * sum_i cos(x_i) with A symmetric positive definite.
// Eigenvalues of A are log-spaced on [a_min, a_max]; `stiff` overrides the top
// eigenvalue; `rotate` conjugates by a seeded orthogonal matrix.  L2 = beta,
// L1 = ||A|| + beta (reported only when l1_known), inf f >= -beta*d.
class QuadCos : public Objective {
 public:
  QuadCos(const FamilyParams& p);

  std::string name() const override { return "quad_cos"; }
  int dim() const override { return d_; }
  double value(const Vec& x) const override;
  Vec gradient(const Vec& x) const override;
  bool has_analytic_hessian() const override { return true; }
  Mat analytic_hessian(const Vec& x) const override;
  double l2() const override { return beta_; }
  std::optional<double> l1() const override;
  double inf_lower_bound() const override { return -beta_ * d_; }
  Vec start_point() const override { return x0_; }

  const Mat& quadratic_term() const { return A_; }

 private:
  int d_;
  double beta_;
  bool l1_known_;
  double a_top_;
  Mat A_;
  Vec x0_;
};

// Separable f(x) = sum_i q(x_i), q(t) = t^4 / (12 (1 + t^2)).  inf f = 0 at
// the origin.  Smoothness constants are certified by a dense scan of the
// closed forms q'' and q''' inflated by 1.5.
class SeparableQuartic : public Objective {
 public:
  SeparableQuartic(const FamilyParams& p);

  std::string name() const override { return "separable_quartic"; }
  int dim() const override { return d_; }
  double value(const Vec& x) const override;
  Vec gradient(const Vec& x) const override;
  bool has_analytic_hessian() const override { return true; }
  Mat analytic_hessian(const Vec& x) const override;
  double l2() const override { return l2_; }
  std::optional<double> l1() const override;
  double inf_lower_bound() const override { return 0.0; }
  Vec start_point() const override { return x0_; }

 private:
  int d_;
  bool l1_known_;
  double l1_, l2_;
  Vec x0_;
};

// f(x) = 1/2 x'A x + sum_i beta_i cos(gamma_i x_i) with diagonal PSD A whose
// first eigenvalue is 0 and beta_1 gamma_1^2 = 1, so the Hessian at the
// origin has the exact eigenvalue -1 along e_1.
class SaddleBand : public Objective {
 public:
  SaddleBand(const FamilyParams& p);

  std::string name() const override { return "saddle_band"; }
  int dim() const override { return d_; }
  double value(const Vec& x) const override;
  Vec gradient(const Vec& x) const override;
  bool has_analytic_hessian() const override { return true; }
  Mat analytic_hessian(const Vec& x) const override;
  double l2() const override { return l2_; }
  std::optional<double> l1() const override;
  double inf_lower_bound() const override;
  Vec start_point() const override { return x0_; }

 private:
  int d_;
  bool l1_known_;
  Vec a_, beta_, gamma_;
  double l2_;
  Vec x0_;
};

// f(x) = 1/2 x'Ax + (sigma/6) ||x||^3 + g'x with indefinite A.  The cubic
// term grows without bound, so no global gradient Lipschitz constant exists
// and l1() is empty.  L2 = sigma.
class RandomCubicReg : public Objective {
 public:
  RandomCubicReg(const FamilyParams& p);

  std::string name() const override { return "random_cubic_reg"; }
  int dim() const override { return d_; }
  double value(const Vec& x) const override;
  Vec gradient(const Vec& x) const override;
  bool has_analytic_hessian() const override { return true; }
  Mat analytic_hessian(const Vec& x) const override;
  double l2() const override { return sigma_; }
  std::optional<double> l1() const override { return std::nullopt; }
  double inf_lower_bound() const override { return inf_bound_; }
  Vec start_point() const override { return x0_; }

 private:
  int d_;
  double sigma_;
  Mat A_;
  Vec g_;
  double inf_bound_;
  Vec x0_;
};

std::unique_ptr<Objective> make_objective(const FamilyParams& p);

}  // namespace critpoint
