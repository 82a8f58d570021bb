#include "critpoint/objective.hpp"

#include <algorithm>
#include <cmath>
#include <initializer_list>

#include "critpoint/rng.hpp"

namespace critpoint {
namespace {

void validate_keys(const FamilyParams& p, std::initializer_list<const char*> num_keys,
                   std::initializer_list<const char*> str_keys) {
  for (const auto& kv : p.num) {
    if (std::find_if(num_keys.begin(), num_keys.end(), [&](const char* k) {
          return kv.first == k;
        }) == num_keys.end())
      throw argument_error(p.name + ": unknown parameter '" + kv.first + "'");
  }
  for (const auto& kv : p.str) {
    if (std::find_if(str_keys.begin(), str_keys.end(), [&](const char* k) {
          return kv.first == k;
        }) == str_keys.end())
      throw argument_error(p.name + ": unknown parameter '" + kv.first + "'");
  }
}

Vec log_spaced(int d, double lo, double hi) {
  Vec v(d);
  if (d == 1) {
    v[0] = lo;
    return v;
  }
  for (int i = 0; i < d; ++i)
    v[i] = lo * std::pow(hi / lo, static_cast<double>(i) / (d - 1));
  return v;
}

// Draw order is fixed (orthogonal frame first, then the start direction) so
// instances are reproducible from the seed alone.
Vec pick_direction(Rng& rng, int d, const std::string& dir) {
  if (dir == "e1" || dir == "elast") {
    Vec v = Vec::Zero(d);
    v[dir == "e1" ? 0 : d - 1] = 1.0;
    return v;
  }
  if (dir == "random") return rng.unit_vector(d);
  throw argument_error("x0_dir must be 'e1', 'elast' or 'random', got '" + dir + "'");
}

// q(t) = t^4 / (12 (1 + t^2)) and its closed-form derivatives.
double quartic_q(double t) {
  const double t2 = t * t;
  return t2 * t2 / (12.0 * (1.0 + t2));
}
double quartic_dq(double t) {
  const double t2 = t * t;
  const double s = 1.0 + t2;
  return t * t2 * (t2 + 2.0) / (6.0 * s * s);
}
double quartic_d2q(double t) {
  const double t2 = t * t;
  const double s = 1.0 + t2;
  return t2 * (t2 * t2 + 3.0 * t2 + 6.0) / (6.0 * s * s * s);
}
double quartic_d3q(double t) {
  const double t2 = t * t;
  const double s = 1.0 + t2;
  const double s2 = s * s;
  return 2.0 * t * (1.0 - t2) / (s2 * s2);
}

}  // namespace

QuadCos::QuadCos(const FamilyParams& p) {
  validate_keys(p,
                {"beta", "a_min", "a_max", "stiff", "rotate", "x0_radius", "l1_known"},
                {"x0_dir"});
  d_ = p.d;
  if (d_ < 1) throw argument_error("quad_cos: d must be >= 1");
  beta_ = p.get("beta", 0.5);
  if (beta_ <= 0.0) throw argument_error("quad_cos: beta must be positive");
  const double a_min = p.get("a_min", 1.0);
  const double a_max = p.get("a_max", 4.0);
  if (a_min <= 0.0 || a_max < a_min)
    throw argument_error("quad_cos: need 0 < a_min <= a_max");
  const double stiff = p.get("stiff", 0.0);
  if (stiff != 0.0 && stiff < a_max)
    throw argument_error("quad_cos: stiff must be >= a_max or omitted");
  l1_known_ = p.get("l1_known", 1.0) != 0.0;

  Rng rng(p.seed);
  Vec a = log_spaced(d_, a_min, a_max);
  if (stiff != 0.0) a[d_ - 1] = stiff;
  a_top_ = a[d_ - 1];

  if (p.get("rotate", 0.0) != 0.0) {
    const Mat q = rng.random_orthogonal(d_);
    A_ = q * a.asDiagonal() * q.transpose();
    A_ = 0.5 * (A_ + A_.transpose().eval());
  } else {
    A_ = a.asDiagonal();
  }

  const Vec dir = pick_direction(rng, d_, p.get_str("x0_dir", "e1"));
  x0_ = p.get("x0_radius", 1.0) * dir;
}

double QuadCos::value(const Vec& x) const {
  check_dim(x);
  return 0.5 * x.dot(A_ * x) + beta_ * x.array().cos().sum();
}

Vec QuadCos::gradient(const Vec& x) const {
  check_dim(x);
  return A_ * x - beta_ * x.array().sin().matrix();
}

Mat QuadCos::analytic_hessian(const Vec& x) const {
  check_dim(x);
  Mat h = A_;
  h.diagonal() -= beta_ * x.array().cos().matrix();
  return h;
}

std::optional<double> QuadCos::l1() const {
  if (!l1_known_) return std::nullopt;
  return a_top_ + beta_;
}

SeparableQuartic::SeparableQuartic(const FamilyParams& p) {
  validate_keys(p, {"x0_radius", "l1_known"}, {"x0_dir"});
  d_ = p.d;
  if (d_ < 1) throw argument_error("separable_quartic: d must be >= 1");
  l1_known_ = p.get("l1_known", 1.0) != 0.0;

  // |q''| and |q'''| decay past |t| ~ 2 and are even/odd, so a one-sided scan
  // certifies the suprema; the 1.5 factor absorbs grid error.
  double m2 = 0.0, m3 = 0.0;
  for (int i = 0; i <= 100000; ++i) {
    const double t = 10.0 * i / 100000.0;
    m2 = std::max(m2, std::abs(quartic_d2q(t)));
    m3 = std::max(m3, std::abs(quartic_d3q(t)));
  }
  l1_ = 1.5 * m2;
  l2_ = 1.5 * m3;

  Rng rng(p.seed);
  const Vec dir = pick_direction(rng, d_, p.get_str("x0_dir", "e1"));
  x0_ = p.get("x0_radius", 1.0) * dir;
}

double SeparableQuartic::value(const Vec& x) const {
  check_dim(x);
  double s = 0.0;
  for (int i = 0; i < d_; ++i) s += quartic_q(x[i]);
  return s;
}

Vec SeparableQuartic::gradient(const Vec& x) const {
  check_dim(x);
  Vec g(d_);
  for (int i = 0; i < d_; ++i) g[i] = quartic_dq(x[i]);
  return g;
}

Mat SeparableQuartic::analytic_hessian(const Vec& x) const {
  check_dim(x);
  Mat h = Mat::Zero(d_, d_);
  for (int i = 0; i < d_; ++i) h(i, i) = quartic_d2q(x[i]);
  return h;
}

std::optional<double> SeparableQuartic::l1() const {
  if (!l1_known_) return std::nullopt;
  return l1_;
}

SaddleBand::SaddleBand(const FamilyParams& p) {
  validate_keys(p,
                {"a_min", "a_max", "gamma1", "beta_rest", "gamma_rest", "x0_radius",
                 "l1_known"},
                {"x0_dir"});
  d_ = p.d;
  if (d_ < 2) throw argument_error("saddle_band: d must be >= 2");
  const double a_min = p.get("a_min", 1.0);
  const double a_max = p.get("a_max", 2.0);
  if (a_min <= 0.0 || a_max < a_min)
    throw argument_error("saddle_band: need 0 < a_min <= a_max");
  const double gamma1 = p.get("gamma1", 1.0);
  if (gamma1 <= 0.0) throw argument_error("saddle_band: gamma1 must be positive");
  const double beta_rest = p.get("beta_rest", 0.1);
  const double gamma_rest = p.get("gamma_rest", 1.0);
  if (beta_rest < 0.0 || gamma_rest <= 0.0)
    throw argument_error("saddle_band: need beta_rest >= 0, gamma_rest > 0");
  l1_known_ = p.get("l1_known", 1.0) != 0.0;

  a_ = Vec::Zero(d_);
  const Vec tail = log_spaced(d_ - 1, a_min, a_max);
  for (int i = 1; i < d_; ++i) a_[i] = tail[i - 1];

  beta_ = Vec::Constant(d_, beta_rest);
  gamma_ = Vec::Constant(d_, gamma_rest);
  beta_[0] = 1.0 / (gamma1 * gamma1);
  gamma_[0] = gamma1;
  for (int i = 1; i < d_; ++i)
    if (beta_[i] * gamma_[i] * gamma_[i] > 0.5 * a_[i])
      throw argument_error("saddle_band: beta_rest*gamma_rest^2 must be <= a_i/2");

  l2_ = 0.0;
  for (int i = 0; i < d_; ++i)
    l2_ = std::max(l2_, beta_[i] * gamma_[i] * gamma_[i] * gamma_[i]);
  if (l2_ <= 0.0) throw argument_error("saddle_band: degenerate curvature");

  Rng rng(p.seed);
  const Vec dir = pick_direction(rng, d_, p.get_str("x0_dir", "e1"));
  x0_ = p.get("x0_radius", 1.0) * dir;
}

double SaddleBand::value(const Vec& x) const {
  check_dim(x);
  double s = 0.5 * x.dot(a_.asDiagonal() * x);
  for (int i = 0; i < d_; ++i) s += beta_[i] * std::cos(gamma_[i] * x[i]);
  return s;
}

Vec SaddleBand::gradient(const Vec& x) const {
  check_dim(x);
  Vec g = a_.asDiagonal() * x;
  for (int i = 0; i < d_; ++i) g[i] -= beta_[i] * gamma_[i] * std::sin(gamma_[i] * x[i]);
  return g;
}

Mat SaddleBand::analytic_hessian(const Vec& x) const {
  check_dim(x);
  Mat h = Mat::Zero(d_, d_);
  for (int i = 0; i < d_; ++i)
    h(i, i) = a_[i] - beta_[i] * gamma_[i] * gamma_[i] * std::cos(gamma_[i] * x[i]);
  return h;
}

std::optional<double> SaddleBand::l1() const {
  if (!l1_known_) return std::nullopt;
  double curve = 0.0;
  for (int i = 0; i < d_; ++i)
    curve = std::max(curve, beta_[i] * gamma_[i] * gamma_[i]);
  return a_.maxCoeff() + curve;
}

double SaddleBand::inf_lower_bound() const { return -beta_.sum(); }

RandomCubicReg::RandomCubicReg(const FamilyParams& p) {
  validate_keys(p, {"sigma", "a_scale", "g_scale", "x0_radius"}, {"x0_dir"});
  d_ = p.d;
  if (d_ < 1) throw argument_error("random_cubic_reg: d must be >= 1");
  sigma_ = p.get("sigma", 1.0);
  if (sigma_ <= 0.0) throw argument_error("random_cubic_reg: sigma must be positive");
  const double a_scale = p.get("a_scale", 1.0);
  const double g_scale = p.get("g_scale", 1.0);
  if (a_scale < 0.0 || g_scale < 0.0)
    throw argument_error("random_cubic_reg: scales must be nonnegative");

  Rng rng(p.seed);
  Vec spec(d_);
  for (int i = 0; i < d_; ++i) spec[i] = rng.uniform(-a_scale, a_scale);
  const Mat q = rng.random_orthogonal(d_);
  A_ = q * spec.asDiagonal() * q.transpose();
  A_ = 0.5 * (A_ + A_.transpose().eval());
  g_ = g_scale / std::sqrt(static_cast<double>(d_)) * rng.gaussian_vector(d_);

  // f(x) >= sigma r^3/6 - ||A|| r^2/2 - ||g|| r with r = ||x||; the cubic in
  // r has a unique interior minimum at the positive root below.
  const double anorm = spec.cwiseAbs().maxCoeff();
  const double gnorm = g_.norm();
  const double r = (anorm + std::sqrt(anorm * anorm + 2.0 * sigma_ * gnorm)) / sigma_;
  inf_bound_ = sigma_ * r * r * r / 6.0 - 0.5 * anorm * r * r - gnorm * r;

  const Vec dir = pick_direction(rng, d_, p.get_str("x0_dir", "e1"));
  x0_ = p.get("x0_radius", 1.0) * dir;
}

double RandomCubicReg::value(const Vec& x) const {
  check_dim(x);
  const double r = x.norm();
  return 0.5 * x.dot(A_ * x) + sigma_ / 6.0 * r * r * r + g_.dot(x);
}

Vec RandomCubicReg::gradient(const Vec& x) const {
  check_dim(x);
  return A_ * x + 0.5 * sigma_ * x.norm() * x + g_;
}

Mat RandomCubicReg::analytic_hessian(const Vec& x) const {
  check_dim(x);
  const double r = x.norm();
  Mat h = A_;
  if (r > 0.0) {
    h += 0.5 * sigma_ * r * Mat::Identity(d_, d_);
    h += 0.5 * sigma_ / r * (x * x.transpose());
  }
  return h;
}

std::unique_ptr<Objective> make_objective(const FamilyParams& p) {
  if (p.name == "quad_cos") return std::make_unique<QuadCos>(p);
  if (p.name == "separable_quartic") return std::make_unique<SeparableQuartic>(p);
  if (p.name == "saddle_band") return std::make_unique<SaddleBand>(p);
  if (p.name == "random_cubic_reg") return std::make_unique<RandomCubicReg>(p);
  throw argument_error("unknown objective family '" + p.name + "'");
}

}  // namespace critpoint
