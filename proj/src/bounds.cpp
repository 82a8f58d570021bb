#include "critpoint/bounds.hpp"

#include <cmath>

namespace critpoint {

double bound_vavasis(double d, double eps) {
  return std::pow(2.0, d) + std::pow(eps, -2.0 * d / (d + 2.0));
}

double bound_li_lin(double L1, double L2, double Delta, double eps) {
  return std::sqrt(L1) * std::pow(L2, 0.25) * Delta * std::pow(eps, -1.75);
}

double bound_nesterov_polyak(double d, double L2, double Delta, double eps) {
  return d * std::sqrt(L2) * Delta * std::pow(eps, -1.5);
}

double bound_doikov(double d, double L2, double Delta, double eps) {
  return std::sqrt(d * L2) * Delta * std::pow(eps, -1.5) + d;
}

double bound_jiang(double d, double L1, double L2, double Delta, double eps) {
  return std::pow(d, 0.25) * std::pow(L1, 0.25) * std::pow(L2, 0.375) * Delta *
         std::pow(eps, -1.625);
}

double bound_ours_fd(double d, double L2, double Delta, double eps) {
  return std::cbrt(d) * std::sqrt(L2) * Delta * std::pow(eps, -1.5) + d;
}

double bound_ours_restarted(double L1, double L2, double Delta, double eps, double n_H,
                            double delta) {
  const double cd = std::min(L1, delta + Delta * L2 / (n_H * eps));
  return 2.0 * Delta * std::pow(L2, 0.25) * std::sqrt(cd) * std::pow(eps, -1.75) *
         std::pow(std::log2(L1 / cd + 16.0), 18.0);
}

double bound_ours_reduction(double L2, double Delta, double eps, double n_H,
                            double delta) {
  const double cd = delta + Delta * L2 / (n_H * eps);
  const double push = 3.0 * L2 * Delta / eps + delta;
  const double ell_hat =
      std::max(800.0 * Delta / (eps * eps) * push * push, 2.0 * delta);
  return 2.0 * Delta * std::pow(L2, 0.25) * std::sqrt(cd) * std::pow(eps, -1.75) *
         std::pow(std::log2(ell_hat / cd + 16.0), 18.0);
}

RatioSample b1_ratio(double d, double L1, double L2, double Delta, double eps) {
  if (!(d > 0.0) || !(L1 > 0.0) || !(L2 > 0.0) || !(Delta > 0.0) || !(eps > 0.0))
    throw invalid_parameter_error("b1_ratio: all inputs must be positive");
  RatioSample s;
  s.A = std::sqrt(d * L2) * Delta * std::pow(eps, -1.5);
  s.B = std::sqrt(L1) * std::pow(L2, 0.25) * Delta * std::pow(eps, -1.75);
  s.G = std::sqrt(s.A * s.B);
  s.ratio = std::min(s.A + d, s.B) / s.G;
  return s;
}

double b1_limit() { return std::sqrt(0.5 * (1.0 + std::sqrt(5.0))); }

double fd_delta(double L2, double Delta, double eps, double n_H) {
  return Delta * L2 / (n_H * eps);
}

double fd_total_cost(double d, double L2, double Delta, double eps, double n_H) {
  const double delta = fd_delta(L2, Delta, eps, n_H);
  return bound_ours_reduction(L2, Delta, eps, n_H, delta) + 2.0 * d * n_H;
}

FdPlan fd_pipeline(double d, double L2, double Delta, double eps) {
  if (!(d >= 1.0)) throw invalid_parameter_error("fd_pipeline: d must be at least 1");
  const double top = 64.0 * std::ceil(std::pow(d, 2.0 / 3.0));
  FdPlan best;
  bool have = false;
  for (double n = 1.0; n <= top; n += 1.0) {
    const double cost = fd_total_cost(d, L2, Delta, eps, n);
    if (!have || cost < best.total_cost) {
      have = true;
      best.n_H = n;
      best.delta = fd_delta(L2, Delta, eps, n);
      best.grad_bound = bound_ours_reduction(L2, Delta, eps, n, best.delta);
      best.total_cost = cost;
    }
  }
  return best;
}

double trend_n_g(double L2, double Delta, double eps, double n_H) {
  return std::pow(Delta, 1.5) * std::pow(L2, 0.75) / std::sqrt(n_H) *
         std::pow(eps, -2.25);
}

}  // namespace critpoint
