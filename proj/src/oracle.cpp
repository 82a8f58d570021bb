#include "critpoint/oracle.hpp"

#include <cmath>
#include <utility>

#include "critpoint/spectral.hpp"

namespace critpoint {

OracleMode parse_oracle_mode(const std::string& s) {
  if (s == "exact") return OracleMode::exact;
  if (s == "zero") return OracleMode::zero;
  if (s == "noisy") return OracleMode::noisy;
  if (s == "finite_difference" || s == "fd") return OracleMode::finite_difference;
  throw argument_error("unknown oracle mode '" + s + "'");
}

std::string to_string(OracleMode m) {
  switch (m) {
    case OracleMode::exact: return "exact";
    case OracleMode::zero: return "zero";
    case OracleMode::noisy: return "noisy";
    case OracleMode::finite_difference: return "finite_difference";
  }
  return "?";
}

Oracle::Oracle(const Objective& obj, OracleConfig cfg)
    : obj_(obj), cfg_(cfg), delta_(0.0), noise_(cfg.seed) {
  switch (cfg_.mode) {
    case OracleMode::exact:
      if (cfg_.delta != 0.0)
        throw invalid_parameter_error("exact oracle mode has delta fixed at 0");
      if (!obj_.has_analytic_hessian())
        throw unsupported_mode_error("exact oracle mode needs an analytic hessian for " +
                                     obj_.name());
      delta_ = 0.0;
      break;
    case OracleMode::zero: {
      if (cfg_.delta != 0.0)
        throw invalid_parameter_error("zero oracle mode derives delta from L1; leave it unset");
      const auto l1 = obj_.l1();
      if (!l1)
        throw unsupported_mode_error(
            "zero oracle mode needs a known gradient Lipschitz constant for " + obj_.name());
      delta_ = *l1;
      break;
    }
    case OracleMode::noisy:
      if (!(cfg_.delta > 0.0))
        throw invalid_parameter_error("noisy oracle mode needs delta > 0");
      if (!obj_.has_analytic_hessian())
        throw unsupported_mode_error("noisy oracle mode needs an analytic hessian for " +
                                     obj_.name());
      delta_ = cfg_.delta;
      break;
    case OracleMode::finite_difference:
      if (!(cfg_.delta > 0.0))
        throw invalid_parameter_error("finite_difference oracle mode needs delta > 0");
      if (!(obj_.l2() > 0.0))
        throw invalid_parameter_error("finite_difference oracle mode needs L2 > 0");
      delta_ = cfg_.delta;
      break;
  }
}

double Oracle::value(const Vec& x) {
  ++ledger_.value_count;
  return obj_.value(x);
}

Vec Oracle::gradient(const Vec& x) {
  ++ledger_.grad_count;
  return obj_.gradient(x);
}

double Oracle::fd_step() const {
  return 2.0 * delta_ / (std::sqrt(static_cast<double>(obj_.dim())) * obj_.l2());
}

Mat Oracle::hessian_estimate(const Vec& x) {
  ++ledger_.hess_count;
  const int d = obj_.dim();
  switch (cfg_.mode) {
    case OracleMode::exact:
      return obj_.analytic_hessian(x);
    case OracleMode::zero:
      return Mat::Zero(d, d);
    case OracleMode::noisy: {
      // Draw order is fixed: the symmetric Gaussian first, then the level.
      Mat e = noise_.gaussian_symmetric(d);
      const double u = noise_.uniform01();
      const double n = operator_norm_sym(e);
      Mat h = obj_.analytic_hessian(x);
      if (n > 0.0) h += (delta_ * u / n) * e;
      return h;
    }
    case OracleMode::finite_difference: {
      const double h = fd_step();
      Mat est(d, d);
      Vec probe = x;
      for (int i = 0; i < d; ++i) {
        probe[i] = x[i] + h;
        const Vec gp = gradient(probe);
        probe[i] = x[i] - h;
        const Vec gm = gradient(probe);
        probe[i] = x[i];
        est.col(i) = (gp - gm) / (2.0 * h);
      }
      return 0.5 * (est + est.transpose().eval());
    }
  }
  throw numeric_error("unreachable oracle mode");
}

RestrictedOracle::RestrictedOracle(OracleIface& base, Vec x0, Mat projector, double l2)
    : base_(base), x0_(std::move(x0)), proj_(std::move(projector)), l2_(l2) {
  if (x0_.size() != base_.dim() || proj_.rows() != base_.dim() ||
      proj_.cols() != base_.dim())
    throw argument_error("restricted oracle: dimension mismatch");
  if (!(l2_ > 0.0)) throw invalid_parameter_error("restricted oracle: L2 must be positive");
}

Vec RestrictedOracle::gradient(const Vec& x) {
  return proj_ * base_.gradient(lift(x));
}

Mat RestrictedOracle::hessian_estimate(const Vec& x) {
  if (mode() == OracleMode::finite_difference) {
    // Central differences of the restricted gradient: the probes already live
    // in the subspace, so the estimate targets P H P directly with the same
    // delta guarantee.
    ++ledger_mut().hess_count;
    const int d = dim();
    const double h = 2.0 * delta() / (std::sqrt(static_cast<double>(d)) * l2_);
    Mat est(d, d);
    Vec probe = x;
    for (int i = 0; i < d; ++i) {
      probe[i] = x[i] + h;
      const Vec gp = gradient(probe);
      probe[i] = x[i] - h;
      const Vec gm = gradient(probe);
      probe[i] = x[i];
      est.col(i) = (gp - gm) / (2.0 * h);
    }
    return 0.5 * (est + est.transpose().eval());
  }
  const Mat h = proj_ * base_.hessian_estimate(lift(x)) * proj_;
  return 0.5 * (h + h.transpose().eval());
}

}  // namespace critpoint
