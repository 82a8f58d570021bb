#pragma once

#include <cstdint>
#include <string>

#include "critpoint/ledger.hpp"
#include "critpoint/objective.hpp"
#include "critpoint/rng.hpp"
#include "critpoint/types.hpp"

namespace critpoint {

enum class OracleMode { exact, zero, noisy, finite_difference };

OracleMode parse_oracle_mode(const std::string& s);
std::string to_string(OracleMode m);

struct OracleConfig {
  OracleMode mode = OracleMode::exact;
  double delta = 0.0;      // accuracy target for noisy / finite_difference
  std::uint64_t seed = 0;  // noise stream for the noisy mode
};

// Counted access to gradients and Hessian estimates.  delta() is the
// certified operator-norm accuracy of hessian_estimate: 0 for exact, the
// gradient Lipschitz constant for zero, and the configured level otherwise.
class OracleIface {
 public:
  virtual ~OracleIface() = default;
  virtual int dim() const = 0;
  virtual OracleMode mode() const = 0;
  virtual double value(const Vec& x) = 0;
  virtual Vec gradient(const Vec& x) = 0;
  virtual Mat hessian_estimate(const Vec& x) = 0;
  virtual double delta() const = 0;
  virtual const QueryLedger& ledger() const = 0;
  virtual QueryLedger& ledger_mut() = 0;
};

class Oracle : public OracleIface {
 public:
  Oracle(const Objective& obj, OracleConfig cfg);

  int dim() const override { return obj_.dim(); }
  OracleMode mode() const override { return cfg_.mode; }
  double value(const Vec& x) override;
  Vec gradient(const Vec& x) override;

  // Every mode charges one Hessian query; finite differences additionally
  // charge exactly 2d gradient queries through the gradient path.
  Mat hessian_estimate(const Vec& x) override;

  double delta() const override { return delta_; }
  const QueryLedger& ledger() const override { return ledger_; }
  QueryLedger& ledger_mut() override { return ledger_; }

  const Objective& objective() const { return obj_; }
  double fd_step() const;

 private:
  const Objective& obj_;
  OracleConfig cfg_;
  double delta_;
  Rng noise_;
  QueryLedger ledger_;
};

// View of a base oracle restricted to the affine subspace x0 + range(P):
// serves g(x) = P grad f(x0 + P(x - x0)) and the matching projected Hessian
// estimates.  All queries are charged to the base ledger one for one; in
// finite-difference mode the estimate differences the restricted gradient,
// which costs 2d base gradient queries plus the one Hessian charge.
class RestrictedOracle : public OracleIface {
 public:
  RestrictedOracle(OracleIface& base, Vec x0, Mat projector, double l2);

  int dim() const override { return base_.dim(); }
  OracleMode mode() const override { return base_.mode(); }
  double value(const Vec& x) override { return base_.value(lift(x)); }
  Vec gradient(const Vec& x) override;
  Mat hessian_estimate(const Vec& x) override;
  double delta() const override { return base_.delta(); }
  const QueryLedger& ledger() const override { return base_.ledger(); }
  QueryLedger& ledger_mut() override { return base_.ledger_mut(); }

  Vec lift(const Vec& x) const { return x0_ + proj_ * (x - x0_); }
  const Mat& projector() const { return proj_; }

 private:
  OracleIface& base_;
  Vec x0_;
  Mat proj_;
  double l2_;
};

}  // namespace critpoint
