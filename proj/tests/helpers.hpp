#pragma once

#include <Eigen/Dense>

#include "critpoint/oracle.hpp"
#include "critpoint/types.hpp"

namespace critpoint::testing {

// Oracle with scripted gradient/Hessian, for exercising solver control flow
// without an objective in the way.
struct FakeOracle final : OracleIface {
  int d = 2;
  Vec g;
  Mat h;
  double del = 0.0;
  QueryLedger led;

  FakeOracle(int dim_, Vec g_, Mat h_, double delta_ = 0.0)
      : d(dim_), g(std::move(g_)), h(std::move(h_)) {
    del = delta_;
  }

  int dim() const override { return d; }
  OracleMode mode() const override { return OracleMode::exact; }
  double value(const Vec&) override {
    ++led.value_count;
    return 0.0;
  }
  Vec gradient(const Vec&) override {
    ++led.grad_count;
    return g;
  }
  Mat hessian_estimate(const Vec&) override {
    ++led.hess_count;
    return h;
  }
  double delta() const override { return del; }
  const QueryLedger& ledger() const override { return led; }
  QueryLedger& ledger_mut() override { return led; }
};

}  // namespace critpoint::testing
