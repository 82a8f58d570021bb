#pragma once

#include <cstdint>

namespace critpoint {

// Exact query accounting.  Every gradient evaluation adds one to grad_count,
// every Hessian estimate adds one to hess_count regardless of oracle mode
// (finite differences additionally pay 2d gradient queries through the
// gradient path).  Function values are tracked separately; they feed
// diagnostics only and never enter reported complexity.
struct QueryLedger {
  std::int64_t grad_count = 0;
  std::int64_t hess_count = 0;
  std::int64_t value_count = 0;

  void reset() { grad_count = hess_count = value_count = 0; }
};

// Snapshot for computing per-phase deltas.
struct LedgerMark {
  std::int64_t grad = 0;
  std::int64_t hess = 0;
  std::int64_t value = 0;
};

inline LedgerMark mark(const QueryLedger& l) {
  return {l.grad_count, l.hess_count, l.value_count};
}

inline LedgerMark since(const QueryLedger& l, const LedgerMark& m) {
  return {l.grad_count - m.grad, l.hess_count - m.hess, l.value_count - m.value};
}

}  // namespace critpoint
