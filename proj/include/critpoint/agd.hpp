#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "critpoint/oracle.hpp"
#include "critpoint/spectral.hpp"
#include "critpoint/types.hpp"

namespace critpoint {

// Inputs for one accelerated run against a fixed curvature estimate.
struct AgdParams {
  double delta = 0.0;  // accuracy of the curvature estimate used for weights
  double eps = 0.0;
  double L1 = 0.0;
  double L2 = 0.0;
  // Constant-relaxation factor in (0, 1].  1 keeps the worst-case constants
  // (faithful mode); smaller values shrink p_max^8 in eps_tilde and p_max in
  // the trigger threshold for faster demo runs.
  double scale = 1.0;
};

// Quantities derived from AgdParams:
//   p_max     capped band count
//   eps_tilde eps / (scale * p_max^8)
//   eta       damping, fixed at 1/4
//   B         (1/3) sqrt(eps_tilde / L2)
//   K         ceil(sqrt(delta) / (eps_tilde * L2)^{1/4}), at least 1
//   theta     1 / K
//   trigger   12 * delta * scale * p_max * B^2
struct AgdDerived {
  int p_max = 0;
  double eps_tilde = 0.0;
  double eta = 0.25;
  double B = 0.0;
  long long K = 0;
  double theta = 0.0;
  double trigger = 0.0;
  double scale = 1.0;
};

AgdDerived agd_derive(const AgdParams& p);

enum class AgdStatus { triggered_progress, averaged };

struct AgdTrace {
  std::vector<Vec> x;  // x^(0) .. x^(last)
  std::vector<Vec> y;  // y^(0) .. y^(last)
};

struct AgdResult {
  Vec x_out;
  AgdStatus status = AgdStatus::averaged;
  long long grad_queries = 0;  // k+1 when triggered at k, K+1 on a full run
  long long trigger_k = -1;
  long long k0 = -1;  // argmin movement index on a full run
  double movement = 0.0;  // ||x_out - x^(0)||
  double trigger_sum = 0.0;
  AgdDerived derived;
  std::shared_ptr<AgdTrace> trace;
};

struct AgdOptions {
  bool record_iterates = false;
};

using GradFn = std::function<Vec(const Vec&)>;

// Momentum descent against the fixed renormalized operator hhat.  Either
// stops early once accumulated renormalized movement certifies an objective
// decrease (triggered_progress) or returns a suffix average of the
// extrapolated points (averaged).  Except for a trigger on the very first
// step, whose length is set by the starting gradient, the final point never
// moves more than 8B from the start.
AgdResult critical_or_progress(const GradFn& grad, const Vec& x0,
                               const NormOperator& hhat, const AgdParams& p,
                               const AgdOptions& opt = {});

// Convenience overload: builds the renormalized operator from a raw estimate
// and counts gradients on the oracle ledger.
AgdResult critical_or_progress(OracleIface& oracle, const Vec& x0, const Mat& h,
                               const AgdParams& p, const AgdOptions& opt = {});

}  // namespace critpoint
