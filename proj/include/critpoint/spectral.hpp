#pragma once

#include <string>

#include "critpoint/types.hpp"

namespace critpoint {

// Eigenvalues ascending; U's columns are the matching orthonormal
// eigenvectors, each with its largest-magnitude entry made positive.
struct EigenDecomp {
  Vec lambda;
  Mat U;
  int sweeps = 0;
};

// Cyclic Jacobi for symmetric matrices.  The input must be symmetric up to a
// 1e-8 relative Frobenius defect (it is then symmetrized); iteration stops
// when the off-diagonal Frobenius norm falls below 1e-12 * ||M||_F, and more
// than 100 sweeps is reported as a numeric error.
EigenDecomp jacobi_eigen(const Mat& m);

double operator_norm_sym(const Mat& m);

namespace detail {

// Smallest integer k with b * 2^k >= a (that is ceil(log2(a/b))), computed
// with exact power-of-two scaling so dyadic ratios land on the right side.
int ceil_log2_ratio(double a, double b);

// (coeff*delta + |lambda|) * numer / p(lambda) with the band index
// p(lambda) = max(1, ceil(log2(max(|lambda|, 2*delta) / delta))).
double phi_banded(double lambda, double delta, int numer, double coeff);

}  // namespace detail

// Literal renormalization weight with numerator ceil(log2(L1/delta)); needs
// L1 large enough that the numerator is at least 1.
double phi(double lambda, double delta, double L1);

// max(ceil(log2(L1/delta)), 16); the capped band count used everywhere else.
int p_max_index(double L1, double delta);

// Per-band constants for bands indexed by p >= 1 at a given band count:
//   band p collects |lambda| in (2^p delta, 2^{p+1} delta].
struct BandConstants {
  double l;     // strict lower edge of |lambda|/phi(lambda) on the band
  double r;     // attained upper edge
  double xi;    // sqrt(p) / (2^{p/2} p_max)
  double lbar;  // l - xi
};
BandConstants band_constants(int p, int p_max);

// Renormalized curvature operator: same eigenbasis as H, each eigenvalue
// replaced by its phi weight (numerator capped at p_max).  Eigenvalues must
// lie in [-3*delta, 2*L1] up to slack; the resulting operator is checked to
// be bounded below by (48/5)*delta*p_max, the exact infimum of the weight.
class NormOperator {
 public:
  NormOperator(EigenDecomp eig, double delta, double L1);

  int dim() const { return static_cast<int>(eig_.lambda.size()); }
  double delta() const { return delta_; }
  double l1() const { return L1_; }
  int p_max() const { return pmax_; }
  double min_phi() const { return phi_.minCoeff(); }

  Vec apply(const Vec& v) const;
  Vec apply_inverse(const Vec& v) const;
  Vec apply_sqrt(const Vec& v) const;
  Vec apply_inv_sqrt(const Vec& v) const;
  Mat matrix() const;

  const EigenDecomp& eigen() const { return eig_; }
  const Vec& phi_values() const { return phi_; }

 private:
  EigenDecomp eig_;
  Vec phi_, sqrt_phi_;
  double delta_, L1_;
  int pmax_;
};

NormOperator build_norm_operator(const Mat& h, double delta, double L1);
NormOperator build_norm_operator(EigenDecomp eig, double delta, double L1);

// Orthogonal projector onto the span of eigenvectors with eigenvalue in the
// closed interval [a, b].
Mat project_interval(const EigenDecomp& eig, double a, double b);

// Pseudo-inverse of P H P where P projects onto eigendirections selected by
// |lambda| > ell; eigenvalues within tol of zero are dropped.  tol defaults
// to 1e-12 * max|lambda|.
Mat pinv_outside(const EigenDecomp& eig, double ell, double tol = -1.0);

// Projector-perturbation comparison: with xi = ||M - Mt|| and margin
// gamma > xi, and no spectrum of M in [a-gamma, a) or (b, b+gamma], the
// interval projectors of M on [a, b] and of Mt on the widened interval agree
// to xi / gamma in operator norm; precondition failures produce a report,
// not an exception.
struct DkReport {
  bool preconditions_ok = false;
  std::string report;
  double xi = 0.0;
  double gamma = 0.0;
  double lhs = 0.0;
  double rhs = 0.0;
  int count_m = 0;
  int count_mt = 0;
};

DkReport davis_kahan_check(const Mat& m, const Mat& mt, double a, double b,
                           double gamma);

}  // namespace critpoint
