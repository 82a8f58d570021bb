#include "critpoint/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <utility>
#include <vector>

namespace critpoint {
namespace {

double off_diagonal_norm(const Mat& a) {
  double s = 0.0;
  const int d = static_cast<int>(a.rows());
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) s += a(i, j) * a(i, j) + a(j, i) * a(j, i);
  return std::sqrt(s);
}

void fix_column_signs(Mat& u) {
  for (int j = 0; j < u.cols(); ++j) {
    int idx = 0;
    u.col(j).cwiseAbs().maxCoeff(&idx);
    if (u(idx, j) < 0.0) u.col(j) = -u.col(j);
  }
}

}  // namespace

EigenDecomp jacobi_eigen(const Mat& m) {
  if (m.rows() != m.cols() || m.rows() == 0)
    throw argument_error("jacobi_eigen: matrix must be square and nonempty");
  if (!m.allFinite()) throw numeric_error("jacobi_eigen: non-finite entries");
  const int d = static_cast<int>(m.rows());
  const double fro = m.norm();
  const double asym = (m - m.transpose()).norm();
  if (asym > 1e-8 * std::max(fro, 1e-300))
    throw argument_error("jacobi_eigen: input asymmetry " + std::to_string(asym) +
                         " exceeds 1e-8 relative tolerance");

  Mat a = 0.5 * (m + m.transpose());
  Mat v = Mat::Identity(d, d);
  const double target = 1e-12 * a.norm();

  int sweeps = 0;
  while (off_diagonal_norm(a) > target) {
    if (sweeps >= 100)
      throw numeric_error("jacobi_eigen: no convergence after 100 sweeps (off-diagonal " +
                          std::to_string(off_diagonal_norm(a)) + ")");
    ++sweeps;
    for (int p = 0; p < d - 1; ++p) {
      for (int q = p + 1; q < d; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double tau = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t =
            (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        for (int k = 0; k < d; ++k) {
          const double akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (int k = 0; k < d; ++k) {
          const double apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        for (int k = 0; k < d; ++k) {
          const double vkp = v(k, p), vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }

  std::vector<int> order(d);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int i, int j) { return a(i, i) < a(j, j); });

  EigenDecomp out;
  out.lambda.resize(d);
  out.U.resize(d, d);
  for (int j = 0; j < d; ++j) {
    out.lambda[j] = a(order[j], order[j]);
    out.U.col(j) = v.col(order[j]);
  }
  fix_column_signs(out.U);
  out.sweeps = sweeps;
  return out;
}

double operator_norm_sym(const Mat& m) {
  return jacobi_eigen(m).lambda.cwiseAbs().maxCoeff();
}

namespace detail {

int ceil_log2_ratio(double a, double b) {
  if (!(a > 0.0) || !(b > 0.0) || !std::isfinite(a) || !std::isfinite(b))
    throw invalid_parameter_error("ceil_log2_ratio: arguments must be positive finite");
  int k = static_cast<int>(std::ceil(std::log2(a / b)));
  while (std::ldexp(b, k) < a) ++k;
  while (k > -3000 && std::ldexp(b, k - 1) >= a) --k;
  return k;
}

double phi_banded(double lambda, double delta, int numer, double coeff) {
  if (!(delta > 0.0))
    throw invalid_parameter_error("phi_banded: delta must be positive");
  const double al = std::abs(lambda);
  const int p = std::max(1, ceil_log2_ratio(std::max(al, 2.0 * delta), delta));
  return (coeff * delta + al) * static_cast<double>(numer) / static_cast<double>(p);
}

}  // namespace detail

double phi(double lambda, double delta, double L1) {
  if (!(delta > 0.0) || !(L1 > 0.0))
    throw invalid_parameter_error("phi: delta and L1 must be positive");
  const int numer = detail::ceil_log2_ratio(L1, delta);
  if (numer < 1)
    throw invalid_parameter_error("phi: requires L1 > delta so the band count is >= 1");
  return detail::phi_banded(lambda, delta, numer, 32.0);
}

int p_max_index(double L1, double delta) {
  if (!(delta > 0.0) || !(L1 > 0.0))
    throw invalid_parameter_error("p_max_index: delta and L1 must be positive");
  return std::max(detail::ceil_log2_ratio(L1, delta), 16);
}

BandConstants band_constants(int p, int p_max) {
  if (p < 1 || p_max < 1) throw invalid_parameter_error("band_constants: need p, p_max >= 1");
  BandConstants b;
  const double pm = static_cast<double>(p_max);
  b.l = (p + 1.0) / (1.0 + std::exp2(5.0 - p)) / pm;
  b.r = (p + 1.0) / (1.0 + std::exp2(4.0 - p)) / pm;
  b.xi = std::sqrt(static_cast<double>(p)) / (std::exp2(0.5 * p) * pm);
  b.lbar = b.l - b.xi;
  return b;
}

NormOperator::NormOperator(EigenDecomp eig, double delta, double L1)
    : eig_(std::move(eig)), delta_(delta), L1_(L1) {
  if (!(delta_ > 0.0) || !(L1_ > 0.0))
    throw invalid_parameter_error("build_norm_operator: delta and L1 must be positive");
  pmax_ = p_max_index(L1_, delta_);

  const double margin = 1e-9 * (3.0 * delta_ + 2.0 * L1_);
  for (int i = 0; i < eig_.lambda.size(); ++i) {
    const double lam = eig_.lambda[i];
    if (lam < -3.0 * delta_ - margin || lam > 2.0 * L1_ + margin)
      throw contract_error("build_norm_operator: eigenvalue " + std::to_string(lam) +
                           " outside [" + std::to_string(-3.0 * delta_) + ", " +
                           std::to_string(2.0 * L1_) + "]");
  }

  const int d = dim();
  phi_.resize(d);
  sqrt_phi_.resize(d);
  for (int i = 0; i < d; ++i) {
    phi_[i] = detail::phi_banded(eig_.lambda[i], delta_, pmax_, 32.0);
    sqrt_phi_[i] = std::sqrt(phi_[i]);
  }

  const double floor = (48.0 / 5.0) * delta_ * pmax_;
  if (min_phi() < floor * (1.0 - 1e-9))
    throw invariant_error("norm operator weight " + std::to_string(min_phi()) +
                          " fell below its lower bound " + std::to_string(floor));
}

Vec NormOperator::apply(const Vec& v) const {
  return eig_.U * (phi_.asDiagonal() * (eig_.U.transpose() * v));
}

Vec NormOperator::apply_inverse(const Vec& v) const {
  return eig_.U * (phi_.cwiseInverse().asDiagonal() * (eig_.U.transpose() * v));
}

Vec NormOperator::apply_sqrt(const Vec& v) const {
  return eig_.U * (sqrt_phi_.asDiagonal() * (eig_.U.transpose() * v));
}

Vec NormOperator::apply_inv_sqrt(const Vec& v) const {
  return eig_.U * (sqrt_phi_.cwiseInverse().asDiagonal() * (eig_.U.transpose() * v));
}

Mat NormOperator::matrix() const {
  return eig_.U * phi_.asDiagonal() * eig_.U.transpose();
}

NormOperator build_norm_operator(const Mat& h, double delta, double L1) {
  return NormOperator(jacobi_eigen(h), delta, L1);
}

NormOperator build_norm_operator(EigenDecomp eig, double delta, double L1) {
  return NormOperator(std::move(eig), delta, L1);
}

Mat project_interval(const EigenDecomp& eig, double a, double b) {
  const int d = static_cast<int>(eig.lambda.size());
  Mat p = Mat::Zero(d, d);
  for (int i = 0; i < d; ++i)
    if (eig.lambda[i] >= a && eig.lambda[i] <= b)
      p += eig.U.col(i) * eig.U.col(i).transpose();
  return p;
}

Mat pinv_outside(const EigenDecomp& eig, double ell, double tol) {
  const int d = static_cast<int>(eig.lambda.size());
  if (tol < 0.0) tol = 1e-12 * eig.lambda.cwiseAbs().maxCoeff();
  Mat p = Mat::Zero(d, d);
  for (int i = 0; i < d; ++i) {
    const double lam = eig.lambda[i];
    if (std::abs(lam) > ell && std::abs(lam) > tol)
      p += eig.U.col(i) * eig.U.col(i).transpose() / lam;
  }
  return p;
}

DkReport davis_kahan_check(const Mat& m, const Mat& mt, double a, double b,
                           double gamma) {
  if (!(gamma > 0.0) || !(a <= b))
    throw invalid_parameter_error("davis_kahan_check: need gamma > 0 and a <= b");
  DkReport rep;
  rep.gamma = gamma;
  rep.xi = operator_norm_sym(m - mt);
  if (!(gamma > rep.xi)) {
    rep.report = "perturbation " + std::to_string(rep.xi) +
                 " is not smaller than the margin " + std::to_string(gamma);
    return rep;
  }
  const EigenDecomp em = jacobi_eigen(m);
  for (int i = 0; i < em.lambda.size(); ++i) {
    const double lam = em.lambda[i];
    const bool low_gap = lam >= a - gamma && lam < a;
    const bool high_gap = lam > b && lam <= b + gamma;
    if (low_gap || high_gap) {
      rep.report = "eigenvalue " + std::to_string(lam) + " lies in the guard zone " +
                   (low_gap ? "below a" : "above b");
      return rep;
    }
  }
  const EigenDecomp emt = jacobi_eigen(mt);
  rep.preconditions_ok = true;
  const Mat p1 = project_interval(em, a, b);
  const Mat p2 = project_interval(emt, a - gamma, b + gamma);
  rep.lhs = operator_norm_sym(p1 - p2);
  rep.rhs = rep.xi / gamma;
  for (int i = 0; i < em.lambda.size(); ++i)
    if (em.lambda[i] >= a && em.lambda[i] <= b) ++rep.count_m;
  for (int i = 0; i < emt.lambda.size(); ++i)
    if (emt.lambda[i] >= a - gamma && emt.lambda[i] <= b + gamma) ++rep.count_mt;
  return rep;
}

}  // namespace critpoint
