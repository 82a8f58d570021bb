#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "critpoint/types.hpp"

namespace critpoint {

// Deterministic RNG: mt19937_64 supplies the bit stream and all value-level
// transforms are spelled out here, so results are identical across standard
// libraries.  (std::uniform_real_distribution and std::normal_distribution
// are not byte-portable.)
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t raw() { return engine_(); }

  // Uniform in [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double a, double b) { return a + (b - a) * uniform01(); }

  // Log-uniform over [a, b], a > 0.
  double uniform_log(double a, double b) {
    return std::exp(uniform(std::log(a), std::log(b)));
  }

  // Uniform integer in [0, n).
  std::uint64_t uniform_int(std::uint64_t n) {
    if (n == 0) throw argument_error("uniform_int: n must be positive");
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t x = engine_();
    while (x >= limit) x = engine_();
    return x % n;
  }

  // Standard normal via Box-Muller; caches the paired deviate.
  double normal() {
    if (have_cached_) {
      have_cached_ = false;
      return cached_;
    }
    double u1 = uniform01();
    while (u1 <= 0.0) u1 = uniform01();
    const double u2 = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * M_PI * u2;
    cached_ = r * std::sin(a);
    have_cached_ = true;
    return r * std::cos(a);
  }

  Vec gaussian_vector(int d) {
    Vec v(d);
    for (int i = 0; i < d; ++i) v[i] = normal();
    return v;
  }

  Vec unit_vector(int d) {
    Vec v = gaussian_vector(d);
    double n = v.norm();
    while (n < 1e-300) {
      v = gaussian_vector(d);
      n = v.norm();
    }
    return v / n;
  }

  // Symmetric matrix with independent N(0,1) entries on and above the
  // diagonal (up-to-scaling GOE draw).
  Mat gaussian_symmetric(int d) {
    Mat m(d, d);
    for (int i = 0; i < d; ++i) {
      m(i, i) = normal();
      for (int j = i + 1; j < d; ++j) m(i, j) = m(j, i) = normal();
    }
    return m;
  }

  // Haar-ish orthogonal matrix: QR of a Gaussian matrix with the sign of
  // each R diagonal entry folded into Q, which makes the draw unique.
  Mat random_orthogonal(int d);

 private:
  std::mt19937_64 engine_;
  bool have_cached_ = false;
  double cached_ = 0.0;
};

}  // namespace critpoint
