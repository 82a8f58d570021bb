#pragma once

#include <Eigen/Core>
#include <stdexcept>
#include <string>

namespace critpoint {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

// Error taxonomy. CLI maps argument/config errors to exit code 2 and
// run-time failures to exit code 3.
struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Bad user-supplied argument (dimension mismatch, unknown family name, ...).
struct argument_error : error {
  using error::error;
};

// Parameter outside its documented domain (delta <= 0 for FD, ell < 2*delta, ...).
struct invalid_parameter_error : error {
  using error::error;
};

// Caller violated a documented precondition of an internal contract.
struct contract_error : error {
  using error::error;
};

// eps (or another quantity) outside the admissible analytical regime.
struct regime_error : error {
  using error::error;
};

// Oracle mode cannot be served (e.g. exact mode without an analytic Hessian).
struct unsupported_mode_error : error {
  using error::error;
};

// Breakdown in numerical linear algebra (non-convergent eigensolver, NaN).
struct numeric_error : error {
  using error::error;
};

// A run-time invariant the solver guarantees by construction failed anyway.
// Indicates a bug or silently corrupted state, never bad user input.
struct invariant_error : error {
  using error::error;
};

// Config-file or CLI-flag problem.
struct config_error : error {
  using error::error;
};

}  // namespace critpoint
