// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <string>

namespace qsm {

using cxd = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;
using RVec = Eigen::VectorXd;
using Index = Eigen::Index;

// Numerical tolerances used by type invariants and checkers.
// Kept in one place so tests and library agree.
namespace tol {
inline constexpr double state_norm = 1e-12;     // pure-state normalization
inline constexpr double density = 1e-10;        // Hermiticity / trace / PSD drift
inline constexpr double isometry = 1e-10;       // V^dag V = I
inline constexpr double completeness = 1e-9;    // instrument sum, probability sum
inline constexpr double entropy_clip = 1e-12;   // eigenvalue clip inside entropy
inline constexpr double inequality = 1e-9;      // slack for entropy inequalities
inline constexpr double uhlmann = 1e-8;         // decoder-vs-marginal fidelity agreement
inline constexpr double outcome_floor = 1e-14;  // measurement outcomes below -> failure bucket
}  // namespace tol

// Thrown when a requested computation would exceed the dense-dimension cap.
class cap_exceeded : public std::runtime_error {
 public:
  explicit cap_exceeded(const std::string& what) : std::runtime_error(what) {}
};

// Thrown on malformed inputs (bad labels, dimension mismatch, invalid params).
class invalid_input : public std::invalid_argument {
 public:
  explicit invalid_input(const std::string& what) : std::invalid_argument(what) {}
};

// Thrown when a run produces numbers that violate a certified property
// (e.g. a typical subspace carrying less than half the weight). Distinct from
// bad input so callers can map it to its own exit status.
class property_violation : public std::runtime_error {
 public:
  explicit property_violation(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace qsm
