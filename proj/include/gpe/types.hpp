#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace gpe {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

/// Malformed or inconsistent input (dimension mismatch, broken invariant).
class InputError : public std::invalid_argument {
 public:
  explicit InputError(const std::string& msg) : std::invalid_argument(msg) {}
};

/// An iteration or linear solve failed beyond the requested tolerance.
class NumericalFailure : public std::runtime_error {
 public:
  explicit NumericalFailure(const std::string& msg) : std::runtime_error(msg) {}
};

/// Evaluation requested too close to a pole.
class PoleError : public std::runtime_error {
 public:
  PoleError(const std::string& msg, Complex nearest)
      : std::runtime_error(msg), nearest_pole(nearest) {}
  Complex nearest_pole;
};

/// The function is not even (no skew-Hermitian structure matrix exists).
class NotEvenError : public std::runtime_error {
 public:
  explicit NotEvenError(const std::string& msg) : std::runtime_error(msg) {}
};

/// The function fails positivity on the imaginary axis.
class NotGpeError : public std::runtime_error {
 public:
  explicit NotGpeError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Interpolation or matching data admits no solution.
class InfeasibleError : public std::runtime_error {
 public:
  explicit InfeasibleError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Spectral structure outside the supported class (odd axis partial multiplicities).
class UnsupportedStructureError : public std::runtime_error {
 public:
  explicit UnsupportedStructureError(const std::string& msg)
      : std::runtime_error(msg) {}
};

/// Factor side: `right` selects the factor whose poles and zeros lie in the
/// closed left half-plane, `left` the mirrored one.
enum class Side { left, right };

namespace tol {
inline constexpr double kEps = 2.220446049250313e-16;

/// Numerical rank threshold: max_dim * eps * largest singular value.
inline double rank(int max_dim, double sigma_max) {
  return static_cast<double>(max_dim) * kEps * sigma_max;
}

/// Eigenvalue clustering width, relative to the matrix scale.
inline double cluster(double norm_a) { return 1e-8 * (1.0 + norm_a); }

/// Pole proximity rejection radius for resolvent evaluation.
inline double pole(double norm_a) { return 1e-10 * (1.0 + norm_a); }

/// Half-plane classification band around the imaginary axis.
inline double axis(double norm_a) { return 1e-8 * (1.0 + norm_a); }

/// Boundary positivity slack for the generalized-positive-even tests.
inline constexpr double kGpe = 1e-6;
}  // namespace tol

}  // namespace gpe
