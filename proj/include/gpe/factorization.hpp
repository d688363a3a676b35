#pragma once

#include <optional>
#include <vector>

#include "gpe/analysis.hpp"
#include "gpe/polynomial.hpp"
#include "gpe/realization.hpp"

namespace gpe::factorization {

/// The value at infinity is singular; the direct factorization is undefined
/// and the caller should use factor_regularized.
class DSingularError : public std::runtime_error {
 public:
  explicit DSingularError(const std::string& msg) : std::runtime_error(msg) {}
};

/// The four invariant subspaces behind a pseudo-spectral factorization:
/// M_plus / M_minus for the state matrix A, the crossed pair for
/// A - B D^{-1} C. Axis eigenvalues contribute half of each even Jordan chain.
struct SpectralSubspaces {
  linalg::SubspaceBasis M_plus, M_minus, M_plus_cross, M_minus_cross;
};

struct PoleZeroReport {
  std::vector<Complex> factor_poles;
  std::vector<Complex> factor_zeros;
  double max_pole_real = 0.0;  // signed, oriented toward the factor's half-plane
  double max_zero_real = 0.0;
};

struct FactorizationResult {
  Side side = Side::right;
  realization::Realization L;
  SpectralSubspaces subspaces;
  ComplexMatrix projection;
  double residual = 0.0;
  std::vector<std::pair<double, double>> epsilon_path;  // (epsilon, factor distance)
};

/// Builds the invariant subspaces from the eigenstructures of A and
/// A - B D^{-1} C, verified against the neutrality condition H M = M-perp and
/// the matching (direct sum) conditions.
SpectralSubspaces spectral_subspaces(const realization::Realization& r,
                                     const analysis::StructureMatrix& h);

/// Pseudo-spectral factorization Phi = L# L of a minimal even generalized
/// positive realization with D > 0. Side `right` places the factor's poles
/// and zeros in the closed left half-plane; `left` mirrors them.
FactorizationResult pseudo_spectral_factor(const realization::Realization& r,
                                           Side side);

/// Factorization of Phi with possibly singular D >= 0 through the shifted
/// family epsilon I + Phi, with a deterministic epsilon schedule and a fixed
/// convergence criterion on sample evaluations.
FactorizationResult factor_regularized(const realization::Realization& r,
                                       Side side);

/// Scalar even polynomial factorization by root assignment: the returned
/// factor reproduces the input as factor * factor# exactly (coefficientwise).
poly::Polynomial factor_scalar_polynomial(const poly::Polynomial& phi, Side side);

/// Residual max |Phi - L# L| over samples plus the factor's pole/zero report.
std::pair<double, PoleZeroReport> verify_factorization(
    const realization::Realization& phi, const realization::Realization& l,
    int samples = 30);

}  // namespace gpe::factorization
