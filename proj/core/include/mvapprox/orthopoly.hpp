#pragma once

#include <vector>

#include "mvapprox/covariance.hpp"
#include "mvapprox/polynomial.hpp"
#include "mvapprox/types.hpp"

namespace mvapprox {

inline constexpr double kOrthoTol = 1e-10;
/// A Gram-Schmidt pivot smaller than this fraction of the vector's original
/// norm signals near-dependence.
inline constexpr double kBreakdownTol = 1e-13;

/// (P, Q) = P|_x^T Omega_hat^{-1} Q|_x.
double inner_product(const PolySample& p, const PolySample& q, const NoiseCovariance& cov);

/// P^0..P^{d-1}, orthonormal under inner_product, P^s of exact degree s with
/// a positive leading Newton coefficient. All members share one Newton basis
/// whose first center is t0, so P^s(t0) is the constant coefficient.
struct OrthonormalPolyBasis {
    std::vector<PolySample> polys;
    std::vector<double> centers;
    double gram_residual = 0.0;

    int degree_count() const noexcept { return static_cast<int>(polys.size()); }
};

/// Modified Gram-Schmidt with one re-orthogonalization pass over the Newton
/// basis anchored at t0 with Leja-ordered remaining centers.
/// Errors: DegreeOutOfRange (d < 1 or d > N), DimensionMismatch,
/// GramSchmidtBreakdown.
OrthonormalPolyBasis gram_schmidt(const StencilSetting& setting, const NoiseCovariance& cov);

/// Direct evaluation of max |(P^i, P^j) - delta_ij|.
double gram_residual(const OrthonormalPolyBasis& basis, const NoiseCovariance& cov);

/// Q = sum_j P^j(t0) P^j.
PolySample build_q(const OrthonormalPolyBasis& basis, const Grid& grid, double t0);

}  // namespace mvapprox
