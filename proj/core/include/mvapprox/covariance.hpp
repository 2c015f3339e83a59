#pragma once

#include <span>

#include "mvapprox/types.hpp"

namespace mvapprox {

/// Cholesky pivots must exceed this fraction of the largest diagonal entry.
inline constexpr double kPivotTol = 1e-12;
/// Allowed asymmetry, relative to the largest entry magnitude.
inline constexpr double kSymmetryTol = 1e-12;

/// SPD noise covariance Omega_hat together with its upper-triangular
/// factor Omega, Omega_hat = Omega^T Omega. Immutable once built.
class NoiseCovariance {
public:
    std::size_t size() const noexcept { return static_cast<std::size_t>(omega_hat_.rows()); }
    const Matrix& omega_hat() const noexcept { return omega_hat_; }
    const Matrix& omega_factor() const noexcept { return factor_; }

    /// Omega_hat^{-1} v through two triangular solves.
    Vector solve(const Vector& v) const;
    Matrix solve(const Matrix& v) const;

    /// Omega^{-T} v. Whitens v so that v^T Omega_hat^{-1} w = <whiten(v), whiten(w)>.
    Vector whiten(const Vector& v) const;

    /// Omega^T z; maps standard normal z onto noise with covariance Omega_hat.
    Vector color(const Vector& z) const;

    NoiseCovariance scaled(double lambda) const;

    /// Principal submatrix on the listed indices (repeats not allowed).
    NoiseCovariance principal(std::span<const std::size_t> indices) const;

private:
    friend NoiseCovariance make_covariance(const Matrix& matrix);
    NoiseCovariance(Matrix omega_hat, Matrix factor)
        : omega_hat_(std::move(omega_hat)), factor_(std::move(factor)) {}

    Matrix omega_hat_;
    Matrix factor_;
};

/// Validates symmetry and positive definiteness and factors the matrix.
/// Errors: DimensionMismatch (not square / empty), InvalidArgument (non-finite),
/// NotSymmetric, NotPositiveDefinite.
NoiseCovariance make_covariance(const Matrix& matrix);

NoiseCovariance identity_covariance(std::size_t n);

/// ||Omega a||_2^2 = a^T Omega_hat a.
double variance_of(const Vector& a, const NoiseCovariance& cov);

}  // namespace mvapprox
