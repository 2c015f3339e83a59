#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "mvapprox/error.hpp"

namespace mvapprox {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Reproduction residuals above this (relative, see reproduction_residual)
/// mean the coefficients do not reproduce the prescribed polynomial space.
inline constexpr double kReproductionTol = 1e-9;

/// Strictly increasing sequence of abscissae x_1 < ... < x_N, N >= 1.
class Grid {
public:
    /// Throws NonMonotoneGrid on repeated/decreasing/non-finite points and
    /// InvalidArgument on an empty sequence.
    explicit Grid(std::vector<double> points);

    static Grid uniform(double first, double step, std::size_t count);

    std::size_t size() const noexcept { return points_.size(); }
    double operator[](std::size_t i) const { return points_[i]; }
    double front() const { return points_.front(); }
    double back() const { return points_.back(); }
    std::span<const double> points() const noexcept { return points_; }
    Vector as_vector() const;

    /// The stencil t0 + h (x - t0); keeps t0 fixed and scales all distances to it.
    Grid scaled_about(double t0, double h) const;

    /// Sub-grid made of the listed (strictly increasing) indices.
    Grid subset(std::span<const std::size_t> indices) const;

private:
    std::vector<double> points_;
};

/// The (x, t0) setting plus the number d of reproduced monomials: the
/// approximant must reproduce every polynomial of degree < d at t0.
struct StencilSetting {
    Grid grid;
    double t0;
    int degree_d;

    std::size_t size() const noexcept { return grid.size(); }
};

/// Validates 0 <= d <= N and, unless allowed, t0 in [x_1, x_N].
StencilSetting make_setting(Grid grid, double t0, int d, bool allow_extrapolation = false);

/// Point-evaluation approximant Psi(f) = sum_i a_i f_i.
struct Approximant {
    Vector coefficients;
    StencilSetting setting;
    /// ||Omega a||_2^2 under the covariance it was computed for.
    double variance = 0.0;
};

/// max_s |sum_i a_i x_i^s - t0^s| / max(1, |t0|^s, max_i |x_i|^s), s = 0..d-1.
double reproduction_residual(const Vector& a, const StencilSetting& setting);

}  // namespace mvapprox
