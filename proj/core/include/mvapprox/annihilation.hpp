#pragma once

#include "mvapprox/polynomial.hpp"
#include "mvapprox/types.hpp"

namespace mvapprox {

inline constexpr double kKernelTol = 1e-10;

/// Full-rank (N-d) x N operator whose kernel is exactly the space of
/// polynomials of degree < d sampled on the grid.
class AnnihilationOperator {
public:
    const Matrix& matrix() const noexcept { return matrix_; }
    const Grid& grid() const noexcept { return grid_; }
    int degree_d() const noexcept { return degree_d_; }
    std::size_t rows() const noexcept { return static_cast<std::size_t>(matrix_.rows()); }

    /// T * matrix() for an invertible (N-d) x (N-d) matrix T. Kernel and row
    /// space are unchanged; invertibility of T is the caller's responsibility.
    AnnihilationOperator left_multiplied(const Matrix& transform) const;

private:
    friend AnnihilationOperator build_annihilator(const Grid& grid, int d);
    AnnihilationOperator(Matrix matrix, Grid grid, int d)
        : matrix_(std::move(matrix)), grid_(std::move(grid)), degree_d_(d) {}

    Matrix matrix_;
    Grid grid_;
    int degree_d_;
};

/// Row j holds the d-th divided-difference weights on x_j..x_{j+d}, scaled
/// so the largest entry magnitude of the row is 1. d = 0 gives the identity.
/// Errors: DegreeOutOfRange unless 0 <= d < N.
AnnihilationOperator build_annihilator(const Grid& grid, int d);

/// ||op * p||_inf / max(1, ||p||_inf).
double kernel_residual(const AnnihilationOperator& op, const Vector& values);
double kernel_residual(const AnnihilationOperator& op, const PolySample& p);

}  // namespace mvapprox
