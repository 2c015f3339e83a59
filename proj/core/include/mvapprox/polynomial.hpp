#pragma once

#include <span>
#include <vector>

#include "mvapprox/types.hpp"

namespace mvapprox {

// Polynomials are stored in a Newton basis
//   B_0 = 1,  B_j(x) = (x - c_0)(x - c_1)...(x - c_{j-1}),
// with c_0 = t0 in every basis built by this library. Monomials on the
// grids of interest are badly conditioned; conversions are provided below.

/// Evaluates sum_j coeffs[j] B_j(x). Needs centers.size() >= coeffs.size() - 1.
double newton_eval(std::span<const double> coeffs, std::span<const double> centers, double x);

/// Newton coefficients -> monomial coefficients (ascending powers).
std::vector<double> newton_to_monomial(std::span<const double> coeffs,
                                       std::span<const double> centers);

/// Monomial coefficients (ascending powers) -> Newton coefficients.
std::vector<double> monomial_to_newton(std::span<const double> monomial,
                                       std::span<const double> centers);

/// Values of B_j on every grid point, one column per basis polynomial.
Matrix newton_basis_values(const Grid& grid, std::span<const double> centers, int count);

/// Centers for a Newton basis of `count` polynomials: `anchor` first, then
/// grid nodes in Leja order (each maximises the product of distances to the
/// centers already chosen; ties go to the lower index).
std::vector<double> leja_centers(const Grid& grid, double anchor, int count);

/// A polynomial together with its samples P|_x on a grid.
class PolySample {
public:
    /// Throws DimensionMismatch if there are too few centers.
    PolySample(const Grid& grid, std::vector<double> coeffs, std::vector<double> centers);

    const Vector& values() const noexcept { return values_; }
    std::span<const double> coeffs() const noexcept { return coeffs_; }
    std::span<const double> centers() const noexcept { return centers_; }
    std::size_t size() const noexcept { return static_cast<std::size_t>(values_.size()); }

    double operator()(double x) const { return newton_eval(coeffs_, centers_, x); }

    /// Coefficient count minus one, i.e. the nominal degree.
    int nominal_degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }

private:
    std::vector<double> coeffs_;
    std::vector<double> centers_;
    Vector values_;
};

}  // namespace mvapprox
