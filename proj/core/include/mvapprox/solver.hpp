#pragma once

#include <optional>
#include <string_view>

#include "mvapprox/annihilation.hpp"
#include "mvapprox/covariance.hpp"
#include "mvapprox/types.hpp"

namespace mvapprox {

/// Routes are compared with this tolerance, relative to ||a||_inf.
inline constexpr double kCrossRouteTol = 1e-6;
/// Condition estimates of the (N-d)x(N-d) system above this are flagged.
inline constexpr double kIllConditionedLimit = 1e14;

enum class Route { AnnihilationSolve, SmallSystem, OrthoPoly };

std::string_view to_string(Route route) noexcept;

struct SolveResiduals {
    double reproduction = 0.0;
    /// ||grad_d Omega_hat a||_inf / max(1, ||Omega_hat a||_inf); zero when d = N.
    double kernel = 0.0;
    std::optional<double> cross_route;
};

struct SolveReport {
    Approximant approximant;
    Route route = Route::AnnihilationSolve;
    SolveResiduals residuals;
    /// Reciprocal-condition based estimate for the route's linear system.
    double condition_estimate = 1.0;
    bool ill_conditioned = false;
};

/// How build_a0 picks its d interpolation nodes.
enum class A0Strategy {
    NearestNodes,  ///< the d nodes closest to t0, ties toward the lower index
    LeadingNodes,  ///< x_1..x_d
};

/// Lagrange weights at t0 over d grid nodes, zero elsewhere. Reproduces
/// polynomials of degree < d exactly. d = 0 returns the zero vector.
Vector build_a0(const StencilSetting& setting, A0Strategy strategy = A0Strategy::NearestNodes);

/// a* = a0 + grad^T beta*, with (grad Omega_hat grad^T) beta* = -grad Omega_hat a0.
/// d = 0 yields a* = 0; d = N yields the unique interpolant.
SolveReport solve_annihilation(const StencilSetting& setting, const NoiseCovariance& cov);

/// Same, with a caller-supplied annihilator and feasible starting point.
SolveReport solve_annihilation(const StencilSetting& setting, const NoiseCovariance& cov,
                               const AnnihilationOperator& op, const Vector& a0);

/// a = Omega_hat^{-1} Q|_x with Q's d Newton coefficients fixed by the
/// reproduction conditions. Errors: DegreeOutOfRange (d < 1), SingularSystem.
SolveReport solve_small_system(const StencilSetting& setting, const NoiseCovariance& cov);

/// a = Omega_hat^{-1} Q|_x with Q = sum_j P^j(t0) P^j over an orthonormal basis.
SolveReport solve_orthopoly(const StencilSetting& setting, const NoiseCovariance& cov);

/// Runs every route, records the largest pairwise deviation and returns the
/// annihilation result. Errors: RouteDisagreement above kCrossRouteTol.
SolveReport solve_all_routes(const StencilSetting& setting, const NoiseCovariance& cov);

/// ||op Omega_hat a||_inf / max(1, ||Omega_hat a||_inf). Near zero exactly
/// when a feasible a is the minimum-variance approximant.
double kernel_check(const Vector& a, const NoiseCovariance& cov, const AnnihilationOperator& op);
double kernel_check(const Approximant& a, const NoiseCovariance& cov,
                    const AnnihilationOperator& op);

/// (1^T Omega_hat^{-1} 1)^{-1}: the least variance any constant-reproducing
/// approximant can reach.
double variance_lower_bound(const NoiseCovariance& cov);

}  // namespace mvapprox
