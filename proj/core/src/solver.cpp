#include "mvapprox/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include <Eigen/Dense>

#include "mvapprox/orthopoly.hpp"
#include "mvapprox/polynomial.hpp"

namespace mvapprox {

std::string_view to_string(Route route) noexcept {
    switch (route) {
        case Route::AnnihilationSolve: return "annihilation";
        case Route::SmallSystem: return "small_system";
        case Route::OrthoPoly: return "orthopoly";
    }
    return "unknown";
}

namespace {

void check_inputs(const StencilSetting& setting, const NoiseCovariance& cov) {
    if (cov.size() != setting.size()) {
        throw Error(ErrorCode::DimensionMismatch,
                    "covariance is " + std::to_string(cov.size()) + "x" + std::to_string(cov.size()) +
                        " but the grid has " + std::to_string(setting.size()) + " points");
    }
    if (setting.degree_d < 0 || setting.degree_d > static_cast<int>(setting.size())) {
        throw Error(ErrorCode::DegreeOutOfRange, "d = " + std::to_string(setting.degree_d) + " is outside [0, N]");
    }
}

void require_positive_degree(const StencilSetting& setting) {
    if (setting.degree_d < 1) {
        throw Error(ErrorCode::DegreeOutOfRange, "this route needs d >= 1 (reproduction of constants at least)");
    }
}

double kernel_residual_for(const Vector& a, const StencilSetting& setting, const NoiseCovariance& cov) {
    if (setting.degree_d >= static_cast<int>(setting.size())) return 0.0;
    return kernel_check(a, cov, build_annihilator(setting.grid, setting.degree_d));
}

SolveReport make_report(Vector a, const StencilSetting& setting, const NoiseCovariance& cov, Route route,
                        double condition) {
    SolveResiduals residuals;
    residuals.reproduction = reproduction_residual(a, setting);
    residuals.kernel = kernel_residual_for(a, setting, cov);
    const double variance = variance_of(a, cov);
    return SolveReport{Approximant{std::move(a), setting, variance}, route, residuals, condition,
                       !(condition <= kIllConditionedLimit)};
}

}  // namespace

Vector build_a0(const StencilSetting& setting, A0Strategy strategy) {
    const std::size_t n = setting.size();
    const auto d = static_cast<std::size_t>(std::max(setting.degree_d, 0));
    if (d > n) throw Error(ErrorCode::DegreeOutOfRange, "d exceeds the number of nodes");
    Vector a = Vector::Zero(static_cast<Eigen::Index>(n));
    if (d == 0) return a;

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    if (strategy == A0Strategy::NearestNodes) {
        std::stable_sort(order.begin(), order.end(), [&](std::size_t l, std::size_t r) {
            return std::abs(setting.grid[l] - setting.t0) < std::abs(setting.grid[r] - setting.t0);
        });
    }
    order.resize(d);
    std::sort(order.begin(), order.end());

    for (std::size_t k : order) {
        double w = 1.0;
        for (std::size_t m : order) {
            if (m == k) continue;
            w *= (setting.t0 - setting.grid[m]) / (setting.grid[k] - setting.grid[m]);
        }
        a[static_cast<Eigen::Index>(k)] = w;
    }
    return a;
}

SolveReport solve_annihilation(const StencilSetting& setting, const NoiseCovariance& cov) {
    check_inputs(setting, cov);
    const auto n = static_cast<int>(setting.size());
    if (setting.degree_d == 0) {
        // No constraint: the minimiser of a^T Omega_hat a over R^N is a = 0.
        return make_report(Vector::Zero(n), setting, cov, Route::AnnihilationSolve, 1.0);
    }
    if (setting.degree_d == n) {
        // Zero-dimensional feasible set: only the interpolant is left.
        return make_report(build_a0(setting), setting, cov, Route::AnnihilationSolve, 1.0);
    }
    return solve_annihilation(setting, cov, build_annihilator(setting.grid, setting.degree_d), build_a0(setting));
}

SolveReport solve_annihilation(const StencilSetting& setting, const NoiseCovariance& cov,
                               const AnnihilationOperator& op, const Vector& a0) {
    check_inputs(setting, cov);
    const auto n = static_cast<Eigen::Index>(setting.size());
    if (op.matrix().cols() != n || a0.size() != n) {
        throw Error(ErrorCode::DimensionMismatch, "annihilator or a0 does not match the grid");
    }
    if (op.rows() == 0) return make_report(a0, setting, cov, Route::AnnihilationSolve, 1.0);

    // With B = Omega grad^T the normal equations (grad Omega_hat grad^T) beta =
    // -grad Omega_hat a0 are those of min ||Omega a0 + B beta||, solved here by
    // QR so the conditioning of B is not squared.
    const auto omega = cov.omega_factor().triangularView<Eigen::Upper>();
    const Matrix b = omega * op.matrix().transpose();
    const Vector target = -(omega * a0);

    Eigen::ColPivHouseholderQR<Matrix> qr(b);
    if (qr.rank() < b.cols()) {
        throw Error(ErrorCode::SingularSystem, "grad Omega_hat grad^T is numerically singular (rank " +
                                                   std::to_string(qr.rank()) + " < " + std::to_string(b.cols()) + ")");
    }
    const Vector beta = qr.solve(target);
    // cond(grad Omega_hat grad^T) = cond(B)^2, estimated from the pivoted R diagonal.
    const Vector r_diag = qr.matrixQR().diagonal().cwiseAbs();
    const double spread = r_diag.maxCoeff() / r_diag.minCoeff();
    const double condition = spread * spread;

    Vector a = a0 + op.matrix().transpose() * beta;
    SolveReport report = make_report(std::move(a), setting, cov, Route::AnnihilationSolve, condition);
    if (op.degree_d() == setting.degree_d) {
        report.residuals.kernel = kernel_check(report.approximant.coefficients, cov, op);
    }
    return report;
}

SolveReport solve_small_system(const StencilSetting& setting, const NoiseCovariance& cov) {
    check_inputs(setting, cov);
    require_positive_degree(setting);
    const int d = setting.degree_d;
    if (d == static_cast<int>(setting.size())) {
        return make_report(build_a0(setting), setting, cov, Route::SmallSystem, 1.0);
    }

    const std::vector<double> centers = leja_centers(setting.grid, setting.t0, std::max(d - 1, 1));
    const Matrix basis = newton_basis_values(setting.grid, centers, d);
    const Matrix v = cov.solve(basis);

    // Reproduction of each Newton basis polynomial: sum_i a_i B_j(x_i) = B_j(t0),
    // which is 1 for j = 0 and 0 otherwise because the first center is t0.
    const Matrix moments = basis.transpose();
    const Matrix system = moments * v;
    Eigen::FullPivLU<Matrix> lu(system);
    if (lu.rank() < d) {
        throw Error(ErrorCode::SingularSystem, "moment system has rank " + std::to_string(lu.rank()) +
                                                   " < d = " + std::to_string(d));
    }
    const Vector q = lu.solve(Vector::Unit(d, 0));
    const double rcond = lu.rcond();
    const double condition = rcond > 0.0 ? 1.0 / rcond : std::numeric_limits<double>::infinity();
    return make_report(v * q, setting, cov, Route::SmallSystem, condition);
}

SolveReport solve_orthopoly(const StencilSetting& setting, const NoiseCovariance& cov) {
    check_inputs(setting, cov);
    require_positive_degree(setting);
    if (setting.degree_d == static_cast<int>(setting.size())) {
        return make_report(build_a0(setting), setting, cov, Route::OrthoPoly, 1.0);
    }
    const OrthonormalPolyBasis basis = gram_schmidt(setting, cov);
    const PolySample q = build_q(basis, setting.grid, setting.t0);
    // No linear system here beyond the triangular solves; report the
    // squared diagonal spread of Omega, a cheap lower estimate of cond(Omega_hat).
    const Vector diag = cov.omega_factor().diagonal().cwiseAbs();
    const double spread = diag.maxCoeff() / diag.minCoeff();
    return make_report(cov.solve(q.values()), setting, cov, Route::OrthoPoly, spread * spread);
}

SolveReport solve_all_routes(const StencilSetting& setting, const NoiseCovariance& cov) {
    check_inputs(setting, cov);
    require_positive_degree(setting);
    SolveReport canonical = solve_annihilation(setting, cov);
    const SolveReport small = solve_small_system(setting, cov);
    const SolveReport ortho = solve_orthopoly(setting, cov);

    const Vector& a = canonical.approximant.coefficients;
    const Vector& b = small.approximant.coefficients;
    const Vector& c = ortho.approximant.coefficients;
    const double deviation = std::max({(a - b).cwiseAbs().maxCoeff(), (a - c).cwiseAbs().maxCoeff(),
                                       (b - c).cwiseAbs().maxCoeff()});
    canonical.residuals.cross_route = deviation;
    const double limit = kCrossRouteTol * a.cwiseAbs().maxCoeff();
    if (!(deviation <= limit)) {
        std::ostringstream msg;
        msg.precision(6);
        msg << "routes disagree by " << deviation << " (limit " << limit << ")";
        throw Error(ErrorCode::RouteDisagreement, msg.str());
    }
    return canonical;
}

double kernel_check(const Vector& a, const NoiseCovariance& cov, const AnnihilationOperator& op) {
    if (static_cast<std::size_t>(a.size()) != cov.size() || op.grid().size() != cov.size()) {
        throw Error(ErrorCode::DimensionMismatch, "coefficients, covariance and operator sizes differ");
    }
    const Vector omega_a = cov.omega_hat() * a;
    if (op.rows() == 0) return 0.0;
    const double scale = std::max(1.0, omega_a.cwiseAbs().maxCoeff());
    return (op.matrix() * omega_a).cwiseAbs().maxCoeff() / scale;
}

double kernel_check(const Approximant& a, const NoiseCovariance& cov, const AnnihilationOperator& op) {
    return kernel_check(a.coefficients, cov, op);
}

double variance_lower_bound(const NoiseCovariance& cov) {
    const Vector ones = Vector::Ones(static_cast<Eigen::Index>(cov.size()));
    return 1.0 / cov.whiten(ones).squaredNorm();
}

}  // namespace mvapprox
