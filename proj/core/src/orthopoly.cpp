#include "mvapprox/orthopoly.hpp"

#include <algorithm>
#include <cmath>

namespace mvapprox {

double inner_product(const PolySample& p, const PolySample& q, const NoiseCovariance& cov) {
    if (p.size() != cov.size() || q.size() != cov.size()) {
        throw Error(ErrorCode::DimensionMismatch, "samples do not match covariance size");
    }
    return p.values().dot(cov.solve(q.values()));
}

OrthonormalPolyBasis gram_schmidt(const StencilSetting& setting, const NoiseCovariance& cov) {
    const int d = setting.degree_d;
    const auto n = static_cast<int>(setting.size());
    if (d < 1 || d > n) {
        throw Error(ErrorCode::DegreeOutOfRange,
                    "orthonormal basis needs 1 <= d <= N, got d = " + std::to_string(d));
    }
    if (cov.size() != setting.size()) throw Error(ErrorCode::DimensionMismatch, "covariance does not match grid");

    std::vector<double> centers = leja_centers(setting.grid, setting.t0, std::max(d - 1, 1));
    const Matrix basis = newton_basis_values(setting.grid, centers, d);

    // Work on whitened samples: (P, Q) becomes the Euclidean product of
    // Omega^{-T} P|_x and Omega^{-T} Q|_x. coeff(:, s) tracks P^s in the
    // Newton basis alongside its whitened samples w(:, s).
    Matrix w(n, d);
    Matrix coeff = Matrix::Zero(d, d);
    for (int s = 0; s < d; ++s) {
        Vector v = cov.whiten(basis.col(s));
        Vector c = Vector::Unit(d, s);
        const double original = v.norm();
        for (int pass = 0; pass < 2; ++pass) {
            for (int j = 0; j < s; ++j) {
                const double r = w.col(j).dot(v);
                v -= r * w.col(j);
                c -= r * coeff.col(j);
            }
        }
        const double norm = v.norm();
        if (!(norm > kBreakdownTol * original)) {
            throw Error(ErrorCode::GramSchmidtBreakdown,
                        "degree " + std::to_string(s) + " direction collapsed during orthogonalization");
        }
        double inv = 1.0 / norm;
        if (c[s] < 0.0) inv = -inv;
        w.col(s) = v * inv;
        coeff.col(s) = c * inv;
    }

    OrthonormalPolyBasis out;
    out.centers = centers;
    out.polys.reserve(static_cast<std::size_t>(d));
    for (int s = 0; s < d; ++s) {
        std::vector<double> cs(coeff.col(s).data(), coeff.col(s).data() + s + 1);
        out.polys.emplace_back(setting.grid, std::move(cs), centers);
    }
    out.gram_residual = gram_residual(out, cov);
    return out;
}

double gram_residual(const OrthonormalPolyBasis& basis, const NoiseCovariance& cov) {
    double worst = 0.0;
    const auto d = basis.polys.size();
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = i; j < d; ++j) {
            const double g = inner_product(basis.polys[i], basis.polys[j], cov);
            worst = std::max(worst, std::abs(g - (i == j ? 1.0 : 0.0)));
        }
    }
    return worst;
}

PolySample build_q(const OrthonormalPolyBasis& basis, const Grid& grid, double t0) {
    const std::size_t d = basis.polys.size();
    std::vector<double> q(d, 0.0);
    for (const PolySample& p : basis.polys) {
        const double at_t0 = p(t0);
        const auto cs = p.coeffs();
        for (std::size_t k = 0; k < cs.size(); ++k) q[k] += at_t0 * cs[k];
    }
    return PolySample(grid, std::move(q), basis.centers);
}

}  // namespace mvapprox
