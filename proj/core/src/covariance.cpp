#include "mvapprox/covariance.hpp"

#include <cmath>
#include <sstream>

#include <Eigen/Dense>

namespace mvapprox {

namespace {

// Upper-triangular R with A = R^T R. Every pivot (the squared diagonal of R
// before the square root) must exceed kPivotTol * max(diag A).
Matrix upper_cholesky(const Matrix& a) {
    const Eigen::Index n = a.rows();
    const double max_diag = a.diagonal().maxCoeff();
    if (!(max_diag > 0.0)) {
        throw Error(ErrorCode::NotPositiveDefinite, "largest diagonal entry is not positive");
    }
    const double floor = kPivotTol * max_diag;
    Matrix r = Matrix::Zero(n, n);
    for (Eigen::Index k = 0; k < n; ++k) {
        double pivot = a(k, k);
        for (Eigen::Index i = 0; i < k; ++i) pivot -= r(i, k) * r(i, k);
        if (!(pivot > floor)) {
            std::ostringstream msg;
            msg.precision(6);
            msg << "pivot " << k << " = " << pivot << " is not above " << floor;
            throw Error(ErrorCode::NotPositiveDefinite, msg.str());
        }
        const double rkk = std::sqrt(pivot);
        r(k, k) = rkk;
        for (Eigen::Index j = k + 1; j < n; ++j) {
            double s = a(k, j);
            for (Eigen::Index i = 0; i < k; ++i) s -= r(i, k) * r(i, j);
            r(k, j) = s / rkk;
        }
    }
    return r;
}

}  // namespace

NoiseCovariance make_covariance(const Matrix& matrix) {
    if (matrix.rows() == 0 || matrix.rows() != matrix.cols()) {
        throw Error(ErrorCode::DimensionMismatch,
                    "covariance must be square and non-empty, got " + std::to_string(matrix.rows()) +
                        "x" + std::to_string(matrix.cols()));
    }
    if (!matrix.allFinite()) throw Error(ErrorCode::InvalidArgument, "covariance has non-finite entries");

    const double max_entry = matrix.cwiseAbs().maxCoeff();
    const double asymmetry = (matrix - matrix.transpose()).cwiseAbs().maxCoeff();
    if (asymmetry > kSymmetryTol * max_entry) {
        std::ostringstream msg;
        msg.precision(6);
        msg << "max |A - A^T| = " << asymmetry << " exceeds " << kSymmetryTol * max_entry;
        throw Error(ErrorCode::NotSymmetric, msg.str());
    }
    Matrix factor = upper_cholesky(matrix);
    return NoiseCovariance(matrix, std::move(factor));
}

NoiseCovariance identity_covariance(std::size_t n) {
    const auto size = static_cast<Eigen::Index>(n);
    return make_covariance(Matrix::Identity(size, size));
}

Vector NoiseCovariance::whiten(const Vector& v) const {
    if (v.size() != factor_.rows()) throw Error(ErrorCode::DimensionMismatch, "vector does not match covariance");
    return factor_.transpose().triangularView<Eigen::Lower>().solve(v);
}

Vector NoiseCovariance::solve(const Vector& v) const {
    return factor_.triangularView<Eigen::Upper>().solve(whiten(v));
}

Matrix NoiseCovariance::solve(const Matrix& v) const {
    if (v.rows() != factor_.rows()) throw Error(ErrorCode::DimensionMismatch, "matrix does not match covariance");
    const Matrix w = factor_.transpose().triangularView<Eigen::Lower>().solve(v);
    return factor_.triangularView<Eigen::Upper>().solve(w);
}

Vector NoiseCovariance::color(const Vector& z) const {
    if (z.size() != factor_.rows()) throw Error(ErrorCode::DimensionMismatch, "vector does not match covariance");
    return factor_.transpose().triangularView<Eigen::Lower>() * z;
}

NoiseCovariance NoiseCovariance::scaled(double lambda) const {
    if (!(lambda > 0.0) || !std::isfinite(lambda)) {
        throw Error(ErrorCode::InvalidArgument, "covariance scale must be positive and finite");
    }
    return NoiseCovariance(omega_hat_ * lambda, factor_ * std::sqrt(lambda));
}

NoiseCovariance NoiseCovariance::principal(std::span<const std::size_t> indices) const {
    const auto m = static_cast<Eigen::Index>(indices.size());
    Matrix sub(m, m);
    for (Eigen::Index p = 0; p < m; ++p) {
        for (Eigen::Index q = 0; q < m; ++q) {
            const auto i = static_cast<Eigen::Index>(indices[static_cast<std::size_t>(p)]);
            const auto j = static_cast<Eigen::Index>(indices[static_cast<std::size_t>(q)]);
            if (i >= omega_hat_.rows() || j >= omega_hat_.rows()) {
                throw Error(ErrorCode::DimensionMismatch, "principal index out of range");
            }
            sub(p, q) = omega_hat_(i, j);
        }
    }
    return make_covariance(sub);
}

double variance_of(const Vector& a, const NoiseCovariance& cov) {
    if (static_cast<std::size_t>(a.size()) != cov.size()) {
        throw Error(ErrorCode::DimensionMismatch,
                    "coefficient length " + std::to_string(a.size()) + " vs covariance size " +
                        std::to_string(cov.size()));
    }
    return (cov.omega_factor().triangularView<Eigen::Upper>() * a).squaredNorm();
}

}  // namespace mvapprox
