#include "mvapprox/annihilation.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace mvapprox {

AnnihilationOperator build_annihilator(const Grid& grid, int d) {
    const auto n = static_cast<int>(grid.size());
    if (d < 0 || d >= n) {
        throw Error(ErrorCode::DegreeOutOfRange,
                    "annihilator needs 0 <= d < N, got d = " + std::to_string(d) + ", N = " + std::to_string(n));
    }
    Matrix m = Matrix::Zero(n - d, n);
    std::vector<double> log_mag(static_cast<std::size_t>(d) + 1);
    std::vector<double> sign(static_cast<std::size_t>(d) + 1);
    for (int row = 0; row < n - d; ++row) {
        // Weight of x_{row+k} in the d-th divided difference is
        // 1 / prod_{m != k} (x_{row+k} - x_{row+m}); kept in log form so that
        // stretched windows neither overflow nor underflow before scaling.
        for (int k = 0; k <= d; ++k) {
            double lm = 0.0;
            double sg = 1.0;
            for (int j = 0; j <= d; ++j) {
                if (j == k) continue;
                const double diff = grid[static_cast<std::size_t>(row + k)] - grid[static_cast<std::size_t>(row + j)];
                lm -= std::log(std::abs(diff));
                if (diff < 0.0) sg = -sg;
            }
            log_mag[static_cast<std::size_t>(k)] = lm;
            sign[static_cast<std::size_t>(k)] = sg;
        }
        const double top = *std::max_element(log_mag.begin(), log_mag.end());
        for (int k = 0; k <= d; ++k) {
            m(row, row + k) = sign[static_cast<std::size_t>(k)] * std::exp(log_mag[static_cast<std::size_t>(k)] - top);
        }
    }
    return AnnihilationOperator(std::move(m), grid, d);
}

AnnihilationOperator AnnihilationOperator::left_multiplied(const Matrix& transform) const {
    if (transform.rows() != matrix_.rows() || transform.cols() != matrix_.rows()) {
        throw Error(ErrorCode::DimensionMismatch, "transform must be square of size N - d");
    }
    return AnnihilationOperator(transform * matrix_, grid_, degree_d_);
}

double kernel_residual(const AnnihilationOperator& op, const Vector& values) {
    if (static_cast<std::size_t>(values.size()) != op.grid().size()) {
        throw Error(ErrorCode::DimensionMismatch, "sample does not live on the operator's grid");
    }
    if (op.rows() == 0) return 0.0;
    const double scale = std::max(1.0, values.cwiseAbs().maxCoeff());
    return (op.matrix() * values).cwiseAbs().maxCoeff() / scale;
}

double kernel_residual(const AnnihilationOperator& op, const PolySample& p) {
    return kernel_residual(op, p.values());
}

}  // namespace mvapprox
