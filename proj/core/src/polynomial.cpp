#include "mvapprox/polynomial.hpp"

#include <cmath>
#include <limits>

namespace mvapprox {

double newton_eval(std::span<const double> coeffs, std::span<const double> centers, double x) {
    if (coeffs.empty()) return 0.0;
    const std::size_t m = coeffs.size() - 1;
    double p = coeffs[m];
    for (std::size_t j = m; j-- > 0;) p = p * (x - centers[j]) + coeffs[j];
    return p;
}

std::vector<double> newton_to_monomial(std::span<const double> coeffs,
                                       std::span<const double> centers) {
    if (coeffs.empty()) return {};
    const std::size_t m = coeffs.size() - 1;
    std::vector<double> result{coeffs[m]};
    for (std::size_t j = m; j-- > 0;) {
        // result <- result * (x - c_j) + coeffs[j]
        std::vector<double> next(result.size() + 1, 0.0);
        for (std::size_t k = 0; k < result.size(); ++k) {
            next[k + 1] += result[k];
            next[k] -= centers[j] * result[k];
        }
        next[0] += coeffs[j];
        result = std::move(next);
    }
    return result;
}

std::vector<double> monomial_to_newton(std::span<const double> monomial,
                                       std::span<const double> centers) {
    std::vector<double> q(monomial.begin(), monomial.end());
    std::vector<double> out;
    out.reserve(q.size());
    for (std::size_t j = 0; !q.empty(); ++j) {
        // Synthetic division of q by (x - c_j): remainder is q(c_j).
        // The last step divides a constant, so its center is never used.
        if (q.size() > 1 && j >= centers.size()) {
            throw Error(ErrorCode::DimensionMismatch, "not enough Newton centers for the polynomial degree");
        }
        const double c = j < centers.size() ? centers[j] : 0.0;
        std::vector<double> quotient(q.size() > 1 ? q.size() - 1 : 0);
        double carry = q.back();
        for (std::size_t k = q.size() - 1; k-- > 0;) {
            quotient[k] = carry;
            carry = q[k] + c * carry;
        }
        out.push_back(carry);
        q = std::move(quotient);
    }
    return out;
}

Matrix newton_basis_values(const Grid& grid, std::span<const double> centers, int count) {
    const auto n = static_cast<Eigen::Index>(grid.size());
    Matrix values(n, count);
    for (Eigen::Index i = 0; i < n; ++i) {
        double b = 1.0;
        for (int j = 0; j < count; ++j) {
            values(i, j) = b;
            if (j + 1 < count) b *= grid[static_cast<std::size_t>(i)] - centers[static_cast<std::size_t>(j)];
        }
    }
    return values;
}

std::vector<double> leja_centers(const Grid& grid, double anchor, int count) {
    std::vector<double> centers;
    if (count <= 0) return centers;
    centers.reserve(static_cast<std::size_t>(count));
    centers.push_back(anchor);
    const std::size_t n = grid.size();
    std::vector<bool> used(n, false);
    // Log-distances avoid overflow/underflow of long products.
    std::vector<double> score(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double dist = std::abs(grid[i] - anchor);
        score[i] = dist > 0.0 ? std::log(dist) : -std::numeric_limits<double>::infinity();
    }
    while (static_cast<int>(centers.size()) < count) {
        std::size_t best = n;
        for (std::size_t i = 0; i < n; ++i) {
            if (used[i]) continue;
            if (best == n || score[i] > score[best]) best = i;
        }
        if (best == n) break;
        used[best] = true;
        const double c = grid[best];
        centers.push_back(c);
        for (std::size_t i = 0; i < n; ++i) {
            if (used[i]) continue;
            const double dist = std::abs(grid[i] - c);
            score[i] += dist > 0.0 ? std::log(dist) : -std::numeric_limits<double>::infinity();
        }
    }
    // Fewer distinct nodes than requested: pad with the anchor. Only reached
    // when count exceeds N, which callers reject beforehand.
    while (static_cast<int>(centers.size()) < count) centers.push_back(anchor);
    return centers;
}

PolySample::PolySample(const Grid& grid, std::vector<double> coeffs, std::vector<double> centers)
    : coeffs_(std::move(coeffs)), centers_(std::move(centers)) {
    if (!coeffs_.empty() && centers_.size() + 1 < coeffs_.size()) {
        throw Error(ErrorCode::DimensionMismatch, "Newton basis needs one center per coefficient beyond the first");
    }
    values_.resize(static_cast<Eigen::Index>(grid.size()));
    for (std::size_t i = 0; i < grid.size(); ++i) {
        values_[static_cast<Eigen::Index>(i)] = newton_eval(coeffs_, centers_, grid[i]);
    }
}

}  // namespace mvapprox
