#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include <Eigen/SVD>

#include "mvapprox/annihilation.hpp"
#include "mvapprox/error.hpp"
#include "mvapprox/polynomial.hpp"
#include "oracles.hpp"

using namespace mvapprox;

namespace {

Grid stretched_grid(std::size_t n, double ratio, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<double> x(n, 0.0);
    for (std::size_t i = 1; i < n; ++i) x[i] = x[i - 1] + std::pow(ratio, u(rng));
    const double span = x.back();
    for (double& v : x) v = 2.0 * v / span - 1.0;
    return Grid(std::move(x));
}

void expect_rows_proportional(const Matrix& m, const Matrix& expected) {
    ASSERT_EQ(m.rows(), expected.rows());
    ASSERT_EQ(m.cols(), expected.cols());
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        const Vector a = m.row(r).transpose();
        const Vector b = expected.row(r).transpose();
        const double scale = a.dot(b) / b.dot(b);
        EXPECT_LE((a - scale * b).cwiseAbs().maxCoeff(), 1e-14) << "row " << r;
        EXPECT_NEAR(a.cwiseAbs().maxCoeff(), 1.0, 1e-15);
    }
}

}  // namespace

TEST(Annihilator, SecondDifferencesOnEquispacedGrid) {
    const auto op = build_annihilator(Grid({0.0, 1.0, 2.0, 3.0}), 2);
    Matrix expected(2, 4);
    expected << 1, -2, 1, 0, 0, 1, -2, 1;
    expect_rows_proportional(op.matrix(), expected);
}

TEST(Annihilator, FirstDifferencesOnUnevenGrid) {
    const auto op = build_annihilator(Grid({0.0, 1.0, 3.0}), 1);
    Matrix expected(2, 3);
    expected << 1, -1, 0, 0, 1, -1;
    expect_rows_proportional(op.matrix(), expected);
    const PolySample one(Grid({0.0, 1.0, 3.0}), {1.0}, {});
    EXPECT_LE(kernel_residual(op, one), kKernelTol);
}

TEST(Annihilator, DegreeZeroIsIdentity) {
    const auto op = build_annihilator(Grid::uniform(0.0, 0.3, 5), 0);
    EXPECT_TRUE(op.matrix().isIdentity());
}

TEST(Annihilator, DegreeOutOfRange) {
    const Grid g({0.0, 1.0, 2.0});
    EXPECT_THROW(build_annihilator(g, 3), Error);
    EXPECT_THROW(build_annihilator(g, -1), Error);
}

TEST(KernelResidual, Examples) {
    const Grid g({0.0, 1.0, 2.0, 3.0});
    const auto op2 = build_annihilator(g, 2);
    EXPECT_GT(kernel_residual(op2, PolySample(g, {0.0, 0.0, 1.0}, {0.0, 0.0})), 1e-3);
    const Grid h({0.0, 1.0, 3.0});
    EXPECT_LE(kernel_residual(build_annihilator(h, 2), PolySample(h, {0.0, 1.0}, {0.0})), kKernelTol);
    EXPECT_THROW(kernel_residual(op2, Vector::Ones(3)), Error);
}

TEST(AnnihilatorProperty, KernelIsExactlyLowDegreePolynomials) {
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> coef(-1.0, 1.0);
    const std::size_t sizes[] = {3, 8, 16, 33, 64};
    for (std::size_t n : sizes) {
        for (double ratio : {1.0, 10.0, 1e3}) {
            const Grid g = stretched_grid(n, ratio, rng);
            const int dmax = static_cast<int>(std::min<std::size_t>(n - 1, 6));
            for (int d = 1; d <= dmax; ++d) {
                const auto op = build_annihilator(g, d);
                ASSERT_EQ(op.rows(), n - static_cast<std::size_t>(d));
                std::vector<double> centers(g.points().begin(), g.points().end());
                std::vector<double> c(static_cast<std::size_t>(d));
                for (double& v : c) v = coef(rng);
                EXPECT_LE(kernel_residual(op, PolySample(g, c, centers)), kKernelTol)
                    << "n=" << n << " ratio=" << ratio << " d=" << d;

                const Eigen::JacobiSVD<Matrix> svd(op.matrix());
                const Vector sv = svd.singularValues();
                // Full rank always; well conditioned on mildly stretched grids.
                EXPECT_GT(sv.minCoeff(), (ratio <= 10.0 ? 1e-10 : 0.0) * sv.maxCoeff())
                    << "n=" << n << " ratio=" << ratio << " d=" << d;
            }
        }
    }
}

TEST(AnnihilatorProperty, DoesNotOverAnnihilate) {
    std::mt19937_64 rng(99);
    for (std::size_t n : {6U, 10U, 16U}) {
        const Grid g = mvapprox::testing::random_grid(n, 3.0, rng);
        for (int d = 1; d <= 4; ++d) {
            const auto op = build_annihilator(g, d);
            std::vector<double> centers(g.points().begin(), g.points().end());
            std::vector<double> c(static_cast<std::size_t>(d) + 1, 0.0);
            c.back() = 1.0;
            EXPECT_GT(kernel_residual(op, PolySample(g, c, centers)), 1e-6) << "n=" << n << " d=" << d;
        }
    }
}

TEST(Annihilator, LeftMultiplicationKeepsKernel) {
    const Grid g = Grid::uniform(-1.0, 0.25, 9);
    const auto op = build_annihilator(g, 3);
    std::mt19937_64 rng(5);
    std::normal_distribution<double> normal;
    Matrix t(6, 6);
    for (auto& v : t.reshaped()) v = normal(rng);
    t += 6.0 * Matrix::Identity(6, 6);
    const auto mixed = op.left_multiplied(t);
    EXPECT_LE(kernel_residual(mixed, PolySample(g, {0.3, -1.0, 0.7}, {0.0, 0.5})), kKernelTol);
    EXPECT_EQ(mixed.degree_d(), 3);
}
