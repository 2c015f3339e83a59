#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "mvapprox/covariance.hpp"
#include "mvapprox/error.hpp"
#include "mvapprox/experiments.hpp"
#include "mvapprox/polynomial.hpp"
#include "mvapprox/types.hpp"
#include "oracles.hpp"

using namespace mvapprox;

namespace {

template <class F>
ErrorCode code_of(F&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    ADD_FAILURE() << "no error thrown";
    return ErrorCode::InvalidArgument;
}

}  // namespace

TEST(Grid, RejectsRepeatedAndEmpty) {
    EXPECT_EQ(code_of([] { Grid({0.0, 0.0, 1.0}); }), ErrorCode::NonMonotoneGrid);
    EXPECT_EQ(code_of([] { Grid({1.0, 0.0}); }), ErrorCode::NonMonotoneGrid);
    EXPECT_EQ(code_of([] { Grid({0.0, NAN}); }), ErrorCode::NonMonotoneGrid);
    EXPECT_EQ(code_of([] { Grid(std::vector<double>{}); }), ErrorCode::InvalidArgument);
}

TEST(Grid, ScaledAboutKeepsCenter) {
    const Grid g = Grid::uniform(-1.0, 1.0, 3).scaled_about(0.5, 2.0);
    EXPECT_DOUBLE_EQ(g[0], -2.5);
    EXPECT_DOUBLE_EQ(g[1], -0.5);
    EXPECT_DOUBLE_EQ(g[2], 1.5);
    const std::size_t idx[] = {0, 2};
    EXPECT_EQ(g.subset(idx).size(), 2U);
}

TEST(Setting, StudyGridIsValid) {
    const StencilSetting s = make_setting(study_grid(), 0.0, 2);
    EXPECT_EQ(s.size(), 16U);
    EXPECT_DOUBLE_EQ(s.grid.front(), -7.0);
    EXPECT_DOUBLE_EQ(s.grid.back(), 8.0);
}

TEST(Setting, Guards) {
    EXPECT_EQ(code_of([] { make_setting(Grid({0.0, 1.0}), 2.0, 1); }), ErrorCode::ExtrapolationNotAllowed);
    EXPECT_NO_THROW(make_setting(Grid({0.0, 1.0}), 2.0, 1, true));
    EXPECT_EQ(code_of([] { make_setting(Grid({0.0, 1.0}), 0.5, 3); }), ErrorCode::DegreeOutOfRange);
    EXPECT_EQ(code_of([] { make_setting(Grid({0.0, 1.0}), 0.5, -1); }), ErrorCode::DegreeOutOfRange);
    EXPECT_NO_THROW(make_setting(Grid({0.0, 1.0}), 0.5, 0));
    EXPECT_NO_THROW(make_setting(Grid({0.0, 1.0}), 0.5, 2));
}

TEST(Setting, ReproductionResidualOfLagrangeWeights) {
    const StencilSetting s = make_setting(Grid({0.0, 1.0}), 0.25, 2);
    Vector a(2);
    a << 0.75, 0.25;
    EXPECT_LE(reproduction_residual(a, s), 1e-15);
    a << 0.7, 0.3;
    EXPECT_GT(reproduction_residual(a, s), 1e-3);
}

TEST(Covariance, IdentityAndDiagonalFactors) {
    const NoiseCovariance id = make_covariance(Matrix::Identity(16, 16));
    EXPECT_TRUE(id.omega_factor().isApprox(Matrix::Identity(16, 16)));
    Matrix d = Matrix::Zero(2, 2);
    d(0, 0) = 1.0;
    d(1, 1) = 4.0;
    const NoiseCovariance c = make_covariance(d);
    EXPECT_DOUBLE_EQ(c.omega_factor()(0, 0), 1.0);
    EXPECT_DOUBLE_EQ(c.omega_factor()(1, 1), 2.0);
    EXPECT_DOUBLE_EQ(c.omega_factor()(0, 1), 0.0);
}

TEST(Covariance, Errors) {
    EXPECT_EQ(code_of([] { make_covariance(experiment2_matrix(0.0)); }), ErrorCode::NotPositiveDefinite);
    Matrix asym = Matrix::Identity(2, 2);
    asym(0, 1) = 0.1;
    EXPECT_EQ(code_of([&] { make_covariance(asym); }), ErrorCode::NotSymmetric);
    EXPECT_EQ(code_of([] { make_covariance(Matrix::Identity(2, 3)); }), ErrorCode::DimensionMismatch);
    Matrix nan = Matrix::Identity(2, 2);
    nan(1, 1) = NAN;
    EXPECT_EQ(code_of([&] { make_covariance(nan); }), ErrorCode::InvalidArgument);
    Matrix neg = -Matrix::Identity(2, 2);
    EXPECT_EQ(code_of([&] { make_covariance(neg); }), ErrorCode::NotPositiveDefinite);
}

TEST(Covariance, Experiment2AcceptedDownToTinyEpsilon) {
    EXPECT_NO_THROW(make_covariance(experiment2_matrix(1e-10)));
}

TEST(Covariance, VarianceExamples) {
    Vector a(2);
    a << 0.5, 0.5;
    EXPECT_DOUBLE_EQ(variance_of(a, identity_covariance(2)), 0.5);
    Vector u = Vector::Constant(16, 1.0 / 16.0);
    EXPECT_NEAR(variance_of(u, identity_covariance(16)), 1.0 / 16.0, 1e-16);
    Matrix d = Matrix::Zero(2, 2);
    d(0, 0) = 1.0;
    d(1, 1) = 4.0;
    a << 0.8, 0.2;
    const double oracle = mvapprox::testing::quadratic_form(a, d);
    EXPECT_NEAR(oracle, 0.8, 1e-15);
    EXPECT_NEAR(variance_of(a, make_covariance(d)), oracle, 1e-15);
    EXPECT_EQ(code_of([&] { variance_of(Vector::Ones(3), make_covariance(d)); }), ErrorCode::DimensionMismatch);
}

TEST(CovarianceProperty, CholeskyRoundTripScalingAndDefiniteness) {
    std::mt19937_64 rng(11);
    std::normal_distribution<double> normal;
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 1 + static_cast<std::size_t>(trial % 20);
        const Matrix m = mvapprox::testing::random_spd(n, 1e8, rng, std::pow(10.0, trial % 7 - 3));
        const NoiseCovariance cov = make_covariance(m);
        const Matrix& f = cov.omega_factor();
        EXPECT_TRUE(f.isUpperTriangular());
        const double err = (f.transpose() * f - m).cwiseAbs().maxCoeff();
        EXPECT_LE(err, 1e-12 * m.cwiseAbs().maxCoeff());

        Vector a(static_cast<Eigen::Index>(n));
        for (auto& v : a) v = normal(rng);
        const double base = variance_of(a, cov);
        EXPECT_GT(base, 0.0);
        EXPECT_NEAR(base, mvapprox::testing::quadratic_form(a, m), 1e-10 * base);
        for (double lambda : {1e-6, 3.0, 1e6}) {
            EXPECT_NEAR(variance_of(a, cov.scaled(lambda)), lambda * base, 1e-12 * lambda * base);
        }
        EXPECT_EQ(variance_of(Vector::Zero(a.size()), cov), 0.0);

        const Vector w = cov.solve(a);
        EXPECT_LE((m * w - a).cwiseAbs().maxCoeff(), 1e-6 * a.cwiseAbs().maxCoeff());
        EXPECT_NEAR(cov.whiten(a).squaredNorm(), a.dot(w), 1e-8 * std::abs(a.dot(w)));
    }
}

TEST(Covariance, PrincipalSubmatrix) {
    std::mt19937_64 rng(3);
    const Matrix m = mvapprox::testing::random_spd(6, 100.0, rng);
    const NoiseCovariance cov = make_covariance(m);
    const std::size_t idx[] = {1, 3, 4};
    const NoiseCovariance sub = cov.principal(idx);
    ASSERT_EQ(sub.size(), 3U);
    EXPECT_DOUBLE_EQ(sub.omega_hat()(0, 2), m(1, 4));
    EXPECT_DOUBLE_EQ(sub.omega_hat()(2, 2), m(4, 4));
}

TEST(Polynomial, NewtonMonomialRoundTrip) {
    const std::vector<double> centers{0.25, -1.0, 2.0, 0.5};
    const std::vector<double> newton{1.0, -2.0, 0.5, 3.0, -0.75};
    const auto mono = newton_to_monomial(newton, centers);
    ASSERT_EQ(mono.size(), 5U);
    for (double x : {-2.0, 0.0, 0.3, 1.7}) {
        double m = 0.0;
        for (std::size_t k = mono.size(); k-- > 0;) m = m * x + mono[k];
        EXPECT_NEAR(m, newton_eval(newton, centers, x), 1e-12);
    }
    const auto back = monomial_to_newton(mono, centers);
    ASSERT_EQ(back.size(), newton.size());
    for (std::size_t i = 0; i < back.size(); ++i) EXPECT_NEAR(back[i], newton[i], 1e-12);
    const std::vector<double> few{0.0};
    EXPECT_EQ(code_of([&] { monomial_to_newton(mono, few); }), ErrorCode::DimensionMismatch);
}

TEST(Polynomial, LejaCentersStartAtAnchorAndAreDistinct) {
    const Grid g = study_grid();
    const auto c = leja_centers(g, 0.25, 6);
    ASSERT_EQ(c.size(), 6U);
    EXPECT_DOUBLE_EQ(c[0], 0.25);
    EXPECT_DOUBLE_EQ(c[1], 8.0);
    EXPECT_DOUBLE_EQ(c[2], -7.0);
    for (std::size_t i = 1; i < c.size(); ++i)
        for (std::size_t j = i + 1; j < c.size(); ++j) EXPECT_NE(c[i], c[j]);
}

TEST(Polynomial, SampleValuesMatchEvaluation) {
    const Grid g = Grid::uniform(-1.0, 0.5, 5);
    const PolySample p(g, {1.0, 2.0, -1.0}, {0.0, 1.0});
    for (std::size_t i = 0; i < g.size(); ++i) {
        const double x = g[i];
        EXPECT_NEAR(p.values()[static_cast<Eigen::Index>(i)], 1.0 + 2.0 * x - x * (x - 1.0), 1e-15);
    }
    EXPECT_EQ(p.nominal_degree(), 2);
    EXPECT_EQ(code_of([&] { PolySample(g, {1.0, 2.0, 3.0}, {0.0}); }), ErrorCode::DimensionMismatch);
}
