#include "mvapprox/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "mvapprox/parallel.hpp"
#include "mvapprox/solver.hpp"
#include "mvapprox/subdivision.hpp"

namespace mvapprox {

namespace {

constexpr std::size_t kStudySize = 16;
constexpr double kStarEpsilon = 1e-10;

[[noreturn]] void epsilon_error(int experiment, double epsilon) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "epsilon = " << epsilon << " is outside the range of experiment " << experiment;
    throw Error(ErrorCode::EpsilonOutOfRange, msg.str());
}

NoiseCovariance cov_for(int experiment, double epsilon) {
    switch (experiment) {
        case 1: return cov_experiment1(epsilon);
        case 2: return cov_experiment2(epsilon);
        default: throw Error(ErrorCode::InvalidArgument, "unknown experiment " + std::to_string(experiment));
    }
}

}  // namespace

Grid study_grid() { return Grid::uniform(-7.0, 1.0, kStudySize); }

Matrix experiment2_matrix(double epsilon) {
    Matrix block(4, 4);
    // clang-format off
    block << 1.0,            -1.0 + epsilon,  0.0,      0.0,
             -1.0 + epsilon,  1.0,           -epsilon,  0.0,
             0.0,            -epsilon,        1.0,     -epsilon,
             0.0,             0.0,           -epsilon,  1.0;
    // clang-format on
    Matrix full = Matrix::Zero(kStudySize, kStudySize);
    for (Eigen::Index k = 0; k < static_cast<Eigen::Index>(kStudySize); k += 4) full.block(k, k, 4, 4) = block;
    return full;
}

bool epsilon_in_range(int experiment, double epsilon) noexcept {
    if (!std::isfinite(epsilon)) return false;
    if (experiment == 1) return epsilon > 0.0 && epsilon < 1.0;
    if (experiment == 2) return epsilon > 0.0 && epsilon < 0.1;
    return false;
}

NoiseCovariance cov_experiment1(double epsilon) {
    if (!epsilon_in_range(1, epsilon)) epsilon_error(1, epsilon);
    const Grid grid = study_grid();
    Matrix m = Matrix::Zero(kStudySize, kStudySize);
    for (std::size_t i = 0; i < kStudySize; ++i) {
        m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = grid[i] <= 0.0 ? epsilon : 1.0;
    }
    return make_covariance(m);
}

NoiseCovariance cov_experiment2(double epsilon) {
    // epsilon = 0 is let through so the singular block surfaces as NotPositiveDefinite.
    if (!(std::isfinite(epsilon) && epsilon >= 0.0 && epsilon < 0.1)) epsilon_error(2, epsilon);
    return make_covariance(experiment2_matrix(epsilon));
}

std::vector<double> default_epsilons(int experiment) {
    double decades = 0.0;
    if (experiment == 1) {
        decades = 6.0;  // 1e-6 .. just below 1
    } else if (experiment == 2) {
        decades = 5.0;  // 1e-6 .. just below 0.1
    } else {
        throw Error(ErrorCode::InvalidArgument, "unknown experiment " + std::to_string(experiment));
    }
    std::vector<double> eps(40);
    for (int k = 0; k < 40; ++k) eps[static_cast<std::size_t>(k)] = std::pow(10.0, -6.0 + decades * k / 40.0);
    return eps;
}

std::vector<double> default_t0s() { return {0.0, 0.25, 0.5}; }

std::vector<int> default_dprimes() { return {0, 1, 2, 3}; }

double rho(int experiment, double epsilon, double t0, int dprime) {
    const NoiseCovariance cov = cov_for(experiment, epsilon);
    const StencilSetting setting = make_setting(study_grid(), t0, dprime + 1);
    const Vector best = solve_annihilation(setting, cov).approximant.coefficients;
    const Vector uniform = Vector::Constant(kStudySize, 1.0 / kStudySize);
    return variance_of(best, cov) / variance_of(uniform, cov);
}

std::vector<RhoRecord> rho_sweep(int experiment, std::vector<double> epsilons, const std::vector<double>& t0s,
                                 const std::vector<int>& dprimes) {
    if (experiment != 1 && experiment != 2) {
        throw Error(ErrorCode::InvalidArgument, "unknown experiment " + std::to_string(experiment));
    }
    std::sort(epsilons.begin(), epsilons.end());
    const std::size_t per_eps = t0s.size() * dprimes.size();
    std::vector<RhoRecord> out(epsilons.size() * per_eps);
    parallel_for(epsilons.size(), [&](std::size_t e) {
        const NoiseCovariance cov = cov_for(experiment, epsilons[e]);
        const Vector uniform = Vector::Constant(kStudySize, 1.0 / kStudySize);
        const double baseline = variance_of(uniform, cov);
        std::size_t slot = e * per_eps;
        for (double t0 : t0s) {
            for (int dp : dprimes) {
                const StencilSetting setting = make_setting(study_grid(), t0, dp + 1);
                const Vector best = solve_annihilation(setting, cov).approximant.coefficients;
                out[slot++] = RhoRecord{experiment, epsilons[e], t0, dp, variance_of(best, cov) / baseline};
            }
        }
    });
    return out;
}

Vector sample_noise(const NoiseCovariance& cov, std::mt19937_64& rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    Vector z(static_cast<Eigen::Index>(cov.size()));
    for (Eigen::Index i = 0; i < z.size(); ++i) z[i] = normal(rng);
    return cov.color(z);
}

Vector sample_noise(const NoiseCovariance& cov, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    return sample_noise(cov, rng);
}

std::string_view to_string(StarVariant variant) noexcept {
    return variant == StarVariant::Exp1Noise ? "exp1" : "exp2";
}

StarVariant parse_star_variant(std::string_view name) {
    if (name == "exp1" || name == "exp1_noise") return StarVariant::Exp1Noise;
    if (name == "exp2" || name == "exp2_noise") return StarVariant::Exp2Noise;
    throw Error(ErrorCode::InvalidArgument, "unknown star variant '" + std::string(name) + "'");
}

Matrix star_noise_block(StarVariant variant) {
    if (variant == StarVariant::Exp1Noise) return 0.5 * cov_experiment1(kStarEpsilon).omega_hat();
    return 0.5 * cov_experiment2(kStarEpsilon).omega_hat();
}

StarRun run_star(StarVariant variant, std::uint64_t seed, const StarOptions& options) {
    constexpr std::size_t m = kStarSamples;
    constexpr int half_width = 8;
    const double dt = 2.0 * std::numbers::pi / static_cast<double>(m);

    StarRun run;
    run.seed = seed;
    run.t.resize(m);
    run.truth.resize(m, 2);
    for (std::size_t i = 0; i < m; ++i) {
        const double t = dt * static_cast<double>(i);
        run.t[i] = t;
        const auto r = static_cast<Eigen::Index>(i);
        run.truth(r, 0) = 4.0 * std::cos(t) + std::cos(4.0 * t);
        run.truth(r, 1) = 4.0 * std::sin(t) - std::sin(4.0 * t);
    }

    const BlockCovariance global(star_noise_block(variant));
    const NoiseCovariance block = make_covariance(global.block());
    const auto bs = static_cast<Eigen::Index>(global.block_size());

    // One stream per seed: the x coordinate's blocks first, then y's. Each
    // block draw is Omega^T z for the block factor, i.e. a draw from the
    // block-diagonal global covariance.
    std::mt19937_64 rng(seed);
    run.noisy = run.truth;
    for (Eigen::Index c = 0; c < 2; ++c) {
        for (Eigen::Index k = 0; k < static_cast<Eigen::Index>(m); k += bs) {
            run.noisy.col(c).segment(k, bs) += options.noise_scale * sample_noise(block, rng);
        }
    }

    const PeriodicSequence noisy(run.noisy);
    SmoothingConfig cfg;
    cfg.half_width_n = half_width;
    cfg.degree_d = 2;
    cfg.spacing = dt;
    run.refined_mv = smooth_in_place(noisy, cfg, global).values();

    Vector baseline;
    if (options.baseline == StarBaseline::UniformAverage) {
        baseline = Vector::Constant(2 * half_width, 1.0 / (2 * half_width));
    } else {
        std::vector<double> pts;
        for (int j = -half_width + 1; j <= half_width; ++j) pts.push_back(j * dt);
        const StencilSetting setting = make_setting(Grid(std::move(pts)), 0.0, cfg.degree_d);
        baseline = solve_annihilation(setting, identity_covariance(2 * half_width)).approximant.coefficients;
    }
    run.refined_avg = smooth_with_weights(noisy, half_width, baseline).values();

    const double count = 2.0 * static_cast<double>(m);
    run.mse_mv = (run.refined_mv - run.truth).squaredNorm() / count;
    run.mse_avg = (run.refined_avg - run.truth).squaredNorm() / count;
    return run;
}

}  // namespace mvapprox
