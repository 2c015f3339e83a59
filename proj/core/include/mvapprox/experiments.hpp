#pragma once

#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

#include "mvapprox/covariance.hpp"
#include "mvapprox/types.hpp"

namespace mvapprox {

/// The 16-point grid (-7, ..., 7, 8) used by the variance-ratio studies.
Grid study_grid();

/// Raw 16x16 experiment-2 matrix (four copies of the 4x4 correlated block).
Matrix experiment2_matrix(double epsilon);

/// Diagonal: epsilon on the eight nodes x_i <= 0, one elsewhere.
/// Errors: EpsilonOutOfRange unless 0 < epsilon < 1.
NoiseCovariance cov_experiment1(double epsilon);

/// Block-diagonal, unit variance, correlations -1+eps and -eps.
/// Errors: EpsilonOutOfRange outside [0, 0.1); NotPositiveDefinite at eps = 0.
NoiseCovariance cov_experiment2(double epsilon);

bool epsilon_in_range(int experiment, double epsilon) noexcept;

struct RhoRecord {
    int experiment = 1;
    double epsilon = 0.0;
    double t0 = 0.0;
    int dprime = 0;  ///< polynomial degree d' = d - 1
    double rho = 0.0;
};

/// 40 log-spaced values starting at 1e-6 inside the experiment's range.
std::vector<double> default_epsilons(int experiment);
std::vector<double> default_t0s();
std::vector<int> default_dprimes();

/// ||Omega a*||^2 / ||Omega a0||^2 with a0 the uniform 1/16 weights.
double rho(int experiment, double epsilon, double t0, int dprime);

/// Ordered by epsilon ascending, then t0 and d' in the given order.
std::vector<RhoRecord> rho_sweep(int experiment, std::vector<double> epsilons,
                                 const std::vector<double>& t0s,
                                 const std::vector<int>& dprimes);

/// Omega^T z with z standard normal drawn from the generator.
Vector sample_noise(const NoiseCovariance& cov, std::mt19937_64& rng);
Vector sample_noise(const NoiseCovariance& cov, std::uint64_t seed);

enum class StarVariant { Exp1Noise, Exp2Noise };

std::string_view to_string(StarVariant variant) noexcept;
/// Accepts "exp1"/"exp1_noise" and "exp2"/"exp2_noise".
/// Errors: InvalidArgument.
StarVariant parse_star_variant(std::string_view name);

enum class StarBaseline {
    UniformAverage,      ///< a0_i = 1/16
    UniformNoiseOptimal, ///< minimum-variance rule for identity covariance
};

struct StarOptions {
    double noise_scale = 1.0;  ///< 0 disables noise
    StarBaseline baseline = StarBaseline::UniformAverage;
};

inline constexpr std::size_t kStarSamples = 320;
inline constexpr std::uint64_t kCanonicalStarSeed = 20250101;

/// Rows are samples, columns are the (x, y) coordinates.
struct StarRun {
    std::uint64_t seed = 0;
    std::vector<double> t;
    Matrix truth;
    Matrix noisy;
    Matrix refined_mv;
    Matrix refined_avg;
    double mse_mv = 0.0;
    double mse_avg = 0.0;
};

/// The star curve F(t) = (4cos t + cos 4t, 4sin t - sin 4t) at t_i = 2 pi i/320,
/// with correlated noise from 20 repeated blocks of 0.5 * Omega_hat^{1e-10},
/// smoothed by the d = 2 minimum-variance rule and the baseline rule.
StarRun run_star(StarVariant variant, std::uint64_t seed, const StarOptions& options = {});

/// Global noise block used by run_star.
Matrix star_noise_block(StarVariant variant);

}  // namespace mvapprox
