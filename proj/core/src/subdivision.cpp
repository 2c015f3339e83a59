#include "mvapprox/subdivision.hpp"

#include <cmath>
#include <vector>

#include "mvapprox/parallel.hpp"
#include "mvapprox/solver.hpp"

namespace mvapprox {

PeriodicSequence::PeriodicSequence(Matrix values) : values_(std::move(values)) {
    if (values_.rows() == 0 || values_.cols() == 0) {
        throw Error(ErrorCode::InvalidArgument, "periodic sequence must be non-empty");
    }
}

PeriodicSequence PeriodicSequence::scalar(std::span<const double> values) {
    Matrix m(static_cast<Eigen::Index>(values.size()), 1);
    for (std::size_t i = 0; i < values.size(); ++i) m(static_cast<Eigen::Index>(i), 0) = values[i];
    return PeriodicSequence(std::move(m));
}

double PeriodicSequence::at(std::ptrdiff_t i, std::size_t channel) const {
    const auto m = static_cast<std::ptrdiff_t>(size());
    const std::ptrdiff_t wrapped = ((i % m) + m) % m;
    return values_(wrapped, static_cast<Eigen::Index>(channel));
}

SchemeConfig SchemeConfig::with_covariance(int n, int d, NoiseCovariance cov) {
    SchemeConfig cfg;
    cfg.half_width_n = n;
    cfg.degree_d = d;
    cfg.covariance = [cov = std::move(cov)](int, std::ptrdiff_t) { return cov; };
    cfg.shift_invariant = true;
    return cfg;
}

namespace {

// Rules only depend on the stencil relative to t0, so they are computed on
// the local stencil (j * h)_{j=-n+1..n}.
Grid local_stencil(int n, double h) {
    std::vector<double> pts;
    pts.reserve(static_cast<std::size_t>(2 * n));
    for (int j = -n + 1; j <= n; ++j) pts.push_back(j * h);
    return Grid(std::move(pts));
}

Vector rule(const Grid& stencil, double t0, int d, const NoiseCovariance& cov) {
    return solve_annihilation(make_setting(stencil, t0, d), cov).approximant.coefficients;
}

double apply(const Vector& weights, const PeriodicSequence& seq, std::ptrdiff_t first, std::size_t channel) {
    double sum = 0.0;
    for (Eigen::Index j = 0; j < weights.size(); ++j) sum += weights[j] * seq.at(first + j, channel);
    return sum;
}

void check_stencil(std::size_t m, int n, int d) {
    if (n < 1) throw Error(ErrorCode::InvalidArgument, "half width n must be at least 1");
    if (d < 1 || d > 2 * n) {
        throw Error(ErrorCode::DegreeOutOfRange, "rule degree d = " + std::to_string(d) + " must lie in [1, 2n]");
    }
    if (m < static_cast<std::size_t>(2 * n)) {
        throw Error(ErrorCode::StencilTooWide, "sequence of length " + std::to_string(m) +
                                                   " is shorter than the stencil width " + std::to_string(2 * n));
    }
}

}  // namespace

PeriodicSequence refine_once(const PeriodicSequence& seq, const SchemeConfig& cfg, int level) {
    const std::size_t m = seq.size();
    const int n = cfg.half_width_n;
    check_stencil(m, n, cfg.degree_d);
    if (!cfg.covariance) throw Error(ErrorCode::InvalidArgument, "scheme has no covariance provider");

    const double h = std::ldexp(cfg.spacing, -level);
    const Grid stencil = local_stencil(n, h);
    Matrix out(static_cast<Eigen::Index>(2 * m), static_cast<Eigen::Index>(seq.channels()));

    auto emit = [&](std::size_t i, const Vector& even, const Vector& odd) {
        const auto first = static_cast<std::ptrdiff_t>(i) - n + 1;
        for (std::size_t c = 0; c < seq.channels(); ++c) {
            out(static_cast<Eigen::Index>(2 * i), static_cast<Eigen::Index>(c)) = apply(even, seq, first, c);
            out(static_cast<Eigen::Index>(2 * i + 1), static_cast<Eigen::Index>(c)) = apply(odd, seq, first, c);
        }
    };

    if (cfg.shift_invariant) {
        const NoiseCovariance cov = cfg.covariance(level, 0);
        const Vector even = rule(stencil, 0.0, cfg.degree_d, cov);
        const Vector odd = rule(stencil, 0.5 * h, cfg.degree_d, cov);
        for (std::size_t i = 0; i < m; ++i) emit(i, even, odd);
    } else {
        parallel_for(m, [&](std::size_t i) {
            const NoiseCovariance cov = cfg.covariance(level, static_cast<std::ptrdiff_t>(i));
            emit(i, rule(stencil, 0.0, cfg.degree_d, cov), rule(stencil, 0.5 * h, cfg.degree_d, cov));
        });
    }
    return PeriodicSequence(std::move(out));
}

std::vector<PeriodicSequence> refine(const PeriodicSequence& seq, const SchemeConfig& cfg, int levels) {
    if (levels < 0) throw Error(ErrorCode::InvalidArgument, "level count must be non-negative");
    std::vector<PeriodicSequence> out{seq};
    out.reserve(static_cast<std::size_t>(levels) + 1);
    for (int k = 0; k < levels; ++k) out.push_back(refine_once(out.back(), cfg, k));
    return out;
}

BlockCovariance::BlockCovariance(Matrix block) : block_(std::move(block)) {
    make_covariance(block_);  // validates symmetry and definiteness
}

Matrix BlockCovariance::dense(std::size_t period) const {
    const std::size_t b = block_size();
    if (period == 0 || period % b != 0) {
        throw Error(ErrorCode::BlockMismatch, "period " + std::to_string(period) +
                                                  " is not a multiple of the block size " + std::to_string(b));
    }
    const auto p = static_cast<Eigen::Index>(period);
    const auto bs = static_cast<Eigen::Index>(b);
    Matrix full = Matrix::Zero(p, p);
    for (Eigen::Index k = 0; k < p; k += bs) full.block(k, k, bs, bs) = block_;
    return full;
}

NoiseCovariance BlockCovariance::restricted(std::span<const std::size_t> indices) const {
    const std::size_t b = block_size();
    const auto m = static_cast<Eigen::Index>(indices.size());
    Matrix sub = Matrix::Zero(m, m);
    for (Eigen::Index p = 0; p < m; ++p) {
        for (Eigen::Index q = 0; q < m; ++q) {
            const std::size_t i = indices[static_cast<std::size_t>(p)];
            const std::size_t j = indices[static_cast<std::size_t>(q)];
            if (i / b == j / b) {
                sub(p, q) = block_(static_cast<Eigen::Index>(i % b), static_cast<Eigen::Index>(j % b));
            }
        }
    }
    return make_covariance(sub);
}

PeriodicSequence smooth_in_place(const PeriodicSequence& seq, const SmoothingConfig& cfg,
                                 const BlockCovariance& cov) {
    const std::size_t m = seq.size();
    const int n = cfg.half_width_n;
    const std::size_t b = cov.block_size();
    if (m % b != 0) {
        throw Error(ErrorCode::BlockMismatch, "sequence length " + std::to_string(m) +
                                                  " is not a multiple of the block size " + std::to_string(b));
    }
    check_stencil(m, n, cfg.degree_d);

    const Grid stencil = local_stencil(n, cfg.spacing);
    // The restricted covariance, hence the rule, repeats with the block period.
    std::vector<Vector> rules(b);
    parallel_for(b, [&](std::size_t r) {
        std::vector<std::size_t> idx(static_cast<std::size_t>(2 * n));
        for (int j = 0; j < 2 * n; ++j) {
            const auto raw = static_cast<std::ptrdiff_t>(r) - n + 1 + j;
            const auto mm = static_cast<std::ptrdiff_t>(m);
            idx[static_cast<std::size_t>(j)] = static_cast<std::size_t>(((raw % mm) + mm) % mm);
        }
        rules[r] = rule(stencil, 0.0, cfg.degree_d, cov.restricted(idx));
    });

    Matrix out(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(seq.channels()));
    for (std::size_t i = 0; i < m; ++i) {
        const auto first = static_cast<std::ptrdiff_t>(i) - n + 1;
        for (std::size_t c = 0; c < seq.channels(); ++c) {
            out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(c)) = apply(rules[i % b], seq, first, c);
        }
    }
    return PeriodicSequence(std::move(out));
}

PeriodicSequence smooth_with_weights(const PeriodicSequence& seq, int half_width_n, const Vector& weights) {
    const std::size_t m = seq.size();
    if (weights.size() != 2 * half_width_n) {
        throw Error(ErrorCode::DimensionMismatch, "need 2n weights");
    }
    if (m < static_cast<std::size_t>(2 * half_width_n)) {
        throw Error(ErrorCode::StencilTooWide, "sequence shorter than the stencil");
    }
    Matrix out(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(seq.channels()));
    for (std::size_t i = 0; i < m; ++i) {
        const auto first = static_cast<std::ptrdiff_t>(i) - half_width_n + 1;
        for (std::size_t c = 0; c < seq.channels(); ++c) {
            out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(c)) = apply(weights, seq, first, c);
        }
    }
    return PeriodicSequence(std::move(out));
}

}  // namespace mvapprox
