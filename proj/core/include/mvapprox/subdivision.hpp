#pragma once

#include <cstddef>
#include <functional>
#include <span>

#include "mvapprox/covariance.hpp"
#include "mvapprox/types.hpp"

namespace mvapprox {

/// Periodic data, one row per sample and one column per coordinate.
/// Row indices are taken mod size().
class PeriodicSequence {
public:
    explicit PeriodicSequence(Matrix values);
    static PeriodicSequence scalar(std::span<const double> values);

    std::size_t size() const noexcept { return static_cast<std::size_t>(values_.rows()); }
    std::size_t channels() const noexcept { return static_cast<std::size_t>(values_.cols()); }
    const Matrix& values() const noexcept { return values_; }

    double at(std::ptrdiff_t i, std::size_t channel = 0) const;

private:
    Matrix values_;
};

/// Covariance for the stencil at (level k, index i).
using CovarianceProvider = std::function<NoiseCovariance(int level, std::ptrdiff_t index)>;

/// Binary scheme built from minimum-variance rules on the grids
/// x^k_i = spacing * 2^{-k} * i, each rule using the 2n samples
/// f_{i-n+1..i+n}.
struct SchemeConfig {
    int half_width_n = 2;
    int degree_d = 2;
    double spacing = 1.0;
    CovarianceProvider covariance;
    /// When set, the provider's result does not depend on the index and the
    /// two rules are computed once per level.
    bool shift_invariant = true;

    static SchemeConfig with_covariance(int n, int d, NoiseCovariance cov);
};

/// One application of S^k. Output has twice the length of the input.
/// Errors: StencilTooWide (M < 2n), DegreeOutOfRange (d < 1 or d > 2n).
PeriodicSequence refine_once(const PeriodicSequence& seq, const SchemeConfig& cfg, int level);

/// Levels 0..levels, where entry 0 is the input.
std::vector<PeriodicSequence> refine(const PeriodicSequence& seq, const SchemeConfig& cfg,
                                     int levels);

/// Global covariance made of identical diagonal blocks repeated along the
/// data. Entries from different blocks are uncorrelated.
class BlockCovariance {
public:
    explicit BlockCovariance(Matrix block);

    std::size_t block_size() const noexcept { return static_cast<std::size_t>(block_.rows()); }
    const Matrix& block() const noexcept { return block_; }

    /// Dense period-M matrix. Errors: BlockMismatch.
    Matrix dense(std::size_t period) const;

    /// Principal submatrix of the period-M global matrix at the given
    /// already-wrapped indices.
    NoiseCovariance restricted(std::span<const std::size_t> indices) const;

private:
    Matrix block_;
};

/// Smoothing at existing nodes t_i = t_first + i*spacing with the stencil
/// t_{i-n+1..i+n} and evaluation point t_i.
struct SmoothingConfig {
    int half_width_n = 8;
    int degree_d = 2;
    double spacing = 1.0;
};

/// Entry i is the minimum-variance rule for (t_{i-n+1..i+n}, t_i) under the
/// global covariance restricted to the stencil, applied to the stencil data.
/// Errors: BlockMismatch, StencilTooWide.
PeriodicSequence smooth_in_place(const PeriodicSequence& seq, const SmoothingConfig& cfg,
                                 const BlockCovariance& cov);

/// Fixed 2n weights applied at every index over f_{i-n+1..i+n}.
PeriodicSequence smooth_with_weights(const PeriodicSequence& seq, int half_width_n,
                                     const Vector& weights);

}  // namespace mvapprox
