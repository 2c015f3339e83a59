#include "mvapprox/types.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace mvapprox {

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::NonMonotoneGrid: return "NonMonotoneGrid";
        case ErrorCode::DegreeOutOfRange: return "DegreeOutOfRange";
        case ErrorCode::ExtrapolationNotAllowed: return "ExtrapolationNotAllowed";
        case ErrorCode::NotSymmetric: return "NotSymmetric";
        case ErrorCode::NotPositiveDefinite: return "NotPositiveDefinite";
        case ErrorCode::DimensionMismatch: return "DimensionMismatch";
        case ErrorCode::SingularSystem: return "SingularSystem";
        case ErrorCode::GramSchmidtBreakdown: return "GramSchmidtBreakdown";
        case ErrorCode::RouteDisagreement: return "RouteDisagreement";
        case ErrorCode::StencilTooWide: return "StencilTooWide";
        case ErrorCode::BlockMismatch: return "BlockMismatch";
        case ErrorCode::EpsilonOutOfRange: return "EpsilonOutOfRange";
        case ErrorCode::InvalidArgument: return "InvalidArgument";
    }
    return "Unknown";
}

Grid::Grid(std::vector<double> points) : points_(std::move(points)) {
    if (points_.empty()) {
        throw Error(ErrorCode::InvalidArgument, "grid must contain at least one point");
    }
    for (std::size_t i = 0; i < points_.size(); ++i) {
        if (!std::isfinite(points_[i])) {
            throw Error(ErrorCode::NonMonotoneGrid, "grid point " + std::to_string(i) + " is not finite");
        }
        if (i > 0 && !(points_[i - 1] < points_[i])) {
            std::ostringstream msg;
            msg.precision(17);
            msg << "x[" << i - 1 << "] = " << points_[i - 1] << " is not below x[" << i
                << "] = " << points_[i];
            throw Error(ErrorCode::NonMonotoneGrid, msg.str());
        }
    }
}

Grid Grid::uniform(double first, double step, std::size_t count) {
    std::vector<double> pts(count);
    for (std::size_t i = 0; i < count; ++i) pts[i] = first + step * static_cast<double>(i);
    return Grid(std::move(pts));
}

Vector Grid::as_vector() const {
    return Eigen::Map<const Vector>(points_.data(), static_cast<Eigen::Index>(points_.size()));
}

Grid Grid::scaled_about(double t0, double h) const {
    if (!(h > 0.0)) throw Error(ErrorCode::InvalidArgument, "grid scale must be positive");
    std::vector<double> pts(points_.size());
    std::transform(points_.begin(), points_.end(), pts.begin(),
                   [&](double x) { return t0 + h * (x - t0); });
    return Grid(std::move(pts));
}

Grid Grid::subset(std::span<const std::size_t> indices) const {
    std::vector<double> pts;
    pts.reserve(indices.size());
    for (std::size_t i : indices) {
        if (i >= points_.size()) throw Error(ErrorCode::DimensionMismatch, "subset index out of range");
        pts.push_back(points_[i]);
    }
    return Grid(std::move(pts));
}

StencilSetting make_setting(Grid grid, double t0, int d, bool allow_extrapolation) {
    const auto n = static_cast<int>(grid.size());
    if (d < 0 || d > n) {
        throw Error(ErrorCode::DegreeOutOfRange,
                    "d = " + std::to_string(d) + " must lie in [0, " + std::to_string(n) + "]");
    }
    if (!std::isfinite(t0)) throw Error(ErrorCode::InvalidArgument, "t0 must be finite");
    if (!allow_extrapolation && (t0 < grid.front() || t0 > grid.back())) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "t0 = " << t0 << " lies outside [" << grid.front() << ", " << grid.back() << "]";
        throw Error(ErrorCode::ExtrapolationNotAllowed, msg.str());
    }
    return StencilSetting{std::move(grid), t0, d};
}

double reproduction_residual(const Vector& a, const StencilSetting& setting) {
    const std::size_t n = setting.size();
    if (static_cast<std::size_t>(a.size()) != n) {
        throw Error(ErrorCode::DimensionMismatch, "coefficient vector does not match grid");
    }
    double worst = 0.0;
    double max_abs_x = 0.0;
    for (double x : setting.grid.points()) max_abs_x = std::max(max_abs_x, std::abs(x));
    for (int s = 0; s < setting.degree_d; ++s) {
        double moment = 0.0;
        for (std::size_t i = 0; i < n; ++i) moment += a[static_cast<Eigen::Index>(i)] * std::pow(setting.grid[i], s);
        const double target = std::pow(setting.t0, s);
        const double scale = std::max({1.0, std::abs(target), std::pow(max_abs_x, s)});
        worst = std::max(worst, std::abs(moment - target) / scale);
    }
    return worst;
}

}  // namespace mvapprox
