#pragma once

#include <cstdint>
#include <filesystem>
#include <initializer_list>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "mvapprox/covariance.hpp"
#include "mvapprox/experiments.hpp"

namespace mvapprox::cli {

/// Usage or configuration problem; maps to exit code 2.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A parsed JSON config plus the text it came from, so schema errors can
/// point at a line.
class ConfigDocument {
public:
    /// Errors: ConfigError with "<source>:<line>:<column>" on malformed JSON
    /// or a non-object top level.
    static ConfigDocument parse(std::string text, std::string source);
    static ConfigDocument load(const std::filesystem::path& path);
    static ConfigDocument empty();

    const nlohmann::json& root() const noexcept { return root_; }
    const std::string& source() const noexcept { return source_; }

    /// 1-based line of the first occurrence of "key" in the text, 0 if absent.
    int line_of(std::string_view key) const;

    [[noreturn]] void fail(std::string_view key, const std::string& message) const;

    /// Every member of `object` must be listed in `allowed`.
    void reject_unknown(const nlohmann::json& object, std::initializer_list<std::string_view> allowed) const;

    std::optional<double> number(const nlohmann::json& object, std::string_view key) const;
    std::optional<std::int64_t> integer(const nlohmann::json& object, std::string_view key) const;
    std::optional<bool> boolean(const nlohmann::json& object, std::string_view key) const;
    std::optional<std::string> string(const nlohmann::json& object, std::string_view key) const;
    std::optional<std::vector<double>> numbers(const nlohmann::json& object, std::string_view key) const;
    std::optional<std::vector<std::int64_t>> integers(const nlohmann::json& object, std::string_view key) const;

private:
    nlohmann::json root_ = nlohmann::json::object();
    std::string text_;
    std::string source_;
};

/// Where the noise covariance comes from.
struct CovarianceSpec {
    enum class Kind { Identity, Dense, Csv, Experiment1, Experiment2 };
    Kind kind = Kind::Identity;
    Matrix dense;
    std::filesystem::path path;
    std::optional<double> epsilon;
};

/// Reads an optional "covariance" member of `object`.
CovarianceSpec parse_covariance_spec(const ConfigDocument& doc, const nlohmann::json& object);

/// Materialises the covariance for an n-point grid.
NoiseCovariance resolve_covariance(const CovarianceSpec& spec, std::size_t n);

struct SolveConfig {
    std::vector<double> grid;
    std::optional<double> t0;
    std::optional<int> dprime;
    bool allow_extrapolation = false;
    std::string routes = "all";
    CovarianceSpec covariance;
};

struct RhoConfig {
    std::vector<int> experiments{1, 2};
    std::optional<std::vector<double>> epsilons;
    std::vector<double> t0s = default_t0s();
    std::vector<int> dprimes = default_dprimes();
};

struct StarConfig {
    std::optional<std::string> variant;
    std::uint64_t seed = kCanonicalStarSeed;
    StarOptions options;
};

struct SubdivideConfig {
    std::optional<std::filesystem::path> input;
    int levels = 1;
    int dprime = 1;
    int half_width_n = 2;
    double spacing = 1.0;
    CovarianceSpec covariance;
};

SolveConfig parse_solve_config(const ConfigDocument& doc);
RhoConfig parse_rho_config(const ConfigDocument& doc);
StarConfig parse_star_config(const ConfigDocument& doc);
SubdivideConfig parse_subdivide_config(const ConfigDocument& doc);

}  // namespace mvapprox::cli
