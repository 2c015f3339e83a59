#include "cli/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <system_error>

#include <unistd.h>

namespace mvapprox::cli {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> split(std::string_view line, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = line.find(sep, start);
        out.push_back(trim(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

std::vector<std::string_view> lines_of(std::string_view text) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        const std::size_t pos = text.find('\n', start);
        const std::string_view line = trim(text.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
        if (!line.empty()) out.push_back(line);
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

void append_row(std::string& out, std::initializer_list<std::string> cells) {
    bool first = true;
    for (const std::string& c : cells) {
        if (!first) out += ',';
        out += c;
        first = false;
    }
    out += '\n';
}

}  // namespace

std::string format_double(double value) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

double parse_double(std::string_view text) {
    text = trim(text);
    if (!text.empty() && text.front() == '+') text.remove_prefix(1);
    double value = 0.0;
    const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
    if (res.ec != std::errc{} || res.ptr != text.data() + text.size()) {
        throw Error(ErrorCode::InvalidArgument, "'" + std::string(text) + "' is not a real number");
    }
    return value;
}

void write_atomic(const std::filesystem::path& path, std::string_view content) {
    std::filesystem::path tmp = path;
    tmp += ".tmp." + std::to_string(::getpid());
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!out) throw std::runtime_error("failed writing " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Matrix parse_matrix_csv(std::string_view text) {
    const auto lines = lines_of(text);
    std::vector<std::vector<double>> rows;
    rows.reserve(lines.size());
    for (std::size_t r = 0; r < lines.size(); ++r) {
        std::vector<double> row;
        for (std::string_view cell : split(lines[r], ',')) {
            try {
                row.push_back(parse_double(cell));
            } catch (const Error& e) {
                throw Error(ErrorCode::InvalidArgument, "line " + std::to_string(r + 1) + ": " + e.what());
            }
        }
        rows.push_back(std::move(row));
    }
    const std::size_t n = rows.size();
    Matrix m(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (std::size_t r = 0; r < n; ++r) {
        if (rows[r].size() != n) {
            throw Error(ErrorCode::DimensionMismatch, "line " + std::to_string(r + 1) + " has " +
                                                          std::to_string(rows[r].size()) + " entries, expected " +
                                                          std::to_string(n));
        }
        for (std::size_t c = 0; c < n; ++c) m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = rows[r][c];
    }
    if (n == 0) throw Error(ErrorCode::DimensionMismatch, "empty matrix");
    return m;
}

PeriodicSequence parse_sequence_csv(std::string_view text) {
    auto lines = lines_of(text);
    if (!lines.empty()) {
        const auto first = split(lines.front(), ',');
        try {
            parse_double(first.front());
        } catch (const Error&) {
            lines.erase(lines.begin());  // header
        }
    }
    if (lines.empty()) throw Error(ErrorCode::InvalidArgument, "sequence file has no data rows");

    const std::size_t width = split(lines.front(), ',').size();
    if (width < 2 || width > 3) {
        throw Error(ErrorCode::InvalidArgument, "sequence rows must be index,value[,value2]");
    }
    const std::size_t m = lines.size();
    Matrix values(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(width - 1));
    std::vector<bool> seen(m, false);
    for (std::size_t r = 0; r < m; ++r) {
        const auto cells = split(lines[r], ',');
        if (cells.size() != width) {
            throw Error(ErrorCode::DimensionMismatch, "row " + std::to_string(r + 1) + " has " +
                                                          std::to_string(cells.size()) + " fields, expected " +
                                                          std::to_string(width));
        }
        const double idx = parse_double(cells[0]);
        if (idx < 0 || idx >= static_cast<double>(m) || std::floor(idx) != idx || seen[static_cast<std::size_t>(idx)]) {
            throw Error(ErrorCode::InvalidArgument, "row " + std::to_string(r + 1) + ": index " +
                                                        std::string(cells[0]) + " is invalid or repeated");
        }
        const auto i = static_cast<std::size_t>(idx);
        seen[i] = true;
        for (std::size_t c = 1; c < width; ++c) {
            values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(c - 1)) = parse_double(cells[c]);
        }
    }
    return PeriodicSequence(std::move(values));
}

nlohmann::ordered_json solve_report_json(const SolveReport& report, int dprime) {
    const Approximant& a = report.approximant;
    nlohmann::ordered_json j;
    j["route"] = std::string(to_string(report.route));
    j["n"] = a.setting.size();
    j["t0"] = a.setting.t0;
    j["dprime"] = dprime;
    j["grid"] = std::vector<double>(a.setting.grid.points().begin(), a.setting.grid.points().end());
    j["coefficients"] = std::vector<double>(a.coefficients.data(), a.coefficients.data() + a.coefficients.size());
    j["variance"] = a.variance;
    j["reproduction_residual"] = report.residuals.reproduction;
    j["kernel_residual"] = report.residuals.kernel;
    if (report.residuals.cross_route) {
        j["cross_route_deviation"] = *report.residuals.cross_route;
    } else {
        j["cross_route_deviation"] = nullptr;
    }
    j["condition_estimate"] = report.condition_estimate;
    j["ill_conditioned"] = report.ill_conditioned;
    return j;
}

std::string rho_csv(const std::vector<RhoRecord>& records) {
    std::string out = "experiment,epsilon,t0,dprime,rho\n";
    for (const RhoRecord& r : records) {
        append_row(out, {std::to_string(r.experiment), format_double(r.epsilon), format_double(r.t0),
                         std::to_string(r.dprime), format_double(r.rho)});
    }
    return out;
}

std::string star_csv(const StarRun& run) {
    std::string out = "i,t,truth_x,truth_y,noisy_x,noisy_y,mv_x,mv_y,avg_x,avg_y\n";
    for (std::size_t i = 0; i < run.t.size(); ++i) {
        const auto r = static_cast<Eigen::Index>(i);
        append_row(out, {std::to_string(i), format_double(run.t[i]), format_double(run.truth(r, 0)),
                         format_double(run.truth(r, 1)), format_double(run.noisy(r, 0)),
                         format_double(run.noisy(r, 1)), format_double(run.refined_mv(r, 0)),
                         format_double(run.refined_mv(r, 1)), format_double(run.refined_avg(r, 0)),
                         format_double(run.refined_avg(r, 1))});
    }
    return out;
}

nlohmann::ordered_json star_summary_json(const StarRun& run, StarVariant variant) {
    nlohmann::ordered_json j;
    j["seed"] = run.seed;
    j["variant"] = std::string(to_string(variant));
    j["mse_mv"] = run.mse_mv;
    j["mse_avg"] = run.mse_avg;
    return j;
}

std::string levels_csv(const std::vector<PeriodicSequence>& levels) {
    const std::size_t channels = levels.empty() ? 1 : levels.front().channels();
    std::string out = channels == 1 ? "level,index,value\n" : "level,index,value,value2\n";
    for (std::size_t k = 0; k < levels.size(); ++k) {
        const Matrix& v = levels[k].values();
        for (Eigen::Index i = 0; i < v.rows(); ++i) {
            out += std::to_string(k);
            out += ',';
            out += std::to_string(i);
            for (Eigen::Index c = 0; c < v.cols(); ++c) {
                out += ',';
                out += format_double(v(i, c));
            }
            out += '\n';
        }
    }
    return out;
}

}  // namespace mvapprox::cli
