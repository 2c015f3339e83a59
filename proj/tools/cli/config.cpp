#include "cli/config.hpp"

#include <algorithm>

#include "cli/io.hpp"

namespace mvapprox::cli {

namespace {

using nlohmann::json;

std::pair<int, int> line_col(std::string_view text, std::size_t byte) {
    int line = 1;
    int col = 1;
    for (std::size_t i = 0; i < std::min(byte, text.size()); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return {line, col};
}

}  // namespace

ConfigDocument ConfigDocument::parse(std::string text, std::string source) {
    ConfigDocument doc;
    doc.text_ = std::move(text);
    doc.source_ = std::move(source);
    try {
        doc.root_ = json::parse(doc.text_);
    } catch (const json::parse_error& e) {
        // e.byte is one past the offending character.
        const auto [line, col] = line_col(doc.text_, e.byte > 0 ? e.byte - 1 : 0);
        throw ConfigError(doc.source_ + ":" + std::to_string(line) + ":" + std::to_string(col) +
                          ": invalid JSON (" + e.what() + ")");
    }
    if (!doc.root_.is_object()) throw ConfigError(doc.source_ + ":1: top level must be a JSON object");
    return doc;
}

ConfigDocument ConfigDocument::load(const std::filesystem::path& path) {
    std::string text;
    try {
        text = read_file(path);
    } catch (const std::exception& e) {
        throw ConfigError(e.what());
    }
    return parse(std::move(text), path.string());
}

ConfigDocument ConfigDocument::empty() {
    ConfigDocument doc;
    doc.source_ = "<flags>";
    return doc;
}

int ConfigDocument::line_of(std::string_view key) const {
    const std::string quoted = "\"" + std::string(key) + "\"";
    const std::size_t pos = text_.find(quoted);
    if (pos == std::string::npos) return 0;
    return line_col(text_, pos).first;
}

void ConfigDocument::fail(std::string_view key, const std::string& message) const {
    const int line = line_of(key);
    std::string where = source_;
    if (line > 0) where += ":" + std::to_string(line);
    throw ConfigError(where + ": " + message);
}

void ConfigDocument::reject_unknown(const json& object, std::initializer_list<std::string_view> allowed) const {
    for (const auto& [key, value] : object.items()) {
        if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
            fail(key, "unknown field '" + key + "'");
        }
    }
}

std::optional<double> ConfigDocument::number(const json& object, std::string_view key) const {
    const auto it = object.find(std::string(key));
    if (it == object.end()) return std::nullopt;
    if (!it->is_number()) fail(key, "field '" + std::string(key) + "' must be a number");
    return it->get<double>();
}

std::optional<std::int64_t> ConfigDocument::integer(const json& object, std::string_view key) const {
    const auto it = object.find(std::string(key));
    if (it == object.end()) return std::nullopt;
    if (!it->is_number_integer()) fail(key, "field '" + std::string(key) + "' must be an integer");
    return it->get<std::int64_t>();
}

std::optional<bool> ConfigDocument::boolean(const json& object, std::string_view key) const {
    const auto it = object.find(std::string(key));
    if (it == object.end()) return std::nullopt;
    if (!it->is_boolean()) fail(key, "field '" + std::string(key) + "' must be true or false");
    return it->get<bool>();
}

std::optional<std::string> ConfigDocument::string(const json& object, std::string_view key) const {
    const auto it = object.find(std::string(key));
    if (it == object.end()) return std::nullopt;
    if (!it->is_string()) fail(key, "field '" + std::string(key) + "' must be a string");
    return it->get<std::string>();
}

std::optional<std::vector<double>> ConfigDocument::numbers(const json& object, std::string_view key) const {
    const auto it = object.find(std::string(key));
    if (it == object.end()) return std::nullopt;
    if (!it->is_array()) fail(key, "field '" + std::string(key) + "' must be an array of numbers");
    std::vector<double> out;
    for (const auto& v : *it) {
        if (!v.is_number()) fail(key, "field '" + std::string(key) + "' must contain only numbers");
        out.push_back(v.get<double>());
    }
    return out;
}

std::optional<std::vector<std::int64_t>> ConfigDocument::integers(const json& object, std::string_view key) const {
    const auto it = object.find(std::string(key));
    if (it == object.end()) return std::nullopt;
    if (!it->is_array()) fail(key, "field '" + std::string(key) + "' must be an array of integers");
    std::vector<std::int64_t> out;
    for (const auto& v : *it) {
        if (!v.is_number_integer()) fail(key, "field '" + std::string(key) + "' must contain only integers");
        out.push_back(v.get<std::int64_t>());
    }
    return out;
}

CovarianceSpec parse_covariance_spec(const ConfigDocument& doc, const json& object) {
    CovarianceSpec spec;
    const auto it = object.find("covariance");
    if (it == object.end()) return spec;
    if (!it->is_object()) doc.fail("covariance", "field 'covariance' must be an object");
    const json& cov = *it;
    doc.reject_unknown(cov, {"type", "rows", "path", "epsilon"});
    const std::string type = doc.string(cov, "type").value_or("identity");
    if (type == "identity") {
        spec.kind = CovarianceSpec::Kind::Identity;
    } else if (type == "dense") {
        spec.kind = CovarianceSpec::Kind::Dense;
        const auto rows = cov.find("rows");
        if (rows == cov.end() || !rows->is_array() || rows->empty()) {
            doc.fail("rows", "dense covariance needs 'rows': an array of numeric arrays");
        }
        const auto n_rows = static_cast<Eigen::Index>(rows->size());
        Eigen::Index n_cols = -1;
        std::vector<std::vector<double>> data;
        for (const auto& row : *rows) {
            if (!row.is_array()) doc.fail("rows", "each covariance row must be an array");
            std::vector<double> r;
            for (const auto& v : row) {
                if (!v.is_number()) doc.fail("rows", "covariance entries must be numbers");
                r.push_back(v.get<double>());
            }
            if (n_cols < 0) n_cols = static_cast<Eigen::Index>(r.size());
            if (static_cast<Eigen::Index>(r.size()) != n_cols) doc.fail("rows", "covariance rows have different lengths");
            data.push_back(std::move(r));
        }
        spec.dense.resize(n_rows, n_cols);
        for (Eigen::Index r = 0; r < n_rows; ++r) {
            for (Eigen::Index c = 0; c < n_cols; ++c) {
                spec.dense(r, c) = data[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
            }
        }
    } else if (type == "csv") {
        spec.kind = CovarianceSpec::Kind::Csv;
        const auto path = doc.string(cov, "path");
        if (!path) doc.fail("type", "csv covariance needs 'path'");
        spec.path = *path;
    } else if (type == "experiment1" || type == "experiment2") {
        spec.kind = type == "experiment1" ? CovarianceSpec::Kind::Experiment1 : CovarianceSpec::Kind::Experiment2;
        spec.epsilon = doc.number(cov, "epsilon");
    } else {
        doc.fail("type", "unknown covariance type '" + type + "'");
    }
    return spec;
}

NoiseCovariance resolve_covariance(const CovarianceSpec& spec, std::size_t n) {
    switch (spec.kind) {
        case CovarianceSpec::Kind::Identity:
            return identity_covariance(n);
        case CovarianceSpec::Kind::Dense:
            return make_covariance(spec.dense);
        case CovarianceSpec::Kind::Csv: {
            std::string text;
            try {
                text = read_file(spec.path);
            } catch (const std::exception& e) {
                throw ConfigError(e.what());
            }
            return make_covariance(parse_matrix_csv(text));
        }
        case CovarianceSpec::Kind::Experiment1:
        case CovarianceSpec::Kind::Experiment2:
            if (!spec.epsilon) throw ConfigError("experiment covariance needs an epsilon (config or --epsilon)");
            return spec.kind == CovarianceSpec::Kind::Experiment1 ? cov_experiment1(*spec.epsilon)
                                                                   : cov_experiment2(*spec.epsilon);
    }
    throw ConfigError("unreachable covariance kind");
}

SolveConfig parse_solve_config(const ConfigDocument& doc) {
    const json& root = doc.root();
    doc.reject_unknown(root, {"grid", "t0", "dprime", "allow_extrapolation", "routes", "covariance"});
    SolveConfig cfg;
    if (auto grid = doc.numbers(root, "grid")) {
        cfg.grid = std::move(*grid);
    } else {
        const Grid g = study_grid();
        cfg.grid.assign(g.points().begin(), g.points().end());
    }
    cfg.t0 = doc.number(root, "t0");
    if (auto dp = doc.integer(root, "dprime")) cfg.dprime = static_cast<int>(*dp);
    cfg.allow_extrapolation = doc.boolean(root, "allow_extrapolation").value_or(false);
    cfg.routes = doc.string(root, "routes").value_or("all");
    if (cfg.routes != "all" && cfg.routes != "annihilation" && cfg.routes != "small_system" &&
        cfg.routes != "orthopoly") {
        doc.fail("routes", "routes must be one of all, annihilation, small_system, orthopoly");
    }
    cfg.covariance = parse_covariance_spec(doc, root);
    return cfg;
}

RhoConfig parse_rho_config(const ConfigDocument& doc) {
    const json& root = doc.root();
    doc.reject_unknown(root, {"experiments", "epsilons", "t0s", "dprimes"});
    RhoConfig cfg;
    if (auto ex = doc.integers(root, "experiments")) {
        cfg.experiments.clear();
        for (auto e : *ex) {
            if (e != 1 && e != 2) doc.fail("experiments", "experiments must be 1 and/or 2");
            cfg.experiments.push_back(static_cast<int>(e));
        }
    }
    cfg.epsilons = doc.numbers(root, "epsilons");
    if (auto t = doc.numbers(root, "t0s")) cfg.t0s = std::move(*t);
    if (auto dp = doc.integers(root, "dprimes")) {
        cfg.dprimes.clear();
        for (auto v : *dp) {
            if (v < 0 || v > 14) doc.fail("dprimes", "dprimes must lie in [0, 14] for the 16-point grid");
            cfg.dprimes.push_back(static_cast<int>(v));
        }
    }
    return cfg;
}

StarConfig parse_star_config(const ConfigDocument& doc) {
    const json& root = doc.root();
    doc.reject_unknown(root, {"variant", "seed", "noise_scale", "baseline"});
    StarConfig cfg;
    cfg.variant = doc.string(root, "variant");
    if (auto seed = doc.integer(root, "seed")) {
        if (*seed < 0) doc.fail("seed", "seed must be non-negative");
        cfg.seed = static_cast<std::uint64_t>(*seed);
    }
    if (auto s = doc.number(root, "noise_scale")) cfg.options.noise_scale = *s;
    if (auto b = doc.string(root, "baseline")) {
        if (*b == "average") {
            cfg.options.baseline = StarBaseline::UniformAverage;
        } else if (*b == "uniform_optimal") {
            cfg.options.baseline = StarBaseline::UniformNoiseOptimal;
        } else {
            doc.fail("baseline", "baseline must be 'average' or 'uniform_optimal'");
        }
    }
    return cfg;
}

SubdivideConfig parse_subdivide_config(const ConfigDocument& doc) {
    const json& root = doc.root();
    doc.reject_unknown(root, {"input", "levels", "dprime", "n", "spacing", "covariance"});
    SubdivideConfig cfg;
    if (auto in = doc.string(root, "input")) cfg.input = *in;
    if (auto v = doc.integer(root, "levels")) cfg.levels = static_cast<int>(*v);
    if (auto v = doc.integer(root, "dprime")) cfg.dprime = static_cast<int>(*v);
    if (auto v = doc.integer(root, "n")) cfg.half_width_n = static_cast<int>(*v);
    if (auto v = doc.number(root, "spacing")) cfg.spacing = *v;
    cfg.covariance = parse_covariance_spec(doc, root);
    return cfg;
}

}  // namespace mvapprox::cli
