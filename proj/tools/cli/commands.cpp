#include "cli/commands.hpp"

#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "cli/config.hpp"
#include "cli/io.hpp"
#include "mvapprox/experiments.hpp"
#include "mvapprox/solver.hpp"
#include "mvapprox/subdivision.hpp"

namespace mvapprox::cli {

namespace {

struct CommonFlags {
    std::string config;
    std::string out;
};

ConfigDocument load_or_empty(const std::string& path) {
    return path.empty() ? ConfigDocument::empty() : ConfigDocument::load(path);
}

void emit(const std::string& content, const std::string& path, std::ostream& out) {
    if (path.empty()) {
        out << content;
        out.flush();
    } else {
        write_atomic(path, content);
    }
}

struct SolveFlags {
    std::optional<double> t0;
    std::optional<int> dprime;
    std::optional<double> epsilon;
    std::string covariance;
    std::string covariance_csv;
};

int do_solve(const CommonFlags& common, const SolveFlags& flags, std::ostream& out) {
    const ConfigDocument doc = load_or_empty(common.config);
    SolveConfig cfg = parse_solve_config(doc);
    if (flags.t0) cfg.t0 = flags.t0;
    if (flags.dprime) cfg.dprime = flags.dprime;
    if (!flags.covariance.empty()) {
        if (flags.covariance == "identity") {
            cfg.covariance.kind = CovarianceSpec::Kind::Identity;
        } else if (flags.covariance == "experiment1") {
            cfg.covariance.kind = CovarianceSpec::Kind::Experiment1;
        } else if (flags.covariance == "experiment2") {
            cfg.covariance.kind = CovarianceSpec::Kind::Experiment2;
        } else {
            throw ConfigError("--covariance must be identity, experiment1 or experiment2");
        }
    }
    if (!flags.covariance_csv.empty()) {
        cfg.covariance.kind = CovarianceSpec::Kind::Csv;
        cfg.covariance.path = flags.covariance_csv;
    }
    if (flags.epsilon) {
        if (cfg.covariance.kind != CovarianceSpec::Kind::Experiment1 &&
            cfg.covariance.kind != CovarianceSpec::Kind::Experiment2) {
            throw ConfigError("--epsilon needs an experiment1/experiment2 covariance");
        }
        cfg.covariance.epsilon = flags.epsilon;
    }
    if (!cfg.t0) throw ConfigError("solve needs t0 (config field 't0' or --t0)");
    if (!cfg.dprime) throw ConfigError("solve needs dprime (config field 'dprime' or --dprime)");
    if (*cfg.dprime < 0) throw ConfigError("dprime must be >= 0; d = 0 gives no usable estimator");

    const int d = *cfg.dprime + 1;
    const StencilSetting setting = make_setting(Grid(cfg.grid), *cfg.t0, d, cfg.allow_extrapolation);
    const NoiseCovariance cov = resolve_covariance(cfg.covariance, setting.size());

    SolveReport report = [&] {
        if (cfg.routes == "annihilation") return solve_annihilation(setting, cov);
        if (cfg.routes == "small_system") return solve_small_system(setting, cov);
        if (cfg.routes == "orthopoly") return solve_orthopoly(setting, cov);
        return solve_all_routes(setting, cov);
    }();
    emit(solve_report_json(report, *cfg.dprime).dump(2) + "\n", common.out, out);
    return kExitOk;
}

struct RhoFlags {
    std::string experiment;
    std::optional<double> epsilon;
};

int do_rho(const CommonFlags& common, const RhoFlags& flags, std::ostream& out, std::ostream& err) {
    const ConfigDocument doc = load_or_empty(common.config);
    RhoConfig cfg = parse_rho_config(doc);
    if (!flags.experiment.empty()) {
        if (flags.experiment == "1") {
            cfg.experiments = {1};
        } else if (flags.experiment == "2") {
            cfg.experiments = {2};
        } else if (flags.experiment == "both") {
            cfg.experiments = {1, 2};
        } else {
            throw ConfigError("--experiment must be 1, 2 or both");
        }
    }
    if (flags.epsilon) cfg.epsilons = std::vector<double>{*flags.epsilon};

    std::vector<RhoRecord> records;
    for (int experiment : cfg.experiments) {
        std::vector<double> eps = cfg.epsilons ? *cfg.epsilons : default_epsilons(experiment);
        std::vector<double> kept;
        for (double e : eps) {
            if (epsilon_in_range(experiment, e)) {
                kept.push_back(e);
            } else {
                err << "warning: skipping epsilon " << format_double(e) << " (outside the range of experiment "
                    << experiment << ")\n";
            }
        }
        auto part = rho_sweep(experiment, kept, cfg.t0s, cfg.dprimes);
        records.insert(records.end(), part.begin(), part.end());
    }
    emit(rho_csv(records), common.out, out);
    return kExitOk;
}

struct StarFlags {
    std::string variant;
    std::optional<std::uint64_t> seed;
    std::optional<double> noise_scale;
    std::string baseline;
    std::string summary;
};

int do_star(const CommonFlags& common, const StarFlags& flags, std::ostream& out, std::ostream& err) {
    const ConfigDocument doc = load_or_empty(common.config);
    StarConfig cfg = parse_star_config(doc);
    if (!flags.variant.empty()) cfg.variant = flags.variant;
    if (flags.seed) cfg.seed = *flags.seed;
    if (flags.noise_scale) cfg.options.noise_scale = *flags.noise_scale;
    if (!flags.baseline.empty()) {
        if (flags.baseline == "average") {
            cfg.options.baseline = StarBaseline::UniformAverage;
        } else if (flags.baseline == "uniform_optimal") {
            cfg.options.baseline = StarBaseline::UniformNoiseOptimal;
        } else {
            throw ConfigError("--baseline must be 'average' or 'uniform_optimal'");
        }
    }
    if (!cfg.variant) throw ConfigError("star needs a variant (exp1 or exp2)");
    StarVariant variant{};
    try {
        variant = parse_star_variant(*cfg.variant);
    } catch (const Error& e) {
        throw ConfigError(e.what());
    }

    const StarRun run = run_star(variant, cfg.seed, cfg.options);
    emit(star_csv(run), common.out, out);
    const std::string summary = star_summary_json(run, variant).dump(2) + "\n";
    std::string summary_path = flags.summary;
    if (summary_path.empty() && !common.out.empty()) summary_path = common.out + ".summary.json";
    if (summary_path.empty()) {
        err << summary;
    } else {
        write_atomic(summary_path, summary);
    }
    return kExitOk;
}

struct SubdivideFlags {
    std::string input;
    std::optional<int> levels;
    std::optional<int> dprime;
    std::optional<int> n;
    std::optional<double> spacing;
};

int do_subdivide(const CommonFlags& common, const SubdivideFlags& flags, std::ostream& out) {
    const ConfigDocument doc = load_or_empty(common.config);
    SubdivideConfig cfg = parse_subdivide_config(doc);
    if (!flags.input.empty()) cfg.input = flags.input;
    if (flags.levels) cfg.levels = *flags.levels;
    if (flags.dprime) cfg.dprime = *flags.dprime;
    if (flags.n) cfg.half_width_n = *flags.n;
    if (flags.spacing) cfg.spacing = *flags.spacing;
    if (!cfg.input) throw ConfigError("subdivide needs an input sequence (config field 'input' or --input)");
    if (cfg.levels < 0 || cfg.levels > 8) throw ConfigError("levels must lie in [0, 8]");
    if (cfg.dprime < 0) throw ConfigError("dprime must be >= 0");
    if (cfg.half_width_n < 1) throw ConfigError("n must be >= 1");
    if (!(cfg.spacing > 0.0)) throw ConfigError("spacing must be positive");

    std::string text;
    try {
        text = read_file(*cfg.input);
    } catch (const std::exception& e) {
        throw ConfigError(e.what());
    }
    const PeriodicSequence seq = parse_sequence_csv(text);
    SchemeConfig scheme = SchemeConfig::with_covariance(
        cfg.half_width_n, cfg.dprime + 1,
        resolve_covariance(cfg.covariance, static_cast<std::size_t>(2 * cfg.half_width_n)));
    scheme.spacing = cfg.spacing;
    emit(levels_csv(refine(seq, scheme, cfg.levels)), common.out, out);
    return kExitOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Minimum-variance polynomial-reproducing approximants for noisy data", "mvapprox"};
    app.require_subcommand(1);

    CommonFlags common;
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", common.config, "JSON config file")->check(CLI::ExistingFile);
        sub->add_option("--out", common.out, "Output file (default: stdout)");
    };

    SolveFlags solve_flags;
    CLI::App* solve = app.add_subcommand("solve", "Minimum-variance coefficients for one setting");
    add_common(solve);
    solve->add_option("--t0", solve_flags.t0, "Evaluation point");
    solve->add_option("--dprime", solve_flags.dprime, "Reproduced polynomial degree d' (d = d' + 1)");
    solve->add_option("--epsilon", solve_flags.epsilon, "Epsilon for experiment covariances");
    solve->add_option("--covariance", solve_flags.covariance, "identity | experiment1 | experiment2");
    solve->add_option("--covariance-csv", solve_flags.covariance_csv, "Covariance matrix CSV file");

    RhoFlags rho_flags;
    CLI::App* rho_cmd = app.add_subcommand("rho", "Variance-ratio sweep for experiments 1 and 2");
    add_common(rho_cmd);
    rho_cmd->add_option("--experiment", rho_flags.experiment, "1 | 2 | both");
    rho_cmd->add_option("--epsilon", rho_flags.epsilon, "Single epsilon instead of the default sweep");

    StarFlags star_flags;
    CLI::App* star = app.add_subcommand("star", "Noisy star-curve smoothing study");
    add_common(star);
    star->add_option("--variant", star_flags.variant, "exp1 | exp2");
    star->add_option("--seed", star_flags.seed, "Noise seed");
    star->add_option("--noise-scale", star_flags.noise_scale, "Noise multiplier (0 disables noise)");
    star->add_option("--baseline", star_flags.baseline, "average | uniform_optimal");
    star->add_option("--summary", star_flags.summary, "Summary JSON path (default: <out>.summary.json or stderr)");

    SubdivideFlags sub_flags;
    CLI::App* subdivide = app.add_subcommand("subdivide", "Refine a periodic sequence");
    add_common(subdivide);
    subdivide->add_option("--input", sub_flags.input, "Sequence CSV (index,value[,value2])");
    subdivide->add_option("--levels", sub_flags.levels, "Refinement levels (<= 8)");
    subdivide->add_option("--dprime", sub_flags.dprime, "Reproduced polynomial degree d'");
    subdivide->add_option("--n", sub_flags.n, "Half stencil width (stencil has 2n points)");
    subdivide->add_option("--spacing", sub_flags.spacing, "Level-0 grid spacing");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (solve->parsed()) return do_solve(common, solve_flags, out);
        if (rho_cmd->parsed()) return do_rho(common, rho_flags, out, err);
        if (star->parsed()) return do_star(common, star_flags, out, err);
        if (subdivide->parsed()) return do_subdivide(common, sub_flags, out);
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kExitNumeric;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitNumeric;
    }
    return kExitUsage;
}

}  // namespace mvapprox::cli
