#include "geodim/cli.hpp"

#include <chrono>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "geodim/analysis.hpp"
#include "geodim/cloud_io.hpp"
#include "geodim/estimators.hpp"
#include "geodim/fractal.hpp"
#include "geodim/manifold.hpp"
#include "geodim/neighbors.hpp"
#include "geodim/parallel.hpp"
#include "geodim/perturb.hpp"
#include "geodim/sweep.hpp"

namespace geodim {

namespace {

struct GenerateArgs {
    std::string family;
    int n = 0, k = 0, k1 = 0, k2 = 0, d_i = 0;
    long long ambient = 0;
    int count = 0;
    std::uint64_t seed = 0;
    std::string out;
    std::string csv;
};

struct PerturbArgs {
    std::string in, out;
    double squeeze_eps = 0.0;
    bool has_squeeze = false;
    std::string noise_kind;
    double sigma2 = 0.0;
    std::uint64_t seed = 0;
};

struct EstimateArgs {
    std::string in;
    std::string method;
    int k = 0; // 0 = per-method default
    double alpha = 0.1;
    double epsilon = 0.05;
    int k1 = 10, k2 = 20;
    int calib_sets = 100;
    std::string out;
    std::string lid_out;
    std::string format = "csv";
    bool timing = false;
    std::string knn_cache;
};

struct SweepArgs {
    std::string config_path;
    std::string out_override;
    std::string format_override;
    bool timing = false;
};

struct FractalArgs {
    int q_max = 50;
    int k_grid = 8;
    bool box_count = false;
    int j_min = 3, j_max = 8;
    bool lid = false;
    std::string ks = "5,10,20,50,100";
    int subsample = 1000;
    std::string methods = "mle,abid,corrint";
    std::uint64_t seed = 0;
    std::string out;
};

struct StatsArgs {
    std::string in;
    std::string out;
};

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> items;
    std::string cur;
    for (char c : text) {
        if (c == ',') {
            if (!cur.empty()) items.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!cur.empty()) items.push_back(cur);
    return items;
}

std::ostream& open_sink(const std::string& path, std::ofstream& file) {
    if (path.empty()) return std::cout;
    file.open(path, std::ios::trunc);
    if (!file) throw std::runtime_error("cannot open " + path);
    return file;
}

ManifoldSpec spec_from_args(const GenerateArgs& args) {
    ManifoldSpec spec;
    spec.family = family_from_name(args.family);
    spec.n = args.n;
    spec.k = args.k;
    spec.k1 = args.k1;
    spec.k2 = args.k2;
    spec.d_i_override = args.d_i;
    spec.ambient_target = args.ambient;
    spec.validate();
    return spec;
}

int run_generate(const GenerateArgs& args) {
    const ManifoldSpec spec = spec_from_args(args);
    const RandomStream root =
        derive_stream(args.seed, spec.label() + "/N" + std::to_string(args.count));
    const PointCloud cloud = sample_cloud(spec, args.count, root);
    save_cloud(cloud, args.out);
    if (!args.csv.empty()) export_cloud_csv(cloud, args.csv);
    std::cout << "wrote " << args.out << ".bin (" << cloud.count() << " x " << cloud.ambient()
              << ", d_i=" << format_double(cloud.d_i) << ")\n";
    return 0;
}

int run_perturb(const PerturbArgs& args) {
    PointCloud cloud = load_cloud(args.in);
    if (args.has_squeeze)
        cloud = squeeze(cloud, args.squeeze_eps, derive_stream(args.seed, "perturb/squeeze"));
    if (!args.noise_kind.empty())
        cloud = add_noise(cloud, {noise_kind_from_name(args.noise_kind), args.sigma2},
                          derive_stream(args.seed, "perturb/noise"));
    save_cloud(cloud, args.out);
    std::cout << "wrote " << args.out << ".bin (" << cloud.distortion_log.size()
              << " distortion log entries)\n";
    return 0;
}

// last squeeze / noise entries from a cloud's distortion log
void summarize_distortions(const std::vector<std::string>& log, BenchmarkRecord& record) {
    for (const auto& entry : log) {
        std::istringstream in(entry);
        std::string head, token;
        in >> head;
        if (head == "squeeze") {
            while (in >> token)
                if (token.rfind("epsilon=", 0) == 0)
                    record.distortion = parse_double(token.substr(8));
        } else if (head == "noise") {
            while (in >> token) {
                if (token.rfind("kind=", 0) == 0) record.noise_kind = token.substr(5);
                if (token.rfind("sigma2=", 0) == 0) record.sigma2 = parse_double(token.substr(7));
            }
        }
    }
    if (record.sigma2 == 0.0) record.noise_kind = "none";
}

int run_estimate(const EstimateArgs& args) {
    const PointCloud cloud = load_cloud(args.in);
    EstimatorConfig config = default_estimator_config(method_from_name(args.method));
    if (args.k > 0) config.k = args.k;
    config.alpha = args.alpha;
    config.epsilon = args.epsilon;
    config.k1 = args.k1;
    config.k2 = args.k2;
    config.calib_sets = args.calib_sets;
    const EstimatorConfig effective = clamp_config(config, cloud.count());

    const auto start = std::chrono::steady_clock::now();
    LidResult result;
    if (!args.knn_cache.empty()) {
        // on-disk table cache keyed by (cloud digest, k)
        const int need = required_table_k(effective);
        NeighborTable table;
        const std::uint64_t digest = cloud_digest(cloud);
        if (!load_knn_cache(args.knn_cache, digest, need, table)) {
            table = knn(cloud, need);
            save_knn_cache(args.knn_cache, digest, need, table);
        }
        result = run_estimator(cloud, effective, table);
    } else {
        result = run_estimator(cloud, effective);
    }
    const CovStats stats = covariance_stats(cloud);

    BenchmarkRecord record;
    record.family = cloud.family;
    record.n = cloud.n;
    record.k_param = cloud.k_param;
    record.k1 = cloud.k1;
    record.k2 = cloud.k2;
    record.d_i = cloud.d_i;
    record.d_a = cloud.ambient();
    record.sample_count = cloud.count();
    record.k = effective.method == EstimatorMethod::CorrInt ? effective.k2 : effective.k;
    record.method = method_name(effective.method);
    record.alpha = effective.alpha;
    record.epsilon_lpca = effective.epsilon;
    summarize_distortions(cloud.distortion_log, record);
    record.seed = 0;
    record.agg = result.aggregates;
    record.defined_count = result.defined_count;
    record.delta_mean =
        cloud.d_i >= 1.0 ? result.aggregates.mean / cloud.d_i - 1.0
                         : std::numeric_limits<double>::quiet_NaN();
    record.trace = stats.trace;
    record.vdi = stats.vdi;
    record.r2 = stats.r2_mean;
    if (args.timing) {
        const auto elapsed = std::chrono::steady_clock::now() - start;
        record.wall_ms =
            std::chrono::duration_cast<std::chrono::duration<double, std::milli>>(elapsed)
                .count();
    }

    std::ofstream file;
    std::ostream& out = open_sink(args.out, file);
    if (args.format == "csv")
        out << csv_header() << '\n' << to_csv(record) << '\n';
    else
        out << to_json(record).dump() << '\n';

    if (!args.lid_out.empty()) {
        std::ofstream lid(args.lid_out, std::ios::trunc);
        if (!lid) throw std::runtime_error("cannot open " + args.lid_out);
        lid << lid_result_to_text(result, /*with_per_point=*/true);
    }
    return 0;
}

int run_sweep_command(const SweepArgs& args) {
    std::ifstream in(args.config_path);
    if (!in) throw std::runtime_error("cannot open config " + args.config_path);
    nlohmann::json j = nlohmann::json::parse(in);
    if (!args.out_override.empty()) j["out"] = args.out_override;
    if (!args.format_override.empty()) j["format"] = args.format_override;
    if (args.timing) j["timing"] = true;
    const SweepConfig config = sweep_config_from_json(j);
    const int written = run_sweep(config, std::cerr);
    std::cout << "wrote " << written << " records to " << config.out_path << '\n';
    return 0;
}

int run_fractal(const FractalArgs& args) {
    const FractalCloud butterfly = hofstadter_cloud(args.q_max, args.k_grid);
    std::cout << "butterfly points=" << butterfly.points.rows() << " q_max=" << args.q_max
              << " k_grid=" << args.k_grid << '\n';

    double fitted = 0.0;
    if (args.box_count || !args.out.empty()) { // exports carry the fitted dimension
        const Matrix unit = normalize_unit_square(butterfly.points);
        const BoxCountResult box = box_count_dimension(unit, args.j_min, args.j_max);
        fitted = box.dimension;
        std::cout << "box_count dimension=" << format_double(box.dimension)
                  << " residual=" << format_double(box.fit_residual) << " scales=2^-"
                  << args.j_min << "..2^-" << args.j_max
                  << " excluded_extremes=" << (box.excluded_extremes ? 1 : 0) << '\n';
    }

    if (args.lid) {
        std::vector<int> ks;
        for (const auto& item : split_list(args.ks)) ks.push_back(std::stoi(item));
        std::vector<EstimatorMethod> methods;
        for (const auto& item : split_list(args.methods)) methods.push_back(method_from_name(item));
        const auto rows = fractal_lid_suite(butterfly, ks, args.subsample, methods,
                                            derive_stream(args.seed, "fractal/lid"));
        std::cout << "method,k,mean,std,defined\n";
        for (const auto& row : rows)
            std::cout << row.method << ',' << row.k << ',' << format_double(row.mean) << ','
                      << format_double(row.stddev) << ',' << row.defined << '\n';
    }

    if (!args.out.empty()) {
        const PointCloud cloud = fractal_to_cloud(butterfly, fitted,
                                                  derive_stream(args.seed, "fractal/cloud"));
        save_cloud(cloud, args.out);
        std::cout << "wrote " << args.out << ".bin\n";
    }
    return 0;
}

int run_stats(const StatsArgs& args) {
    const PointCloud cloud = load_cloud(args.in);
    const CovStats stats = covariance_stats(cloud);
    std::ofstream file;
    std::ostream& out = open_sink(args.out, file);
    out << "family,n,k_param,k1,k2,d_i,d_a,N,trace,vdi,r2\n";
    out << cloud.family << ',' << cloud.n << ',' << cloud.k_param << ',' << cloud.k1 << ','
        << cloud.k2 << ',' << format_double(cloud.d_i) << ',' << cloud.ambient() << ','
        << cloud.count() << ',' << format_double(stats.trace) << ','
        << format_double(stats.vdi) << ',' << format_double(stats.r2_mean) << '\n';
    return 0;
}

} // namespace

int cli_main(int argc, const char* const* argv) {
    CLI::App app{"point-cloud generation and intrinsic-dimension benchmarking"};
    app.require_subcommand(1);

    int threads = 0;
    app.add_option("--threads", threads, "worker cap (default: GEODIM_THREADS or hardware)");

    GenerateArgs gen;
    auto* generate = app.add_subcommand("generate", "sample a manifold point cloud");
    generate->add_option("--family", gen.family, "manifold family")->required();
    generate->add_option("--n", gen.n, "group dimension n");
    generate->add_option("--k", gen.k, "subgroup parameter k");
    generate->add_option("--k1", gen.k1, "first flag block");
    generate->add_option("--k2", gen.k2, "second flag block");
    generate->add_option("--d-i", gen.d_i, "baseline intrinsic dimension");
    generate->add_option("--ambient", gen.ambient, "ambient dimension (default minimal)");
    generate->add_option("--N", gen.count, "sample count")->required();
    generate->add_option("--seed", gen.seed, "master seed");
    generate->add_option("--out", gen.out, "output base path")->required();
    generate->add_option("--csv", gen.csv, "optional CSV export path");

    PerturbArgs pert;
    auto* perturb_cmd = app.add_subcommand("perturb", "squeeze and/or add noise to a cloud");
    perturb_cmd->add_option("--in", pert.in, "input base path")->required();
    perturb_cmd->add_option("--out", pert.out, "output base path")->required();
    auto* sq = perturb_cmd->add_option("--squeeze", pert.squeeze_eps, "squeeze strength in [0,2]");
    perturb_cmd->add_option("--noise-kind", pert.noise_kind,
                            "isotropic | uncorrelated | anisotropic");
    perturb_cmd->add_option("--sigma2", pert.sigma2, "noise scale sigma^2");
    perturb_cmd->add_option("--seed", pert.seed, "master seed");

    EstimateArgs est;
    auto* estimate = app.add_subcommand("estimate", "run one estimator over a cloud");
    estimate->add_option("--in", est.in, "input base path")->required();
    estimate->add_option("--method", est.method, "estimator method")->required();
    estimate->add_option("--k", est.k, "neighborhood size (default: per-method)");
    estimate->add_option("--lid-out", est.lid_out,
                         "write the per-point result in structured text form");
    estimate->add_option("--alpha", est.alpha, "twonn discard fraction");
    estimate->add_option("--epsilon", est.epsilon, "lpca threshold");
    estimate->add_option("--k1", est.k1, "corrint lower scale");
    estimate->add_option("--k2", est.k2, "corrint upper scale");
    estimate->add_option("--calib-sets", est.calib_sets, "danco calibration sets");
    estimate->add_option("--out", est.out, "output file (default stdout)");
    estimate->add_option("--format", est.format, "csv | jsonl")
        ->check(CLI::IsMember({"csv", "jsonl"}));
    estimate->add_flag("--timing", est.timing, "record wall-clock time");
    estimate->add_option("--knn-cache", est.knn_cache, "neighbor-table cache directory");

    SweepArgs sweep_args;
    auto* sweep_cmd = app.add_subcommand("sweep", "run a configured benchmark sweep");
    sweep_cmd->add_option("--config", sweep_args.config_path, "JSON sweep config")->required();
    sweep_cmd->add_option("--out", sweep_args.out_override, "output path override");
    sweep_cmd->add_option("--format", sweep_args.format_override, "format override");
    sweep_cmd->add_flag("--timing", sweep_args.timing, "record wall-clock times");

    FractalArgs frac;
    auto* fractal_cmd = app.add_subcommand("fractal", "butterfly spectrum tools");
    fractal_cmd->add_option("--q-max", frac.q_max, "largest flux denominator");
    fractal_cmd->add_option("--k-grid", frac.k_grid, "momentum grid points per axis");
    fractal_cmd->add_flag("--box-count", frac.box_count, "fit the box-counting dimension");
    fractal_cmd->add_option("--j-min", frac.j_min, "finest scale exponent lower bound");
    fractal_cmd->add_option("--j-max", frac.j_max, "finest scale exponent upper bound");
    fractal_cmd->add_flag("--lid", frac.lid, "run the local-ID suite");
    fractal_cmd->add_option("--ks", frac.ks, "comma-separated neighborhood sizes");
    fractal_cmd->add_option("--subsample", frac.subsample, "points drawn for the LID suite");
    fractal_cmd->add_option("--methods", frac.methods, "comma-separated estimator list");
    fractal_cmd->add_option("--seed", frac.seed, "master seed");
    fractal_cmd->add_option("--out", frac.out, "export base path");

    StatsArgs stats_args;
    auto* stats_cmd = app.add_subcommand("stats", "covariance statistics of a cloud");
    stats_cmd->add_option("--in", stats_args.in, "input base path")->required();
    stats_cmd->add_option("--out", stats_args.out, "output file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    if (threads > 0) set_thread_cap(threads);
    pert.has_squeeze = sq->count() > 0;

    try {
        if (generate->parsed()) return run_generate(gen);
        if (perturb_cmd->parsed()) return run_perturb(pert);
        if (estimate->parsed()) return run_estimate(est);
        if (sweep_cmd->parsed()) return run_sweep_command(sweep_args);
        if (fractal_cmd->parsed()) return run_fractal(frac);
        if (stats_cmd->parsed()) return run_stats(stats_args);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 1;
}

} // namespace geodim
