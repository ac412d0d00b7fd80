#include "geodim/sweep.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <ostream>
#include <set>
#include <stdexcept>

#include "geodim/analysis.hpp"
#include "geodim/cloud_io.hpp"

namespace geodim {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::vector<int> grid_from_json(const nlohmann::json& j) {
    std::vector<int> grid;
    if (j.is_array()) {
        for (const auto& v : j) grid.push_back(v.get<int>());
    } else if (j.is_object()) {
        const double lo = j.at("log_from").get<double>();
        const double hi = j.at("log_to").get<double>();
        const int points = j.at("points").get<int>();
        if (points < 1 || !(lo > 0.0) || !(hi >= lo))
            throw std::invalid_argument("grid: bad log specification");
        for (int i = 0; i < points; ++i) {
            const double f = points == 1
                                 ? lo
                                 : lo * std::pow(hi / lo, static_cast<double>(i) / (points - 1));
            const int n = static_cast<int>(std::lround(f));
            if (grid.empty() || n > grid.back()) grid.push_back(n);
        }
    } else {
        throw std::invalid_argument("grid: expected array or log specification");
    }
    return grid;
}

} // namespace

const char* sweep_kind_name(SweepKind kind) {
    switch (kind) {
        case SweepKind::FixK_SweepN: return "fix-k-sweep-n";
        case SweepKind::FixN_SweepK: return "fix-n-sweep-k";
        case SweepKind::FixRatio_SweepN: return "fix-ratio-sweep-n";
    }
    return "unknown";
}

SweepKind sweep_kind_from_name(std::string_view name) {
    for (SweepKind k :
         {SweepKind::FixK_SweepN, SweepKind::FixN_SweepK, SweepKind::FixRatio_SweepN})
        if (name == sweep_kind_name(k)) return k;
    throw std::invalid_argument("unknown sweep kind: " + std::string(name));
}

void SweepConfig::validate() const {
    if (specs.empty()) throw std::invalid_argument("sweep: no manifold specs");
    if (estimators.empty()) throw std::invalid_argument("sweep: no estimator configs");
    if (seeds.empty()) throw std::invalid_argument("sweep: need at least one seed");
    if (n_grid.empty()) throw std::invalid_argument("sweep: empty N grid");
    if (kind == SweepKind::FixRatio_SweepN && ratios.empty())
        throw std::invalid_argument("sweep: empty ratio set");
    if (kind == SweepKind::FixN_SweepK && k_grid.empty())
        throw std::invalid_argument("sweep: empty k grid");
    if (format != "csv" && format != "jsonl")
        throw std::invalid_argument("sweep: format must be csv or jsonl");
    if (out_path.empty()) throw std::invalid_argument("sweep: missing output path");
    for (const auto& spec : specs) spec.validate();
}

ManifoldSpec spec_from_json(const nlohmann::json& j) {
    ManifoldSpec spec;
    spec.family = family_from_name(j.at("family").get<std::string>());
    spec.n = j.value("n", 0);
    spec.k = j.value("k", 0);
    spec.k1 = j.value("k1", 0);
    spec.k2 = j.value("k2", 0);
    spec.d_i_override = j.value("d_i", 0);
    spec.ambient_target = j.value("ambient", 0LL);
    spec.validate();
    return spec;
}

EstimatorConfig estimator_from_json(const nlohmann::json& j) {
    EstimatorConfig config =
        default_estimator_config(method_from_name(j.at("method").get<std::string>()));
    config.k = j.value("k", config.k);
    config.epsilon = j.value("epsilon", config.epsilon);
    config.alpha = j.value("alpha", config.alpha);
    config.k1 = j.value("k1", config.k1);
    config.k2 = j.value("k2", config.k2);
    config.calib_sets = j.value("calib_sets", config.calib_sets);
    config.abid_self_pairs = j.value("abid_self_pairs", config.abid_self_pairs);
    config.lpca_mean_center = j.value("lpca_mean_center", config.lpca_mean_center);
    return config;
}

SweepConfig sweep_config_from_json(const nlohmann::json& j) {
    SweepConfig config;
    for (const auto& s : j.at("specs")) config.specs.push_back(spec_from_json(s));
    for (const auto& e : j.at("estimators")) config.estimators.push_back(estimator_from_json(e));
    config.kind = sweep_kind_from_name(j.value("sweep", "fix-k-sweep-n"));
    if (j.contains("n_grid")) {
        config.n_grid = grid_from_json(j.at("n_grid"));
    } else {
        // default protocol: N from 100 to 10000, logarithmic, 7 points
        config.n_grid =
            grid_from_json({{"log_from", 100.0}, {"log_to", 10000.0}, {"points", 7}});
    }
    if (j.contains("k_grid"))
        config.k_grid = grid_from_json(j.at("k_grid"));
    else if (config.kind == SweepKind::FixN_SweepK)
        config.k_grid = {100};
    if (j.contains("ratios"))
        for (const auto& r : j.at("ratios")) config.ratios.push_back(r.get<double>());

    std::vector<double> squeeze{0.0};
    if (j.contains("squeeze")) {
        squeeze.clear();
        for (const auto& e : j.at("squeeze")) squeeze.push_back(e.get<double>());
    }
    std::vector<std::pair<NoiseKind, double>> noise{{NoiseKind::Isotropic, 0.0}};
    if (j.contains("noise")) {
        noise.clear();
        for (const auto& kind : j.at("noise").at("kinds"))
            for (const auto& s2 : j.at("noise").at("sigma2"))
                noise.emplace_back(noise_kind_from_name(kind.get<std::string>()),
                                   s2.get<double>());
    }
    for (double eps : squeeze)
        for (const auto& [kind, sigma2] : noise)
            config.distortions.push_back({eps, kind, sigma2});

    if (j.contains("seeds"))
        for (const auto& s : j.at("seeds")) config.seeds.push_back(s.get<std::uint64_t>());
    else
        config.seeds = {1, 2, 3};
    config.out_path = j.value("out", "");
    config.format = j.value("format", "csv");
    config.timing = j.value("timing", false);
    config.validate();
    return config;
}

EstimatorConfig clamp_config(EstimatorConfig config, int sample_count) {
    if (config.method == EstimatorMethod::CorrInt) {
        if (config.k2 >= sample_count - 1) {
            config.k2 = sample_count - 2;
            config.k1 = std::max(2, config.k2 / 2);
        }
        config.k = config.k2;
    } else if (config.k >= sample_count - 1) {
        config.k = sample_count - 2;
    }
    return config;
}

BenchmarkRecord run_cell(const ManifoldSpec& spec, const EstimatorConfig& config,
                         int sample_count, const DistortionCell& distortion,
                         std::uint64_t seed, bool timing) {
    const EstimatorConfig effective = clamp_config(config, sample_count);

    BenchmarkRecord record;
    record.family = family_name(spec.family);
    record.n = spec.n;
    record.k_param = spec.k;
    record.k1 = spec.k1;
    record.k2 = spec.k2;
    record.d_i = intrinsic_dim(spec);
    record.d_a = ambient_dim(spec);
    record.sample_count = sample_count;
    record.k = effective.method == EstimatorMethod::CorrInt ? effective.k2 : effective.k;
    record.method = method_name(effective.method);
    record.alpha = effective.alpha;
    record.epsilon_lpca = effective.epsilon;
    record.distortion = distortion.squeeze_eps;
    record.sigma2 = distortion.sigma2;
    record.noise_kind = distortion.sigma2 > 0.0 ? noise_kind_name(distortion.noise) : "none";
    record.seed = seed;
    record.agg = {kNaN, kNaN, kNaN, kNaN, kNaN};
    record.delta_mean = kNaN;
    record.defined_count = 0;
    record.trace = kNaN;
    record.vdi = kNaN;
    record.r2 = kNaN;
    record.wall_ms = 0.0;

    const auto start = std::chrono::steady_clock::now();

    const RandomStream root =
        derive_stream(seed, spec.label() + "/N" + std::to_string(sample_count));
    PointCloud cloud = sample_cloud(spec, sample_count, root);
    if (distortion.squeeze_eps > 0.0)
        cloud = squeeze(cloud, distortion.squeeze_eps, root.child("squeeze"));
    if (distortion.sigma2 > 0.0)
        cloud = add_noise(cloud, {distortion.noise, distortion.sigma2}, root.child("noise"));

    const CovStats stats = covariance_stats(cloud);
    record.trace = stats.trace;
    record.vdi = stats.vdi;
    record.r2 = stats.r2_mean;

    const LidResult result = run_estimator(cloud, effective);
    record.agg = result.aggregates;
    record.defined_count = result.defined_count;
    record.delta_mean = relative_error(result.aggregates.mean,
                                       static_cast<int>(std::lround(record.d_i)), record.d_a)
                            .delta;

    if (timing) {
        const auto elapsed = std::chrono::steady_clock::now() - start;
        record.wall_ms =
            std::chrono::duration_cast<std::chrono::duration<double, std::milli>>(elapsed).count();
    }
    return record;
}

void write_records(const std::vector<BenchmarkRecord>& records, const std::string& path,
                   const std::string& format, bool append) {
    const bool existed = std::filesystem::exists(path) && std::filesystem::file_size(path) > 0;
    std::ofstream out(path, append ? std::ios::app : std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + path);
    if (format == "csv" && (!append || !existed)) out << csv_header() << '\n';
    for (const auto& record : records) {
        if (format == "csv")
            out << to_csv(record) << '\n';
        else
            out << to_json(record).dump() << '\n';
    }
    if (!out) throw std::runtime_error("write failed: " + path);
}

std::vector<BenchmarkRecord> read_records(const std::string& path, const std::string& format) {
    std::vector<BenchmarkRecord> records;
    std::ifstream in(path);
    if (!in) return records;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (format == "csv" && first && line == csv_header()) {
            first = false;
            continue;
        }
        first = false;
        records.push_back(format == "csv" ? record_from_csv(line)
                                          : record_from_json(nlohmann::json::parse(line)));
    }
    return records;
}

int run_sweep(const SweepConfig& config, std::ostream& log) {
    config.validate();

    std::set<std::string> done;
    for (const auto& record : read_records(config.out_path, config.format))
        done.insert(coordinate_key(record));

    struct Cell {
        int sample_count;
        int k; // 0 = keep the estimator's own k
    };
    std::vector<Cell> cells;
    switch (config.kind) {
        case SweepKind::FixRatio_SweepN:
            for (int n : config.n_grid)
                for (double ratio : config.ratios)
                    cells.push_back({n, std::max(1, static_cast<int>(std::lround(ratio * n)))});
            break;
        case SweepKind::FixN_SweepK:
            for (int n : config.n_grid)
                for (int k : config.k_grid) cells.push_back({n, k});
            break;
        case SweepKind::FixK_SweepN:
            // each estimator keeps its configured k
            for (int n : config.n_grid) cells.push_back({n, 0});
            break;
    }

    std::vector<BenchmarkRecord> fresh;
    for (const auto& spec : config.specs)
        for (const auto& base : config.estimators)
            for (const auto& cell : cells)
                for (const auto& distortion : config.distortions)
                    for (std::uint64_t seed : config.seeds) {
                        EstimatorConfig config_k = base;
                        if (cell.k > 0) {
                            if (config_k.method == EstimatorMethod::CorrInt) {
                                config_k.k2 = cell.k;
                                config_k.k1 = std::max(2, cell.k / 2);
                            } else {
                                config_k.k = cell.k;
                            }
                        }
                        const EstimatorConfig effective =
                            clamp_config(config_k, cell.sample_count);

                        // coordinate skeleton, used both for the resume check
                        // and as the error record when the cell fails
                        BenchmarkRecord record;
                        record.family = family_name(spec.family);
                        record.n = spec.n;
                        record.k_param = spec.k;
                        record.k1 = spec.k1;
                        record.k2 = spec.k2;
                        record.d_i = intrinsic_dim(spec);
                        record.d_a = ambient_dim(spec);
                        record.sample_count = cell.sample_count;
                        record.k = effective.method == EstimatorMethod::CorrInt ? effective.k2
                                                                                : effective.k;
                        record.method = method_name(effective.method);
                        record.alpha = effective.alpha;
                        record.epsilon_lpca = effective.epsilon;
                        record.distortion = distortion.squeeze_eps;
                        record.sigma2 = distortion.sigma2;
                        record.noise_kind = distortion.sigma2 > 0.0
                                                ? noise_kind_name(distortion.noise)
                                                : "none";
                        record.seed = seed;
                        record.agg = {kNaN, kNaN, kNaN, kNaN, kNaN};
                        record.delta_mean = kNaN;
                        record.trace = kNaN;
                        record.vdi = kNaN;
                        record.r2 = kNaN;

                        const std::string key = coordinate_key(record);
                        if (done.count(key)) {
                            log << "skip completed cell: " << key << '\n';
                            continue;
                        }
                        done.insert(key);
                        try {
                            record = run_cell(spec, config_k, cell.sample_count, distortion,
                                              seed, config.timing);
                        } catch (const std::exception& e) {
                            // failed cells stay in the stream as NaN records
                            log << "cell failed: " << key << ": " << e.what() << '\n';
                        }
                        fresh.push_back(std::move(record));
                    }

    write_records(fresh, config.out_path, config.format, /*append=*/true);
    return static_cast<int>(fresh.size());
}

} // namespace geodim
