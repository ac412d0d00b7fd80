#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "geodim/estimators.hpp"
#include "geodim/manifold.hpp"
#include "geodim/perturb.hpp"
#include "geodim/record.hpp"

namespace geodim {

enum class SweepKind { FixK_SweepN, FixN_SweepK, FixRatio_SweepN };

const char* sweep_kind_name(SweepKind kind);
SweepKind sweep_kind_from_name(std::string_view name);

struct DistortionCell {
    double squeeze_eps = 0.0;
    NoiseKind noise = NoiseKind::Isotropic;
    double sigma2 = 0.0;
};

struct SweepConfig {
    std::vector<ManifoldSpec> specs;
    std::vector<EstimatorConfig> estimators;
    SweepKind kind = SweepKind::FixK_SweepN;
    std::vector<int> n_grid;
    std::vector<int> k_grid;
    std::vector<double> ratios;
    std::vector<DistortionCell> distortions; // defaults to a single no-op cell
    std::vector<std::uint64_t> seeds;
    std::string out_path;
    std::string format = "csv"; // csv | jsonl
    bool timing = false;        // wall_ms stays 0 unless enabled

    void validate() const;
};

ManifoldSpec spec_from_json(const nlohmann::json& j);
EstimatorConfig estimator_from_json(const nlohmann::json& j);
SweepConfig sweep_config_from_json(const nlohmann::json& j);

/// Small-sample clamp: k >= N - 1 collapses to k = N - 2; CorrInt clamps
/// its upper scale the same way and keeps k1 = k2 / 2.
EstimatorConfig clamp_config(EstimatorConfig config, int sample_count);

/// Computes one sweep cell from its coordinates alone.
BenchmarkRecord run_cell(const ManifoldSpec& spec, const EstimatorConfig& config,
                         int sample_count, const DistortionCell& distortion,
                         std::uint64_t seed, bool timing);

/// Deterministic record stream ordered by (spec, estimator, cell, seed);
/// appends to the configured output, skipping cells already present.
/// Per-cell failures become NaN-valued records. Returns the number of
/// records written; `log` receives one line per skipped or failed cell.
int run_sweep(const SweepConfig& config, std::ostream& log);

void write_records(const std::vector<BenchmarkRecord>& records, const std::string& path,
                   const std::string& format, bool append);
std::vector<BenchmarkRecord> read_records(const std::string& path, const std::string& format);

} // namespace geodim
