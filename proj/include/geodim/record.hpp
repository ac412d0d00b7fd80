#pragma once

#include <cstdint>
#include <string>

#include <json.hpp>

#include "geodim/estimators.hpp"

namespace geodim {

/// One sweep cell: spec coordinates, distortion, estimator configuration and
/// the resulting aggregates plus covariance statistics. Field set matches
/// the CSV header exactly; JSONL mirrors it.
struct BenchmarkRecord {
    std::string family;
    int n = 0, k_param = 0, k1 = 0, k2 = 0;
    double d_i = 0.0;
    long long d_a = 0;
    int sample_count = 0; // N column
    int k = 0;            // estimator neighborhood
    std::string method;
    double alpha = 0.0;
    double epsilon_lpca = 0.0;
    double distortion = 0.0; // squeeze epsilon
    double sigma2 = 0.0;
    std::string noise_kind = "none";
    std::uint64_t seed = 0;
    AggregateSet agg;
    double delta_mean = 0.0;
    long defined_count = 0;
    double trace = 0.0, vdi = 0.0, r2 = 0.0;
    double wall_ms = 0.0;
};

const std::string& csv_header();
std::string to_csv(const BenchmarkRecord& record);
BenchmarkRecord record_from_csv(const std::string& line);
nlohmann::json to_json(const BenchmarkRecord& record);
BenchmarkRecord record_from_json(const nlohmann::json& j);

/// Digest of the coordinate columns (everything except results and timing);
/// keys resumability.
std::string coordinate_key(const BenchmarkRecord& record);

} // namespace geodim
