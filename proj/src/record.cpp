#include "geodim/record.hpp"

#include <charconv>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "geodim/cloud_io.hpp"

namespace geodim {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            fields.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    fields.push_back(cur);
    return fields;
}

double json_double(const nlohmann::json& j, const char* key) {
    const auto it = j.find(key);
    if (it == j.end() || it->is_null()) return kNaN; // JSON has no NaN literal
    return it->get<double>();
}

nlohmann::json double_or_null(double v) {
    if (std::isfinite(v)) return v;
    return nullptr;
}

} // namespace

const std::string& csv_header() {
    static const std::string header =
        "family,n,k_param,k1,k2,d_i,d_a,N,k,method,alpha,epsilon_lpca,distortion,sigma2,"
        "noise_kind,seed,agg_mean,agg_median,agg_mode,agg_mom,agg_mem,delta_mean,"
        "defined_count,trace,vdi,r2,wall_ms";
    return header;
}

std::string to_csv(const BenchmarkRecord& r) {
    std::ostringstream out;
    out << r.family << ',' << r.n << ',' << r.k_param << ',' << r.k1 << ',' << r.k2 << ','
        << format_double(r.d_i) << ',' << r.d_a << ',' << r.sample_count << ',' << r.k << ','
        << r.method << ',' << format_double(r.alpha) << ',' << format_double(r.epsilon_lpca)
        << ',' << format_double(r.distortion) << ',' << format_double(r.sigma2) << ','
        << r.noise_kind << ',' << r.seed << ',' << format_double(r.agg.mean) << ','
        << format_double(r.agg.median) << ',' << format_double(r.agg.mode) << ','
        << format_double(r.agg.median_of_means) << ',' << format_double(r.agg.mean_of_medians)
        << ',' << format_double(r.delta_mean) << ',' << r.defined_count << ','
        << format_double(r.trace) << ',' << format_double(r.vdi) << ',' << format_double(r.r2)
        << ',' << format_double(r.wall_ms);
    return out.str();
}

BenchmarkRecord record_from_csv(const std::string& line) {
    const auto f = split_csv(line);
    if (f.size() != 27) throw std::runtime_error("record_from_csv: expected 27 fields");
    BenchmarkRecord r;
    std::size_t i = 0;
    r.family = f[i++];
    r.n = std::stoi(f[i++]);
    r.k_param = std::stoi(f[i++]);
    r.k1 = std::stoi(f[i++]);
    r.k2 = std::stoi(f[i++]);
    r.d_i = parse_double(f[i++]);
    r.d_a = std::stoll(f[i++]);
    r.sample_count = std::stoi(f[i++]);
    r.k = std::stoi(f[i++]);
    r.method = f[i++];
    r.alpha = parse_double(f[i++]);
    r.epsilon_lpca = parse_double(f[i++]);
    r.distortion = parse_double(f[i++]);
    r.sigma2 = parse_double(f[i++]);
    r.noise_kind = f[i++];
    r.seed = std::stoull(f[i++]);
    r.agg.mean = parse_double(f[i++]);
    r.agg.median = parse_double(f[i++]);
    r.agg.mode = parse_double(f[i++]);
    r.agg.median_of_means = parse_double(f[i++]);
    r.agg.mean_of_medians = parse_double(f[i++]);
    r.delta_mean = parse_double(f[i++]);
    r.defined_count = std::stol(f[i++]);
    r.trace = parse_double(f[i++]);
    r.vdi = parse_double(f[i++]);
    r.r2 = parse_double(f[i++]);
    r.wall_ms = parse_double(f[i++]);
    return r;
}

nlohmann::json to_json(const BenchmarkRecord& r) {
    nlohmann::json j;
    j["family"] = r.family;
    j["n"] = r.n;
    j["k_param"] = r.k_param;
    j["k1"] = r.k1;
    j["k2"] = r.k2;
    j["d_i"] = double_or_null(r.d_i);
    j["d_a"] = r.d_a;
    j["N"] = r.sample_count;
    j["k"] = r.k;
    j["method"] = r.method;
    j["alpha"] = double_or_null(r.alpha);
    j["epsilon_lpca"] = double_or_null(r.epsilon_lpca);
    j["distortion"] = double_or_null(r.distortion);
    j["sigma2"] = double_or_null(r.sigma2);
    j["noise_kind"] = r.noise_kind;
    j["seed"] = r.seed;
    j["agg_mean"] = double_or_null(r.agg.mean);
    j["agg_median"] = double_or_null(r.agg.median);
    j["agg_mode"] = double_or_null(r.agg.mode);
    j["agg_mom"] = double_or_null(r.agg.median_of_means);
    j["agg_mem"] = double_or_null(r.agg.mean_of_medians);
    j["delta_mean"] = double_or_null(r.delta_mean);
    j["defined_count"] = r.defined_count;
    j["trace"] = double_or_null(r.trace);
    j["vdi"] = double_or_null(r.vdi);
    j["r2"] = double_or_null(r.r2);
    j["wall_ms"] = double_or_null(r.wall_ms);
    return j;
}

BenchmarkRecord record_from_json(const nlohmann::json& j) {
    BenchmarkRecord r;
    r.family = j.at("family").get<std::string>();
    r.n = j.at("n").get<int>();
    r.k_param = j.at("k_param").get<int>();
    r.k1 = j.at("k1").get<int>();
    r.k2 = j.at("k2").get<int>();
    r.d_i = json_double(j, "d_i");
    r.d_a = j.at("d_a").get<long long>();
    r.sample_count = j.at("N").get<int>();
    r.k = j.at("k").get<int>();
    r.method = j.at("method").get<std::string>();
    r.alpha = json_double(j, "alpha");
    r.epsilon_lpca = json_double(j, "epsilon_lpca");
    r.distortion = json_double(j, "distortion");
    r.sigma2 = json_double(j, "sigma2");
    r.noise_kind = j.at("noise_kind").get<std::string>();
    r.seed = j.at("seed").get<std::uint64_t>();
    r.agg.mean = json_double(j, "agg_mean");
    r.agg.median = json_double(j, "agg_median");
    r.agg.mode = json_double(j, "agg_mode");
    r.agg.median_of_means = json_double(j, "agg_mom");
    r.agg.mean_of_medians = json_double(j, "agg_mem");
    r.delta_mean = json_double(j, "delta_mean");
    r.defined_count = j.at("defined_count").get<long>();
    r.trace = json_double(j, "trace");
    r.vdi = json_double(j, "vdi");
    r.r2 = json_double(j, "r2");
    r.wall_ms = json_double(j, "wall_ms");
    return r;
}

std::string coordinate_key(const BenchmarkRecord& r) {
    std::ostringstream out;
    out << r.family << '|' << r.n << '|' << r.k_param << '|' << r.k1 << '|' << r.k2 << '|'
        << r.d_a << '|' << r.sample_count << '|' << r.k << '|' << r.method << '|'
        << format_double(r.alpha) << '|' << format_double(r.epsilon_lpca) << '|'
        << format_double(r.distortion) << '|' << format_double(r.sigma2) << '|' << r.noise_kind
        << '|' << r.seed;
    return out.str();
}

} // namespace geodim
