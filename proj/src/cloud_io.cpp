#include "geodim/cloud_io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <system_error>

#include "geodim/errors.hpp"

namespace geodim {

namespace {

constexpr long long kCsvCellCap = 10'000'000;

void write_all(std::ofstream& out, const char* data, std::streamsize bytes,
               const std::string& path) {
    out.write(data, bytes);
    if (!out) throw std::runtime_error("write failed: " + path);
}

std::string meta_path(const std::string& base) { return base + ".meta"; }
std::string bin_path(const std::string& base) { return base + ".bin"; }

} // namespace

std::string format_double(double v) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    if (ec != std::errc{}) throw std::runtime_error("format_double failed");
    return std::string(buf, end);
}

double parse_double(const std::string& text) {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size())
        throw std::runtime_error("parse_double: bad value '" + text + "'");
    return v;
}

void save_cloud(const PointCloud& cloud, const std::string& base_path) {
    {
        std::ofstream bin(bin_path(base_path), std::ios::binary | std::ios::trunc);
        if (!bin) throw std::runtime_error("cannot open " + bin_path(base_path));
        // row-major stream of doubles; host is little-endian
        std::vector<double> row(cloud.ambient());
        for (int i = 0; i < cloud.count(); ++i) {
            for (int j = 0; j < cloud.ambient(); ++j) row[static_cast<std::size_t>(j)] = cloud.data(i, j);
            write_all(bin, reinterpret_cast<const char*>(row.data()),
                      static_cast<std::streamsize>(row.size() * sizeof(double)), bin_path(base_path));
        }
    }
    std::ofstream meta(meta_path(base_path), std::ios::trunc);
    if (!meta) throw std::runtime_error("cannot open " + meta_path(base_path));
    meta << "geodim-cloud: 1\n";
    meta << "family: " << cloud.family << "\n";
    meta << "n: " << cloud.n << "\n";
    meta << "k: " << cloud.k_param << "\n";
    meta << "k1: " << cloud.k1 << "\n";
    meta << "k2: " << cloud.k2 << "\n";
    meta << "d_i: " << format_double(cloud.d_i) << "\n";
    meta << "d_a: " << cloud.ambient() << "\n";
    meta << "N: " << cloud.count() << "\n";
    meta << "non_manifold: " << (cloud.non_manifold ? 1 : 0) << "\n";
    meta << "seed_lineage: " << cloud.seed_lineage << "\n";
    for (const auto& entry : cloud.distortion_log) meta << "distortion: " << entry << "\n";
    if (!meta) throw std::runtime_error("write failed: " + meta_path(base_path));
}

PointCloud load_cloud(const std::string& base_path) {
    std::ifstream meta(meta_path(base_path));
    if (!meta) throw std::runtime_error("cannot open " + meta_path(base_path));
    PointCloud cloud;
    long long n_rows = -1, n_cols = -1;
    std::string line;
    while (std::getline(meta, line)) {
        const auto sep = line.find(": ");
        if (sep == std::string::npos) continue;
        const std::string key = line.substr(0, sep);
        const std::string value = line.substr(sep + 2);
        if (key == "family") cloud.family = value;
        else if (key == "n") cloud.n = std::stoi(value);
        else if (key == "k") cloud.k_param = std::stoi(value);
        else if (key == "k1") cloud.k1 = std::stoi(value);
        else if (key == "k2") cloud.k2 = std::stoi(value);
        else if (key == "d_i") cloud.d_i = parse_double(value);
        else if (key == "d_a") n_cols = std::stoll(value);
        else if (key == "N") n_rows = std::stoll(value);
        else if (key == "non_manifold") cloud.non_manifold = value == "1";
        else if (key == "seed_lineage") cloud.seed_lineage = value;
        else if (key == "distortion") cloud.distortion_log.push_back(value);
    }
    if (n_rows < 1 || n_cols < 1)
        throw std::runtime_error("sidecar missing N or d_a: " + meta_path(base_path));

    std::ifstream bin(bin_path(base_path), std::ios::binary);
    if (!bin) throw std::runtime_error("cannot open " + bin_path(base_path));
    cloud.data.resize(n_rows, n_cols);
    std::vector<double> row(static_cast<std::size_t>(n_cols));
    for (long long i = 0; i < n_rows; ++i) {
        bin.read(reinterpret_cast<char*>(row.data()),
                 static_cast<std::streamsize>(row.size() * sizeof(double)));
        if (!bin) throw std::runtime_error("truncated sample file: " + bin_path(base_path));
        for (long long j = 0; j < n_cols; ++j) cloud.data(i, j) = row[static_cast<std::size_t>(j)];
    }
    return cloud;
}

void export_cloud_csv(const PointCloud& cloud, const std::string& path) {
    const long long cells =
        static_cast<long long>(cloud.count()) * cloud.ambient();
    if (cells > kCsvCellCap)
        throw resource_limit_error("export_cloud_csv: cloud exceeds the CSV cell cap");
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + path);
    for (int i = 0; i < cloud.count(); ++i) {
        for (int j = 0; j < cloud.ambient(); ++j) {
            if (j) out << ',';
            out << format_double(cloud.data(i, j));
        }
        out << '\n';
    }
    if (!out) throw std::runtime_error("write failed: " + path);
}

std::uint64_t cloud_digest(const PointCloud& cloud) {
    std::uint64_t h = 0xCBF29CE484222325ull;
    auto feed = [&h](const void* data, std::size_t bytes) {
        const auto* p = static_cast<const unsigned char*>(data);
        for (std::size_t i = 0; i < bytes; ++i) {
            h ^= p[i];
            h *= 0x100000001B3ull;
        }
    };
    for (int i = 0; i < cloud.count(); ++i)
        for (int j = 0; j < cloud.ambient(); ++j) {
            const double v = cloud.data(i, j);
            feed(&v, sizeof(v));
        }
    return h;
}

} // namespace geodim
