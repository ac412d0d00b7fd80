#include "geodim/neighbors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <vector>

#include "geodim/parallel.hpp"

namespace geodim {

double squared_distance(const double* a, const double* b, int dim) {
    if (dim <= 16) {
        double acc = 0.0;
        for (int i = 0; i < dim; ++i) {
            const double d = a[i] - b[i];
            acc += d * d;
        }
        return acc;
    }
    const int half = dim / 2;
    return squared_distance(a, b, half) + squared_distance(a + half, b + half, dim - half);
}

NeighborTable knn(const Matrix& data, int k) {
    const int n = static_cast<int>(data.rows());
    const int dim = static_cast<int>(data.cols());
    if (k < 1 || k >= n) throw std::invalid_argument("knn: require 1 <= k <= N - 1");

    // row-major copy so each sample is contiguous
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> rows = data;

    NeighborTable table;
    table.k = k;
    table.indices.resize(n, k);
    table.distances.resize(n, k);

    parallel_for(0, static_cast<std::size_t>(n), [&](std::size_t qi) {
        const int i = static_cast<int>(qi);
        const double* q = rows.row(i).data();
        // max-heap over (dist^2, index), lexicographic
        std::vector<std::pair<double, int>> heap;
        heap.reserve(static_cast<std::size_t>(k) + 1);
        for (int j = 0; j < n; ++j) {
            if (j == i) continue;
            const double d2 = squared_distance(q, rows.row(j).data(), dim);
            const std::pair<double, int> cand{d2, j};
            if (static_cast<int>(heap.size()) < k) {
                heap.push_back(cand);
                std::push_heap(heap.begin(), heap.end());
            } else if (cand < heap.front()) {
                std::pop_heap(heap.begin(), heap.end());
                heap.back() = cand;
                std::push_heap(heap.begin(), heap.end());
            }
        }
        std::sort(heap.begin(), heap.end());
        for (int j = 0; j < k; ++j) {
            table.indices(i, j) = heap[static_cast<std::size_t>(j)].second;
            table.distances(i, j) = std::sqrt(heap[static_cast<std::size_t>(j)].first);
        }
    });
    return table;
}

NeighborTable knn(const PointCloud& cloud, int k) { return knn(cloud.data, k); }

namespace {

std::string cache_file(const std::string& dir, std::uint64_t digest, int k) {
    char name[64];
    std::snprintf(name, sizeof(name), "%016llx_k%d.knn",
                  static_cast<unsigned long long>(digest), k);
    return (std::filesystem::path(dir) / name).string();
}

} // namespace

bool load_knn_cache(const std::string& dir, std::uint64_t digest, int k, NeighborTable& out) {
    std::ifstream in(cache_file(dir, digest, k), std::ios::binary);
    if (!in) return false;
    std::int64_t n = 0, kk = 0;
    in.read(reinterpret_cast<char*>(&n), sizeof(n));
    in.read(reinterpret_cast<char*>(&kk), sizeof(kk));
    if (!in || kk != k || n < 1) return false;
    out.k = k;
    out.indices.resize(n, k);
    out.distances.resize(n, k);
    for (std::int64_t i = 0; i < n; ++i)
        for (int j = 0; j < k; ++j) {
            std::int32_t idx = 0;
            double dist = 0.0;
            in.read(reinterpret_cast<char*>(&idx), sizeof(idx));
            in.read(reinterpret_cast<char*>(&dist), sizeof(dist));
            if (!in) return false;
            out.indices(i, j) = idx;
            out.distances(i, j) = dist;
        }
    return true;
}

void save_knn_cache(const std::string& dir, std::uint64_t digest, int k,
                    const NeighborTable& table) {
    std::filesystem::create_directories(dir);
    std::ofstream out(cache_file(dir, digest, k), std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open knn cache file");
    const std::int64_t n = table.indices.rows();
    const std::int64_t kk = k;
    out.write(reinterpret_cast<const char*>(&n), sizeof(n));
    out.write(reinterpret_cast<const char*>(&kk), sizeof(kk));
    for (std::int64_t i = 0; i < n; ++i)
        for (int j = 0; j < k; ++j) {
            const std::int32_t idx = table.indices(i, j);
            const double dist = table.distances(i, j);
            out.write(reinterpret_cast<const char*>(&idx), sizeof(idx));
            out.write(reinterpret_cast<const char*>(&dist), sizeof(dist));
        }
}

} // namespace geodim
