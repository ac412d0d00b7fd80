#pragma once

#include <cstdint>
#include <string>

#include "geodim/linalg.hpp"
#include "geodim/manifold.hpp"

namespace geodim {

/// Exact Euclidean k-nearest neighbors: ascending distances per row, self
/// excluded, ties broken by the lower point index.
struct NeighborTable {
    int k = 0;
    Eigen::MatrixXi indices;   // N x k
    Eigen::MatrixXd distances; // N x k
};

/// Exact O(N^2 d) blocked scan. Requires 1 <= k <= N - 1.
NeighborTable knn(const Matrix& data, int k);
NeighborTable knn(const PointCloud& cloud, int k);

/// Squared Euclidean distance with pairwise (blocked) summation.
double squared_distance(const double* a, const double* b, int dim);

// optional on-disk cache keyed by (cloud digest, k)
bool load_knn_cache(const std::string& dir, std::uint64_t digest, int k, NeighborTable& out);
void save_knn_cache(const std::string& dir, std::uint64_t digest, int k,
                    const NeighborTable& table);

} // namespace geodim
