#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "geodim/cloud_io.hpp"
#include "geodim/manifold.hpp"
#include "geodim/neighbors.hpp"
#include "geodim/parallel.hpp"

using namespace geodim;

namespace {

// independent quadratic-scan oracle: full sort per query
NeighborTable brute_oracle(const Matrix& data, int k) {
    const int n = static_cast<int>(data.rows());
    NeighborTable table;
    table.k = k;
    table.indices.resize(n, k);
    table.distances.resize(n, k);
    for (int i = 0; i < n; ++i) {
        std::vector<std::pair<double, int>> all;
        for (int j = 0; j < n; ++j) {
            if (j == i) continue;
            all.emplace_back((data.row(i) - data.row(j)).norm(), j);
        }
        std::sort(all.begin(), all.end());
        for (int j = 0; j < k; ++j) {
            table.indices(i, j) = all[static_cast<std::size_t>(j)].second;
            table.distances(i, j) = all[static_cast<std::size_t>(j)].first;
        }
    }
    return table;
}

} // namespace

TEST_SUITE("neighbors") {

TEST_CASE("collinear points") {
    Matrix data(3, 1);
    data << 0.0, 1.0, 3.0;
    const NeighborTable table = knn(data, 1);
    CHECK(table.indices(0, 0) == 1);
    CHECK(table.indices(1, 0) == 0);
    CHECK(table.indices(2, 0) == 1);
    CHECK(table.distances(0, 0) == doctest::Approx(1.0));
    CHECK(table.distances(1, 0) == doctest::Approx(1.0));
    CHECK(table.distances(2, 0) == doctest::Approx(2.0));
}

TEST_CASE("matches the quadratic-scan oracle on a random cloud") {
    const PointCloud cloud = sample_gaussian(10, 10, 300, derive_stream(1, "knn"));
    const NeighborTable fast = knn(cloud.data, 20);
    const NeighborTable slow = brute_oracle(cloud.data, 20);
    CHECK(fast.indices == slow.indices);
    for (int i = 0; i < 300; ++i)
        for (int j = 0; j < 20; ++j)
            CHECK(fast.distances(i, j) == doctest::Approx(slow.distances(i, j)).epsilon(1e-12));
}

TEST_CASE("duplicate points keep zero distances but exclude self") {
    Matrix data(4, 2);
    data << 0, 0, 0, 0, 1, 0, 2, 0;
    const NeighborTable table = knn(data, 2);
    CHECK(table.distances(0, 0) == 0.0);
    CHECK(table.indices(0, 0) == 1);
    CHECK(table.distances(1, 0) == 0.0);
    CHECK(table.indices(1, 0) == 0); // tie broken toward the lower index
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 2; ++j) CHECK(table.indices(i, j) != i);
}

TEST_CASE("ties break toward the lower point index") {
    Matrix data(3, 1);
    data << 0.0, -1.0, 1.0; // both neighbors of point 0 at distance 1
    const NeighborTable table = knn(data, 2);
    CHECK(table.indices(0, 0) == 1);
    CHECK(table.indices(0, 1) == 2);
}

TEST_CASE("first k' columns of a k-table equal the k'-table") {
    const PointCloud cloud = sample_sphere(3, 4, 150, derive_stream(2, "mono"));
    const NeighborTable big = knn(cloud.data, 25);
    for (int kp : {1, 5, 12}) {
        const NeighborTable small = knn(cloud.data, kp);
        CHECK(big.indices.leftCols(kp) == small.indices);
        CHECK(big.distances.leftCols(kp) == small.distances);
    }
}

TEST_CASE("output is independent of the worker count") {
    const PointCloud cloud = sample_gaussian(5, 5, 200, derive_stream(3, "threads"));
    const int saved = thread_cap();
    set_thread_cap(1);
    const NeighborTable serial = knn(cloud.data, 10);
    set_thread_cap(7);
    const NeighborTable parallel = knn(cloud.data, 10);
    set_thread_cap(saved);
    CHECK(serial.indices == parallel.indices);
    CHECK(serial.distances == parallel.distances);
}

TEST_CASE("k bounds are enforced") {
    Matrix data = Matrix::Zero(5, 2);
    CHECK_THROWS_AS(knn(data, 0), std::invalid_argument);
    CHECK_THROWS_AS(knn(data, 5), std::invalid_argument);
}

TEST_CASE("cache round-trips a table") {
    const PointCloud cloud = sample_sphere(2, 3, 60, derive_stream(4, "cache"));
    const NeighborTable table = knn(cloud, 5);
    const std::uint64_t digest = cloud_digest(cloud);
    const std::string dir = "knn_cache_test";
    save_knn_cache(dir, digest, 5, table);
    NeighborTable loaded;
    REQUIRE(load_knn_cache(dir, digest, 5, loaded));
    CHECK(loaded.indices == table.indices);
    CHECK(loaded.distances == table.distances);
    CHECK_FALSE(load_knn_cache(dir, digest + 1, 5, loaded));
}

} // TEST_SUITE
