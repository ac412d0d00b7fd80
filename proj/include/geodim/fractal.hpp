#pragma once

#include <string>
#include <vector>

#include "geodim/estimators.hpp"
#include "geodim/linalg.hpp"
#include "geodim/manifold.hpp"
#include "geodim/rng.hpp"

namespace geodim {

/// 2-D point set (flux alpha in [0,1], normalized energy E/4 in [-1,1]).
struct FractalCloud {
    Eigen::MatrixXd points; // M x 2
    int q_max = 0;
    int k_grid = 0;
};

/// Tight-binding magnetic Bloch spectrum collected over every reduced flux
/// fraction p/q with q <= q_max and a k_grid x k_grid momentum grid per
/// fraction; duplicate points de-duplicated on (alpha, round(E/4 * 1e6)).
FractalCloud hofstadter_cloud(int q_max, int k_grid);

struct BoxCountResult {
    std::vector<double> scales; // box sizes, descending in j
    std::vector<long long> counts;
    double dimension = 0.0;
    double fit_residual = 0.0; // RMS residual of the log-log fit
    bool excluded_extremes = false;
};

/// Occupied-box counts at scales 2^-j for j in [j_min, j_max] over a point
/// set inside the unit square; dimension is the least-squares slope of
/// log N against log(1/eps). When the fit residual exceeds 0.05 the two
/// extreme scales are dropped and the fit is repeated (flagged in the result).
BoxCountResult box_count_dimension(const Matrix& points, int j_min, int j_max);

/// Min-max rescaling of each coordinate into [0, 1].
Matrix normalize_unit_square(const Matrix& points);

struct FractalLidRow {
    std::string method;
    int k = 0;
    double mean = 0.0;
    double stddev = 0.0; // 0 for single-value (global) estimators
    long defined = 0;
};

/// Uniform subsample of the fractal cloud run through the fractional-valued
/// estimators (MLE, ABID, CorrInt) for each neighborhood size. CorrInt uses
/// (k/2, k) as its two scales.
std::vector<FractalLidRow> fractal_lid_suite(const FractalCloud& cloud,
                                             const std::vector<int>& ks, int n_subsample,
                                             const std::vector<EstimatorMethod>& methods,
                                             RandomStream s);

/// Standard cloud export carrying the fitted dimension and a non-manifold flag.
PointCloud fractal_to_cloud(const FractalCloud& cloud, double fitted_dimension,
                            const RandomStream& provenance);

} // namespace geodim
