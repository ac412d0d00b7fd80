#pragma once

#include <vector>

#include "geodim/estimators.hpp"
#include "geodim/manifold.hpp"
#include "geodim/neighbors.hpp"

namespace geodim {

struct RelativeError {
    double delta = 0.0;
    double d_hat = 0.0;
    int d_i = 0;
    long long d_a = 0;
};

/// delta = d_hat / d_i - 1; an undefined estimate propagates as NaN.
RelativeError relative_error(double d_hat, int d_i, long long d_a);

struct CovStats {
    double trace = 0.0;
    double vdi = 0.0;    // Var(lambda) / Mean(lambda)^2 over the full spectrum
    double r2_mean = 0.0;
};

/// Centered covariance statistics. The VDI variance is the population
/// variance over all d_a eigenvalues (zeros included); r2 terms with a zero
/// marginal variance contribute 0 off-diagonal and 1 on-diagonal.
CovStats covariance_stats(const Matrix& data);
CovStats covariance_stats(const PointCloud& cloud);

/// Sample standard deviation of the defined per-point estimates over their
/// mean. Requires >= 2 defined local estimates; NaN when the mean vanishes.
double manifoldness_ratio(const LidResult& result);

/// Unit-ball volume pi^{d/2} / Gamma(d/2 + 1).
double unit_ball_volume(double dim);

/// k / (N * Omega_d * T_k^d) per point; T_k = 0 -> NaN.
std::vector<double> local_density(const PointCloud& cloud, const NeighborTable& table,
                                  double dim);

/// Log-spaced sample-size grid with N/d_i covering [lo, hi]; the harness
/// grid implied by the k/N = Omega rho T_k^d neighbor-fraction relation.
std::vector<int> recommended_n_grid(int d_i, int points, double lo = 2.0, double hi = 300.0);

} // namespace geodim
