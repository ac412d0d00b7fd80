#include "geodim/analysis.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "geodim/parallel.hpp"

namespace geodim {

namespace {
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
}

RelativeError relative_error(double d_hat, int d_i, long long d_a) {
    if (d_i < 1) throw std::invalid_argument("relative_error: d_i must be positive");
    if (d_a < d_i) throw std::invalid_argument("relative_error: require d_a >= d_i");
    RelativeError out;
    out.d_hat = d_hat;
    out.d_i = d_i;
    out.d_a = d_a;
    out.delta = std::isfinite(d_hat) ? d_hat / d_i - 1.0 : kNaN;
    return out;
}

CovStats covariance_stats(const Matrix& data) {
    const long n = data.rows();
    const long d = data.cols();
    if (n < 2) throw std::invalid_argument("covariance_stats: need at least two samples");

    const Eigen::RowVectorXd mean = data.colwise().mean();
    const Matrix centered = data.rowwise() - mean;
    const Matrix sigma = centered.transpose() * centered / static_cast<double>(n - 1);

    CovStats out;
    out.trace = sigma.trace();

    // nonzero spectrum from the smaller Gram side, padded with zeros to d_a
    Vector lambda = Vector::Zero(d);
    if (n - 1 < d) {
        const Matrix gram = centered * centered.transpose() / static_cast<double>(n - 1);
        Eigen::SelfAdjointEigenSolver<Matrix> solver(gram, Eigen::EigenvaluesOnly);
        const Vector nz = solver.eigenvalues();
        for (long i = 0; i < nz.size() && i < d; ++i) lambda(i) = std::max(nz(nz.size() - 1 - i), 0.0);
    } else {
        Eigen::SelfAdjointEigenSolver<Matrix> solver(sigma, Eigen::EigenvaluesOnly);
        for (long i = 0; i < d; ++i) lambda(i) = std::max(solver.eigenvalues()(d - 1 - i), 0.0);
    }
    const double mean_l = lambda.mean();
    const double var_l = (lambda.array() - mean_l).square().mean();
    out.vdi = mean_l > 0.0 ? var_l / (mean_l * mean_l) : 0.0;

    double acc = 0.0;
    for (long i = 0; i < d; ++i)
        for (long j = 0; j < d; ++j) {
            const double denom = sigma(i, i) * sigma(j, j);
            if (denom > 0.0)
                acc += sigma(i, j) * sigma(i, j) / denom;
            else if (i == j)
                acc += 1.0; // degenerate marginal still correlates with itself
        }
    out.r2_mean = acc / (static_cast<double>(d) * static_cast<double>(d));
    return out;
}

CovStats covariance_stats(const PointCloud& cloud) { return covariance_stats(cloud.data); }

double manifoldness_ratio(const LidResult& result) {
    std::vector<double> vals;
    for (double v : result.per_point)
        if (std::isfinite(v)) vals.push_back(v);
    if (vals.size() < 2)
        throw std::invalid_argument("manifoldness_ratio: need >= 2 defined local estimates");
    double mean = 0.0;
    for (double v : vals) mean += v;
    mean /= static_cast<double>(vals.size());
    double ss = 0.0;
    for (double v : vals) ss += (v - mean) * (v - mean);
    const double sd = std::sqrt(ss / static_cast<double>(vals.size() - 1));
    if (mean == 0.0) return kNaN;
    return sd / mean;
}

double unit_ball_volume(double dim) {
    return std::pow(std::numbers::pi, dim / 2.0) / std::tgamma(dim / 2.0 + 1.0);
}

std::vector<double> local_density(const PointCloud& cloud, const NeighborTable& table,
                                  double dim) {
    const int n = cloud.count();
    const double omega = unit_ball_volume(dim);
    std::vector<double> out(static_cast<std::size_t>(n), kNaN);
    parallel_for(0, static_cast<std::size_t>(n), [&](std::size_t i) {
        const double tk = table.distances(static_cast<long>(i), table.k - 1);
        if (!(tk > 0.0)) return;
        out[i] = table.k / (static_cast<double>(n) * omega * std::pow(tk, dim));
    });
    return out;
}

std::vector<int> recommended_n_grid(int d_i, int points, double lo, double hi) {
    if (d_i < 1 || points < 2 || !(hi > lo) || !(lo > 0.0))
        throw std::invalid_argument("recommended_n_grid: bad arguments");
    std::vector<int> grid;
    grid.reserve(static_cast<std::size_t>(points));
    for (int i = 0; i < points; ++i) {
        const double f = lo * std::pow(hi / lo, static_cast<double>(i) / (points - 1));
        int n = static_cast<int>(std::lround(f * d_i));
        n = std::max(n, 3);
        if (grid.empty() || n > grid.back()) grid.push_back(n);
    }
    return grid;
}

} // namespace geodim
