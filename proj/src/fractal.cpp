#include "geodim/fractal.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <set>
#include <stdexcept>
#include <unordered_set>

#include "geodim/parallel.hpp"

namespace geodim {

namespace {

int gcd_of(int a, int b) { return b == 0 ? a : gcd_of(b, a % b); }

// q x q magnetic Bloch Hamiltonian at flux p/q and momentum (k1, k2):
// diagonal 2 cos(2 pi p m / q + k2), nearest-neighbor hopping 1, corner
// entries carrying the phase exp(+-i q k1).
Eigen::VectorXd bloch_spectrum(int p, int q, double kx, double ky) {
    ComplexMatrix h = ComplexMatrix::Zero(q, q);
    const double flux = 2.0 * std::numbers::pi * p / q;
    for (int m = 0; m < q; ++m) h(m, m) = 2.0 * std::cos(flux * m + ky);
    const std::complex<double> corner = std::exp(std::complex<double>(0.0, q * kx));
    if (q == 1) {
        h(0, 0) += corner + std::conj(corner);
    } else {
        for (int m = 0; m + 1 < q; ++m) {
            h(m, m + 1) += 1.0;
            h(m + 1, m) += 1.0;
        }
        h(q - 1, 0) += corner;
        h(0, q - 1) += std::conj(corner);
    }
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h, Eigen::EigenvaluesOnly);
    return solver.eigenvalues();
}

} // namespace

FractalCloud hofstadter_cloud(int q_max, int k_grid) {
    if (q_max < 2 || q_max > 200)
        throw std::invalid_argument("hofstadter_cloud: require 2 <= q_max <= 200");
    if (k_grid < 1) throw std::invalid_argument("hofstadter_cloud: k_grid must be positive");

    struct Fraction {
        int p, q;
    };
    std::vector<Fraction> fractions;
    for (int q = 1; q <= q_max; ++q)
        for (int p = 0; p <= q; ++p)
            if (gcd_of(p == 0 ? q : p, q) == 1) fractions.push_back({p, q});

    // eigenvalues per fraction, deterministic concatenation by (q, p, k index)
    std::vector<std::vector<double>> energy(fractions.size());
    parallel_for(0, fractions.size(), [&](std::size_t fi) {
        const auto [p, q] = fractions[fi];
        auto& out = energy[fi];
        out.reserve(static_cast<std::size_t>(k_grid) * k_grid * q);
        const double cell = 2.0 * std::numbers::pi / q;
        for (int ix = 0; ix < k_grid; ++ix)
            for (int iy = 0; iy < k_grid; ++iy) {
                const double kx = cell * ix / k_grid;
                const double ky = cell * iy / k_grid;
                const Eigen::VectorXd ev = bloch_spectrum(p, q, kx, ky);
                for (long b = 0; b < ev.size(); ++b) out.push_back(ev(b));
            }
    });

    // de-duplicate on (p, q, round(E/4 * 1e6)); reduced fractions key alpha exactly
    std::vector<std::array<double, 2>> points;
    std::unordered_set<std::uint64_t> seen;
    for (std::size_t fi = 0; fi < fractions.size(); ++fi) {
        const auto [p, q] = fractions[fi];
        for (double e : energy[fi]) {
            const double y = e / 4.0;
            const long long ykey = std::llround(y * 1e6);
            const std::uint64_t key =
                (static_cast<std::uint64_t>(static_cast<std::uint32_t>(p)) << 40) ^
                (static_cast<std::uint64_t>(static_cast<std::uint32_t>(q)) << 22) ^
                static_cast<std::uint64_t>(static_cast<std::uint32_t>(ykey + (1 << 21)));
            if (!seen.insert(key).second) continue;
            points.push_back({static_cast<double>(p) / q, y});
        }
    }

    FractalCloud cloud;
    cloud.q_max = q_max;
    cloud.k_grid = k_grid;
    cloud.points.resize(static_cast<long>(points.size()), 2);
    for (std::size_t i = 0; i < points.size(); ++i) {
        cloud.points(static_cast<long>(i), 0) = points[i][0];
        cloud.points(static_cast<long>(i), 1) = points[i][1];
    }
    return cloud;
}

Matrix normalize_unit_square(const Matrix& points) {
    Matrix out = points;
    for (long j = 0; j < points.cols(); ++j) {
        const double lo = points.col(j).minCoeff();
        const double hi = points.col(j).maxCoeff();
        const double span = hi - lo;
        if (span > 0.0)
            out.col(j) = (points.col(j).array() - lo) / span;
        else
            out.col(j).setZero();
    }
    return out;
}

namespace {

struct FitLine {
    double slope = 0.0;
    double rms = 0.0;
};

FitLine fit_log_counts(const std::vector<double>& log_inv_eps,
                       const std::vector<double>& log_counts) {
    const std::size_t m = log_inv_eps.size();
    const double xm = std::accumulate(log_inv_eps.begin(), log_inv_eps.end(), 0.0) / m;
    const double ym = std::accumulate(log_counts.begin(), log_counts.end(), 0.0) / m;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        sxx += (log_inv_eps[i] - xm) * (log_inv_eps[i] - xm);
        sxy += (log_inv_eps[i] - xm) * (log_counts[i] - ym);
    }
    FitLine fit;
    fit.slope = sxy / sxx;
    double ss = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        const double fitted = ym + fit.slope * (log_inv_eps[i] - xm);
        ss += (log_counts[i] - fitted) * (log_counts[i] - fitted);
    }
    fit.rms = std::sqrt(ss / m);
    return fit;
}

} // namespace

BoxCountResult box_count_dimension(const Matrix& points, int j_min, int j_max) {
    if (!(2 <= j_min && j_min < j_max && j_max <= 12))
        throw std::invalid_argument("box_count_dimension: require 2 <= j_min < j_max <= 12");
    if (j_max - j_min + 1 < 3)
        throw std::invalid_argument("box_count_dimension: need at least 3 scales");
    if (points.rows() < 1 || points.cols() != 2)
        throw std::invalid_argument("box_count_dimension: expect an M x 2 point set");

    BoxCountResult result;
    std::vector<double> lx, ly;
    for (int j = j_min; j <= j_max; ++j) {
        const long long cells = 1LL << j;
        std::unordered_set<std::uint64_t> occupied;
        for (long i = 0; i < points.rows(); ++i) {
            const auto cell_of = [cells](double v) {
                long long c = static_cast<long long>(v * static_cast<double>(cells));
                return std::clamp(c, 0LL, cells - 1);
            };
            const std::uint64_t cx = static_cast<std::uint64_t>(cell_of(points(i, 0)));
            const std::uint64_t cy = static_cast<std::uint64_t>(cell_of(points(i, 1)));
            occupied.insert((cx << 32) | cy);
        }
        result.scales.push_back(std::pow(2.0, -j));
        result.counts.push_back(static_cast<long long>(occupied.size()));
        lx.push_back(j * std::log(2.0)); // log(1/eps)
        ly.push_back(std::log(static_cast<double>(occupied.size())));
    }

    FitLine fit = fit_log_counts(lx, ly);
    if (fit.rms > 0.05 && lx.size() >= 5) {
        // drop the two extreme scales once lattice saturation dominates
        std::vector<double> tx(lx.begin() + 1, lx.end() - 1);
        std::vector<double> ty(ly.begin() + 1, ly.end() - 1);
        fit = fit_log_counts(tx, ty);
        result.excluded_extremes = true;
    }
    result.dimension = fit.slope;
    result.fit_residual = fit.rms;
    return result;
}

std::vector<FractalLidRow> fractal_lid_suite(const FractalCloud& cloud,
                                             const std::vector<int>& ks, int n_subsample,
                                             const std::vector<EstimatorMethod>& methods,
                                             RandomStream s) {
    for (EstimatorMethod m : methods)
        if (m != EstimatorMethod::Mle && m != EstimatorMethod::Abid &&
            m != EstimatorMethod::CorrInt)
            throw std::invalid_argument(
                "fractal_lid_suite: only fractional-valued estimators (mle, abid, corrint)");
    const long total = cloud.points.rows();
    if (n_subsample < 2 || n_subsample > total)
        throw std::invalid_argument("fractal_lid_suite: bad subsample size");

    // partial Fisher-Yates over point indices
    std::vector<long> order(static_cast<std::size_t>(total));
    std::iota(order.begin(), order.end(), 0L);
    RandomStream pick = s.child("subsample");
    for (int i = 0; i < n_subsample; ++i) {
        const auto j = i + static_cast<long>(pick.below(static_cast<std::uint64_t>(total - i)));
        std::swap(order[static_cast<std::size_t>(i)], order[static_cast<std::size_t>(j)]);
    }
    PointCloud sub;
    sub.data.resize(n_subsample, 2);
    for (int i = 0; i < n_subsample; ++i) sub.data.row(i) = cloud.points.row(order[static_cast<std::size_t>(i)]);
    sub.family = "hofstadter";
    sub.non_manifold = true;
    sub.seed_lineage = s.lineage();

    std::vector<FractalLidRow> rows;
    for (EstimatorMethod m : methods)
        for (int k : ks) {
            EstimatorConfig config;
            config.method = m;
            config.k = k;
            if (m == EstimatorMethod::CorrInt) {
                config.k2 = k;
                config.k1 = std::max(2, k / 2);
            }
            // abid's reference implementation samples neighbor pairs with
            // replacement, so the suite runs the self-pair variant
            config.abid_self_pairs = true;
            const LidResult result = run_estimator(sub, config);
            FractalLidRow row;
            row.method = method_name(m);
            row.k = k;
            row.defined = result.defined_count;
            if (result.global) {
                row.mean = result.global_value;
                row.stddev = 0.0;
            } else {
                std::vector<double> vals;
                for (double v : result.per_point)
                    if (std::isfinite(v)) vals.push_back(v);
                row.mean = result.aggregates.mean;
                double ss = 0.0;
                for (double v : vals) ss += (v - row.mean) * (v - row.mean);
                row.stddev = vals.size() > 1
                                 ? std::sqrt(ss / static_cast<double>(vals.size() - 1))
                                 : 0.0;
            }
            rows.push_back(row);
        }
    return rows;
}

PointCloud fractal_to_cloud(const FractalCloud& cloud, double fitted_dimension,
                            const RandomStream& provenance) {
    PointCloud out;
    out.data = cloud.points;
    out.d_i = fitted_dimension;
    out.family = "hofstadter";
    out.non_manifold = true;
    out.seed_lineage = provenance.lineage();
    return out;
}

} // namespace geodim
