#include "geodim/estimators.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include "geodim/errors.hpp"
#include "geodim/parallel.hpp"

namespace geodim {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kEigenFloor = 1e-30;
constexpr std::uint64_t kDancoCalibSeed = 0xDA2C0;
constexpr long long kDancoCalibBudget = 1'000'000; // candidate x calib_sets cap
constexpr double kTauCap = 1e6;
constexpr double kDancoFitMax = 210.0; // 2 x candidate cap + 10, shared by all fits

} // namespace

const char* method_name(EstimatorMethod m) {
    switch (m) {
        case EstimatorMethod::LpcaMaxGap: return "lpca-maxgap";
        case EstimatorMethod::LpcaRatio: return "lpca-ratio";
        case EstimatorMethod::LpcaFo: return "lpca-fo";
        case EstimatorMethod::Mle: return "mle";
        case EstimatorMethod::CorrInt: return "corrint";
        case EstimatorMethod::TwoNn: return "twonn";
        case EstimatorMethod::Danco: return "danco";
        case EstimatorMethod::Abid: return "abid";
    }
    return "unknown";
}

EstimatorMethod method_from_name(std::string_view name) {
    for (EstimatorMethod m :
         {EstimatorMethod::LpcaMaxGap, EstimatorMethod::LpcaRatio, EstimatorMethod::LpcaFo,
          EstimatorMethod::Mle, EstimatorMethod::CorrInt, EstimatorMethod::TwoNn,
          EstimatorMethod::Danco, EstimatorMethod::Abid})
        if (name == method_name(m)) return m;
    throw std::invalid_argument("unknown estimator method: " + std::string(name));
}

bool method_is_global(EstimatorMethod m) {
    return m == EstimatorMethod::CorrInt || m == EstimatorMethod::Danco;
}

EstimatorConfig default_estimator_config(EstimatorMethod method) {
    EstimatorConfig config;
    config.method = method;
    if (method == EstimatorMethod::Danco) config.k = 10;
    return config;
}

Vector local_covariance_spectrum(const Matrix& offsets) {
    const long k = offsets.rows();
    const long d = offsets.cols();
    if (k < 1) throw std::invalid_argument("local_covariance_spectrum: empty neighborhood");
    Matrix gram;
    if (d <= k)
        gram = offsets.transpose() * offsets / static_cast<double>(k);
    else
        gram = offsets * offsets.transpose() / static_cast<double>(k);
    Eigen::SelfAdjointEigenSolver<Matrix> solver(gram, Eigen::EigenvaluesOnly);
    Vector values = solver.eigenvalues().reverse();
    for (long i = 0; i < values.size(); ++i) values(i) = std::max(values(i), 0.0);
    return values;
}

double lpca_maxgap_from_spectrum(const Vector& spectrum) {
    const long len = spectrum.size();
    if (len < 2) return kNaN;
    if (spectrum(0) < kEigenFloor) return kNaN; // everything below the floor
    long best_j = 1;
    double best_ratio = -1.0;
    for (long j = 1; j < len; ++j) {
        const double hi = std::max(spectrum(j - 1), kEigenFloor);
        const double lo = std::max(spectrum(j), kEigenFloor);
        const double ratio = hi / lo;
        if (ratio > best_ratio) {
            best_ratio = ratio;
            best_j = j;
        }
    }
    return static_cast<double>(best_j);
}

double lpca_ratio_from_spectrum(const Vector& spectrum, double epsilon) {
    if (epsilon <= 0.0 || epsilon >= 1.0)
        throw std::invalid_argument("lpca_ratio: epsilon must lie in (0, 1)");
    const double total = spectrum.sum();
    if (!(total > 0.0)) return kNaN;
    double cum = 0.0;
    for (long j = 0; j < spectrum.size(); ++j) {
        cum += spectrum(j);
        if (cum / total >= 1.0 - epsilon) return static_cast<double>(j + 1);
    }
    return static_cast<double>(spectrum.size());
}

double lpca_fo_from_spectrum(const Vector& spectrum, double epsilon) {
    if (epsilon < 0.0 || epsilon >= 1.0)
        throw std::invalid_argument("lpca_fo: epsilon must lie in [0, 1)");
    if (spectrum.size() < 1 || spectrum(0) < kEigenFloor) return kNaN;
    const double threshold = (1.0 - epsilon) * spectrum(0);
    long count = 0;
    for (long j = 0; j < spectrum.size(); ++j)
        if (spectrum(j) >= threshold) ++count;
    return static_cast<double>(count);
}

double lpca_maxgap(const Matrix& offsets) {
    return lpca_maxgap_from_spectrum(local_covariance_spectrum(offsets));
}
double lpca_ratio(const Matrix& offsets, double epsilon) {
    return lpca_ratio_from_spectrum(local_covariance_spectrum(offsets), epsilon);
}
double lpca_fo(const Matrix& offsets, double epsilon) {
    return lpca_fo_from_spectrum(local_covariance_spectrum(offsets), epsilon);
}

double mle_local(std::span<const double> knn_distances) {
    const std::size_t k = knn_distances.size();
    if (k < 3) throw std::invalid_argument("mle_local: require k >= 3");
    const double r = knn_distances[k - 1];
    if (!(r > 0.0)) return kNaN;
    double sum = 0.0;
    long used = 0;
    for (std::size_t j = 0; j + 1 < k; ++j) {
        const double t = knn_distances[j];
        if (!(t > 0.0)) continue; // duplicates drop out of sum and denominator
        sum += std::log(r / t);
        ++used;
    }
    if (used == 0 || !(sum > 0.0)) return kNaN;
    return static_cast<double>(used) / sum;
}

namespace {

double median_of(std::vector<double> values) {
    if (values.empty()) return kNaN;
    std::sort(values.begin(), values.end());
    const std::size_t n = values.size();
    if (n % 2 == 1) return values[n / 2];
    return 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

} // namespace

double corrint_from_counts(long long c1, long long c2, double r1, double r2) {
    if (c1 <= 0 || !(r1 > 0.0) || r1 == r2) return kNaN;
    return std::log(static_cast<double>(c2) / static_cast<double>(c1)) / std::log(r2 / r1);
}

double corrint_global(const Matrix& data, const NeighborTable& table, int k1, int k2) {
    if (!(2 <= k1 && k1 < k2 && k2 <= table.k))
        throw std::invalid_argument("corrint_global: require 2 <= k1 < k2 <= table k");
    const int n = static_cast<int>(data.rows());
    const int dim = static_cast<int>(data.cols());

    std::vector<double> t1(static_cast<std::size_t>(n)), t2(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        t1[static_cast<std::size_t>(i)] = table.distances(i, k1 - 1);
        t2[static_cast<std::size_t>(i)] = table.distances(i, k2 - 1);
    }
    const double r1 = median_of(t1);
    const double r2 = median_of(t2);
    const double r1sq = r1 * r1;
    const double r2sq = r2 * r2;

    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> rows = data;
    std::atomic<long long> c1{0}, c2{0};
    parallel_for(0, static_cast<std::size_t>(n), [&](std::size_t i) {
        long long local1 = 0, local2 = 0;
        const double* a = rows.row(static_cast<long>(i)).data();
        for (std::size_t j = i + 1; j < static_cast<std::size_t>(n); ++j) {
            const double d2 = squared_distance(a, rows.row(static_cast<long>(j)).data(), dim);
            if (d2 <= r1sq) ++local1;
            if (d2 <= r2sq) ++local2;
        }
        c1 += local1;
        c2 += local2;
    });
    return corrint_from_counts(c1.load(), c2.load(), r1, r2);
}

std::vector<double> twonn_local(const NeighborTable& table, double alpha) {
    if (table.k < 2) throw std::invalid_argument("twonn_local: table must hold k >= 2");
    if (alpha < 0.0 || alpha >= 1.0)
        throw std::invalid_argument("twonn_local: alpha must lie in [0, 1)");
    const int n = static_cast<int>(table.distances.rows());
    std::vector<double> out(static_cast<std::size_t>(n), kNaN);

    struct Entry {
        double mu;
        int index;
    };
    std::vector<Entry> finite;
    finite.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        const double t1 = table.distances(i, 0);
        const double t2 = table.distances(i, 1);
        if (!(t1 > 0.0)) continue; // duplicate points: ratio undefined
        const double mu = t2 / t1;
        if (!std::isfinite(mu)) continue;
        finite.push_back({mu, i});
    }

    const long discard_total = static_cast<long>(std::ceil(alpha * n));
    const long non_finite = n - static_cast<long>(finite.size());
    const long discard = std::max(0L, discard_total - non_finite);
    std::sort(finite.begin(), finite.end(), [](const Entry& a, const Entry& b) {
        if (a.mu != b.mu) return a.mu < b.mu;
        return a.index < b.index;
    });
    const long ranked = static_cast<long>(finite.size());
    const long retained = ranked - discard;
    if (retained < 10) return out; // too few points for a usable CDF

    // Plotting positions come from the full ranking; the discarded upper tail
    // only loses its estimates. Ranking within the retained set instead would
    // push the top retained point to F ~ 1 and bias every estimate upward.
    for (long rank = 1; rank <= retained; ++rank) {
        const Entry& e = finite[static_cast<std::size_t>(rank - 1)];
        if (e.mu <= 1.0) continue; // log(mu) = 0
        const double f = static_cast<double>(rank) / static_cast<double>(ranked + 1);
        out[static_cast<std::size_t>(e.index)] = -std::log1p(-f) / std::log(e.mu);
    }
    return out;
}

std::vector<double> abid_local(const Matrix& data, const NeighborTable& table,
                               bool include_self_pairs) {
    if (table.k < 2) throw std::invalid_argument("abid_local: table must hold k >= 2");
    const int n = static_cast<int>(data.rows());
    const int k = table.k;
    std::vector<double> out(static_cast<std::size_t>(n), kNaN);
    parallel_for(0, static_cast<std::size_t>(n), [&](std::size_t i) {
        Matrix dirs(k, data.cols());
        int m = 0;
        for (int j = 0; j < k; ++j) {
            Eigen::RowVectorXd v =
                data.row(table.indices(static_cast<long>(i), j)) - data.row(static_cast<long>(i));
            const double norm = v.norm();
            if (!(norm > 0.0)) continue;
            dirs.row(m++) = v / norm;
        }
        if (m < 2) return;
        const Matrix gram = dirs.topRows(m) * dirs.topRows(m).transpose();
        double sum = 0.0;
        for (int a = 0; a < m; ++a)
            for (int b = a + 1; b < m; ++b) sum += gram(a, b) * gram(a, b);
        double pairs = 0.5 * m * (m - 1);
        if (include_self_pairs) {
            sum += m; // diagonal cos^2 terms
            pairs += m;
        }
        const double mean = sum / pairs;
        if (!(mean > 0.0)) return;
        out[i] = 1.0 / mean;
    });
    return out;
}

namespace {

// log-likelihood of the normalized-distance model, up to a constant
double danco_loglik(std::span<const double> r, int k, double d) {
    double acc = 0.0;
    for (double v : r)
        acc += std::log(d) + (d - 1.0) * std::log(v) +
               (k - 1.0) * std::log1p(-std::pow(v, d));
    return acc;
}

} // namespace

double danco_ml_fit(std::span<const double> normalized_distances, int k, double d_max) {
    std::vector<double> valid;
    valid.reserve(normalized_distances.size());
    for (double v : normalized_distances)
        if (v > 1e-12 && v < 1.0 - 1e-12) valid.push_back(v);
    if (valid.size() < 2) return kNaN;

    const double lo = 0.05;
    const double hi = std::max(1.0, d_max);
    constexpr int kGrid = 64;
    double best_d = lo, best_ll = -std::numeric_limits<double>::infinity();
    int best_i = 0;
    for (int i = 0; i < kGrid; ++i) {
        const double d = lo * std::pow(hi / lo, static_cast<double>(i) / (kGrid - 1));
        const double ll = danco_loglik(valid, k, d);
        if (ll > best_ll) {
            best_ll = ll;
            best_d = d;
            best_i = i;
        }
    }
    // golden-section refinement inside the bracketing grid cells
    auto grid_at = [&](int i) {
        return lo * std::pow(hi / lo, static_cast<double>(std::clamp(i, 0, kGrid - 1)) / (kGrid - 1));
    };
    double a = grid_at(best_i - 1), b = grid_at(best_i + 1);
    const double golden = 0.5 * (std::sqrt(5.0) - 1.0);
    double x1 = b - golden * (b - a), x2 = a + golden * (b - a);
    double f1 = danco_loglik(valid, k, x1), f2 = danco_loglik(valid, k, x2);
    for (int it = 0; it < 48; ++it) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + golden * (b - a);
            f2 = danco_loglik(valid, k, x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - golden * (b - a);
            f1 = danco_loglik(valid, k, x1);
        }
    }
    const double refined = 0.5 * (a + b);
    return danco_loglik(valid, k, refined) >= best_ll ? refined : best_d;
}

double vmf_concentration(std::span<const double> angles) {
    if (angles.size() < 2) return kNaN;
    double mc = 0.0, ms = 0.0;
    for (double t : angles) {
        mc += std::cos(t);
        ms += std::sin(t);
    }
    mc /= static_cast<double>(angles.size());
    ms /= static_cast<double>(angles.size());
    const double rbar = std::sqrt(mc * mc + ms * ms);
    if (rbar >= 1.0 - 1e-12) return kTauCap;
    // Banerjee et al. closed-form approximation on the circle (p = 2)
    const double tau = rbar * (2.0 - rbar * rbar) / (1.0 - rbar * rbar);
    return std::min(tau, kTauCap);
}

namespace {

struct DancoStats {
    std::vector<double> ml;  // ML-fitted dimension per neighborhood
    std::vector<double> tau; // fitted angle concentration per neighborhood
};

void danco_neighborhood_stats(const Matrix& offsets, int k, double fit_max, DancoStats& out) {
    // offsets: k x d, rows sorted by ascending norm
    const int m = static_cast<int>(offsets.rows());
    std::vector<double> norms(static_cast<std::size_t>(m));
    for (int j = 0; j < m; ++j) norms[static_cast<std::size_t>(j)] = offsets.row(j).norm();
    const double rk = norms[static_cast<std::size_t>(m - 1)];
    if (rk > 0.0) {
        std::vector<double> ratios;
        ratios.reserve(static_cast<std::size_t>(m) - 1);
        for (int j = 0; j + 1 < m; ++j) ratios.push_back(norms[static_cast<std::size_t>(j)] / rk);
        const double fit = danco_ml_fit(ratios, k, fit_max);
        if (std::isfinite(fit)) out.ml.push_back(fit);
    }
    std::vector<double> angles;
    angles.reserve(static_cast<std::size_t>(m) * (m - 1) / 2);
    for (int a = 0; a < m; ++a) {
        if (!(norms[static_cast<std::size_t>(a)] > 0.0)) continue;
        for (int b = a + 1; b < m; ++b) {
            if (!(norms[static_cast<std::size_t>(b)] > 0.0)) continue;
            const double c = offsets.row(a).dot(offsets.row(b)) /
                             (norms[static_cast<std::size_t>(a)] * norms[static_cast<std::size_t>(b)]);
            angles.push_back(std::acos(std::clamp(c, -1.0, 1.0)));
        }
    }
    const double tau = vmf_concentration(angles);
    if (std::isfinite(tau)) out.tau.push_back(tau);
}

// Calibration neighborhoods depend only on (k, calib_sets, candidate d) and
// a fixed stream, so the tables are computed once and shared read-only.
const DancoStats& danco_reference(int k, int calib_sets, int d, const RandomStream& parent) {
    static std::mutex mutex;
    static std::map<std::tuple<std::uint64_t, std::string, int, int, int>, DancoStats> cache;
    std::lock_guard<std::mutex> lock(mutex);
    const auto key =
        std::make_tuple(parent.master_seed(), parent.label(), k, calib_sets, d);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;

    RandomStream cs = parent.child(std::to_string(d));
    DancoStats reference;
    for (int set = 0; set < calib_sets; ++set) {
        // k points uniform in the unit d-ball around the query
        Matrix offsets(k, d);
        std::vector<std::pair<double, int>> order(static_cast<std::size_t>(k));
        for (int j = 0; j < k; ++j) {
            Vector dir(d);
            do {
                for (int t = 0; t < d; ++t) dir(t) = cs.normal();
            } while (dir.norm() < 1e-300);
            const double radius = std::pow(cs.uniform01(), 1.0 / d);
            offsets.row(j) = (radius * dir / dir.norm()).transpose();
            order[static_cast<std::size_t>(j)] = {offsets.row(j).norm(), j};
        }
        std::sort(order.begin(), order.end());
        Matrix sorted(k, d);
        for (int j = 0; j < k; ++j)
            sorted.row(j) = offsets.row(order[static_cast<std::size_t>(j)].second);
        danco_neighborhood_stats(sorted, k, kDancoFitMax, reference);
    }
    return cache.emplace(key, std::move(reference)).first->second;
}

double histogram_kl(const std::vector<double>& observed, const std::vector<double>& reference) {
    if (observed.empty() || reference.empty()) return std::numeric_limits<double>::infinity();
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    for (double v : observed) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    for (double v : reference) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    if (!(hi > lo)) return 0.0; // both samples degenerate at one value
    constexpr int kBins = 16;
    std::array<double, kBins> p{}, q{};
    p.fill(0.5); // additive smoothing keeps the divergence finite
    q.fill(0.5);
    auto bin_of = [&](double v) {
        int b = static_cast<int>((v - lo) / (hi - lo) * kBins);
        return std::clamp(b, 0, kBins - 1);
    };
    for (double v : observed) p[static_cast<std::size_t>(bin_of(v))] += 1.0;
    for (double v : reference) q[static_cast<std::size_t>(bin_of(v))] += 1.0;
    const double psum = std::accumulate(p.begin(), p.end(), 0.0);
    const double qsum = std::accumulate(q.begin(), q.end(), 0.0);
    double kl = 0.0;
    for (int b = 0; b < kBins; ++b) {
        const double pp = p[static_cast<std::size_t>(b)] / psum;
        const double qq = q[static_cast<std::size_t>(b)] / qsum;
        kl += pp * std::log(pp / qq);
    }
    return kl;
}

} // namespace

double danco(const Matrix& data, const NeighborTable& table, int k, int calib_sets,
             RandomStream s) {
    const int n = static_cast<int>(data.rows());
    if (k < 5) throw std::invalid_argument("danco: require k >= 5");
    if (n <= k) throw std::invalid_argument("danco: require N > k");
    if (table.k < k) throw std::invalid_argument("danco: table holds fewer than k neighbors");
    if (calib_sets < 2) throw std::invalid_argument("danco: require calib_sets >= 2");

    const int d_cap = static_cast<int>(std::min<long>(data.cols(), 100));
    if (static_cast<long long>(d_cap) * calib_sets > kDancoCalibBudget)
        throw resource_limit_error("danco: calibration exceeds the sampling budget");

    DancoStats observed;
    {
        std::vector<DancoStats> per_point(static_cast<std::size_t>(n));
        parallel_for(0, static_cast<std::size_t>(n), [&](std::size_t i) {
            Matrix offsets(k, data.cols());
            for (int j = 0; j < k; ++j)
                offsets.row(j) =
                    data.row(table.indices(static_cast<long>(i), j)) - data.row(static_cast<long>(i));
            danco_neighborhood_stats(offsets, k, kDancoFitMax, per_point[i]);
        });
        for (const auto& st : per_point) {
            observed.ml.insert(observed.ml.end(), st.ml.begin(), st.ml.end());
            observed.tau.insert(observed.tau.end(), st.tau.begin(), st.tau.end());
        }
    }
    if (observed.ml.empty() || observed.tau.empty()) return kNaN;

    int best_d = 1;
    double best_score = std::numeric_limits<double>::infinity();
    for (int d = 1; d <= d_cap; ++d) {
        const DancoStats& reference = danco_reference(k, calib_sets, d, s);
        const double score =
            histogram_kl(observed.ml, reference.ml) + histogram_kl(observed.tau, reference.tau);
        if (score < best_score) {
            best_score = score;
            best_d = d;
        }
    }
    return static_cast<double>(best_d);
}

namespace {

std::vector<double> defined_values(std::span<const double> per_point) {
    std::vector<double> vals;
    vals.reserve(per_point.size());
    for (double v : per_point)
        if (std::isfinite(v)) vals.push_back(v);
    return vals;
}

long long round_half_down(double v) {
    return static_cast<long long>(std::ceil(v - 0.5));
}

double mode_of(const std::vector<double>& values) {
    if (values.empty()) return kNaN;
    std::map<long long, long> counts;
    for (double v : values) ++counts[round_half_down(v)];
    long long best_key = 0;
    long best_count = -1;
    for (const auto& [key, count] : counts)
        if (count > best_count) { // map order means ties keep the smaller key
            best_count = count;
            best_key = key;
        }
    return static_cast<double>(best_key);
}

// 10 contiguous blocks over the original indexing; the last absorbs the
// remainder; blocks with no defined entries are skipped.
std::vector<std::vector<double>> contiguous_blocks(std::span<const double> per_point) {
    constexpr std::size_t kBlocks = 10;
    const std::size_t n = per_point.size();
    const std::size_t base = n / kBlocks;
    std::vector<std::vector<double>> blocks;
    for (std::size_t b = 0; b < kBlocks; ++b) {
        const std::size_t lo = b * base;
        const std::size_t hi = (b + 1 == kBlocks) ? n : lo + base;
        std::vector<double> vals;
        for (std::size_t i = lo; i < hi; ++i)
            if (std::isfinite(per_point[i])) vals.push_back(per_point[i]);
        if (!vals.empty()) blocks.push_back(std::move(vals));
    }
    return blocks;
}

double mean_of(const std::vector<double>& values) {
    if (values.empty()) return kNaN;
    return std::accumulate(values.begin(), values.end(), 0.0) /
           static_cast<double>(values.size());
}

} // namespace

long defined_count(std::span<const double> per_point) {
    long n = 0;
    for (double v : per_point)
        if (std::isfinite(v)) ++n;
    return n;
}

double aggregate(std::span<const double> per_point, Aggregate method) {
    const std::vector<double> vals = defined_values(per_point);
    if (vals.empty()) return kNaN;
    switch (method) {
        case Aggregate::Mean:
            return mean_of(vals);
        case Aggregate::Median:
            return median_of(vals);
        case Aggregate::Mode:
            return mode_of(vals);
        case Aggregate::MedianOfMeans: {
            std::vector<double> means;
            for (const auto& block : contiguous_blocks(per_point)) means.push_back(mean_of(block));
            return median_of(means);
        }
        case Aggregate::MeanOfMedians: {
            std::vector<double> medians;
            for (const auto& block : contiguous_blocks(per_point)) medians.push_back(median_of(block));
            return mean_of(medians);
        }
    }
    return kNaN;
}

AggregateSet aggregate_all(std::span<const double> per_point) {
    AggregateSet set;
    set.mean = aggregate(per_point, Aggregate::Mean);
    set.median = aggregate(per_point, Aggregate::Median);
    set.mode = aggregate(per_point, Aggregate::Mode);
    set.median_of_means = aggregate(per_point, Aggregate::MedianOfMeans);
    set.mean_of_medians = aggregate(per_point, Aggregate::MeanOfMedians);
    return set;
}

int required_table_k(const EstimatorConfig& config) {
    switch (config.method) {
        case EstimatorMethod::TwoNn: return 2;
        case EstimatorMethod::CorrInt: return config.k2;
        default: return config.k;
    }
}

LidResult run_estimator(const PointCloud& cloud, const EstimatorConfig& config) {
    const int n = cloud.count();
    const int table_k = required_table_k(config);
    if (table_k < 1 || table_k >= n)
        throw std::invalid_argument("run_estimator: neighborhood does not fit the cloud");
    return run_estimator(cloud, config, knn(cloud.data, table_k));
}

LidResult run_estimator(const PointCloud& cloud, const EstimatorConfig& config,
                        const NeighborTable& table) {
    const int n = cloud.count();
    if (n < 2) throw std::invalid_argument("run_estimator: need at least two samples");

    switch (config.method) {
        case EstimatorMethod::CorrInt:
            if (!(2 <= config.k1 && config.k1 < config.k2))
                throw std::invalid_argument("run_estimator: CorrInt needs 2 <= k1 < k2");
            break;
        case EstimatorMethod::Mle:
            if (config.k < 3) throw std::invalid_argument("run_estimator: MLE needs k >= 3");
            break;
        case EstimatorMethod::Danco:
            if (config.k < 5) throw std::invalid_argument("run_estimator: DANCo needs k >= 5");
            break;
        case EstimatorMethod::TwoNn:
            break;
        default:
            if (config.k < 2) throw std::invalid_argument("run_estimator: need k >= 2");
            break;
    }
    if (table.k < required_table_k(config))
        throw std::invalid_argument("run_estimator: table narrower than the estimator needs");

    LidResult result;
    result.config = config;
    result.provenance = cloud.seed_lineage + " family=" + cloud.family;

    auto offsets_of = [&](int i) {
        Matrix offsets(config.k, cloud.data.cols());
        for (int j = 0; j < config.k; ++j)
            offsets.row(j) = cloud.data.row(table.indices(i, j)) - cloud.data.row(i);
        // default keeps the query point as the origin so that e.g. a sphere's
        // radial direction contributes; the mean-centered form is the variant
        if (config.lpca_mean_center)
            offsets.rowwise() -= offsets.colwise().mean();
        return offsets;
    };

    switch (config.method) {
        case EstimatorMethod::LpcaMaxGap:
        case EstimatorMethod::LpcaRatio:
        case EstimatorMethod::LpcaFo: {
            result.per_point.assign(static_cast<std::size_t>(n), kNaN);
            parallel_for(0, static_cast<std::size_t>(n), [&](std::size_t i) {
                const Vector spectrum = local_covariance_spectrum(offsets_of(static_cast<int>(i)));
                double v = kNaN;
                if (config.method == EstimatorMethod::LpcaMaxGap)
                    v = lpca_maxgap_from_spectrum(spectrum);
                else if (config.method == EstimatorMethod::LpcaRatio)
                    v = lpca_ratio_from_spectrum(spectrum, config.epsilon);
                else
                    v = lpca_fo_from_spectrum(spectrum, config.epsilon);
                result.per_point[i] = v;
            });
            break;
        }
        case EstimatorMethod::Mle: {
            result.per_point.assign(static_cast<std::size_t>(n), kNaN);
            parallel_for(0, static_cast<std::size_t>(n), [&](std::size_t i) {
                std::vector<double> dists(static_cast<std::size_t>(config.k));
                for (int j = 0; j < config.k; ++j)
                    dists[static_cast<std::size_t>(j)] = table.distances(static_cast<long>(i), j);
                result.per_point[i] = mle_local(dists);
            });
            break;
        }
        case EstimatorMethod::TwoNn:
            result.per_point = twonn_local(table, config.alpha);
            break;
        case EstimatorMethod::Abid:
            result.per_point = abid_local(cloud.data, table, config.abid_self_pairs);
            break;
        case EstimatorMethod::CorrInt:
            result.global = true;
            result.global_value = corrint_global(cloud.data, table, config.k1, config.k2);
            break;
        case EstimatorMethod::Danco:
            result.global = true;
            result.global_value = danco(cloud.data, table, config.k, config.calib_sets,
                                        derive_stream(kDancoCalibSeed, "danco/calib"));
            break;
    }

    if (result.global) {
        const double v = result.global_value;
        result.aggregates = {v, v, v, v, v};
        result.defined_count = std::isfinite(v) ? n : 0;
    } else {
        result.aggregates = aggregate_all(result.per_point);
        result.defined_count = defined_count(result.per_point);
    }
    return result;
}

std::string lid_result_to_text(const LidResult& result, bool with_per_point) {
    std::ostringstream out;
    out << "method: " << method_name(result.config.method) << '\n';
    out << "k: " << result.config.k << '\n';
    out << "epsilon: " << result.config.epsilon << '\n';
    out << "alpha: " << result.config.alpha << '\n';
    out << "k1: " << result.config.k1 << '\n';
    out << "k2: " << result.config.k2 << '\n';
    out << "calib_sets: " << result.config.calib_sets << '\n';
    out << "provenance: " << result.provenance << '\n';
    out << "mean: " << result.aggregates.mean << '\n';
    out << "median: " << result.aggregates.median << '\n';
    out << "mode: " << result.aggregates.mode << '\n';
    out << "median_of_means: " << result.aggregates.median_of_means << '\n';
    out << "mean_of_medians: " << result.aggregates.mean_of_medians << '\n';
    out << "defined_count: " << result.defined_count << '\n';
    if (with_per_point && !result.per_point.empty()) {
        out << "per_point:";
        for (double v : result.per_point) out << ' ' << v;
        out << '\n';
    }
    return out.str();
}

} // namespace geodim
