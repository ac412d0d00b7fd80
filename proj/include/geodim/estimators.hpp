#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "geodim/linalg.hpp"
#include "geodim/manifold.hpp"
#include "geodim/neighbors.hpp"
#include "geodim/rng.hpp"

namespace geodim {

enum class EstimatorMethod {
    LpcaMaxGap,
    LpcaRatio,
    LpcaFo,
    Mle,
    CorrInt,
    TwoNn,
    Danco,
    Abid,
};

const char* method_name(EstimatorMethod m);
EstimatorMethod method_from_name(std::string_view name);
/// CorrInt and DANCo return one cloud-level value instead of per-point ones.
bool method_is_global(EstimatorMethod m);

struct EstimatorConfig {
    EstimatorMethod method = EstimatorMethod::TwoNn;
    int k = 100;          // neighborhood size
    double epsilon = 0.05; // lPCA ratio / FO threshold, in (0, 1)
    double alpha = 0.1;    // TwoNN discard fraction, in [0, 1)
    int k1 = 10, k2 = 20;  // CorrInt, k1 < k2
    int calib_sets = 100;  // DANCo calibration neighborhoods per candidate
    bool abid_self_pairs = false;  // reference-implementation ABID variant
    bool lpca_mean_center = false; // center offsets on the neighborhood mean
                                   // instead of the query point
};

/// Per-method defaults (k = 10 for DANCo, 100 otherwise).
EstimatorConfig default_estimator_config(EstimatorMethod method);

struct AggregateSet {
    double mean = 0, median = 0, mode = 0, median_of_means = 0, mean_of_medians = 0;
};

/// Per-point estimates plus their aggregates. Undefined local estimates are
/// NaN and excluded from every aggregate; defined_count records attrition.
/// Global methods leave per_point empty and replicate the single value
/// across the aggregates (defined_count is N when the value exists).
struct LidResult {
    std::vector<double> per_point;
    bool global = false;
    double global_value = 0.0;
    AggregateSet aggregates;
    long defined_count = 0;
    EstimatorConfig config;
    std::string provenance;
};

// --- local-PCA family ---

/// Eigenvalues (descending, length min(d, k)) of the covariance of neighbor
/// offsets about the query point: (1/k) V^T V.
Vector local_covariance_spectrum(const Matrix& offsets);

/// Index of the largest consecutive spectral-gap ratio; ties take the
/// smaller index; eigenvalues floored at 1e-30; NaN when the whole spectrum
/// sits below the floor.
double lpca_maxgap_from_spectrum(const Vector& spectrum);
double lpca_ratio_from_spectrum(const Vector& spectrum, double epsilon);
double lpca_fo_from_spectrum(const Vector& spectrum, double epsilon);

double lpca_maxgap(const Matrix& offsets);
double lpca_ratio(const Matrix& offsets, double epsilon);
double lpca_fo(const Matrix& offsets, double epsilon);

// --- nearest-neighbor statistics ---

/// Levina-Bickel form: [ (1/(k-1)) sum_{j<k} log(T_k / T_j) ]^{-1}.
/// Zero distances are excluded from sum and denominator; NaN when nothing
/// remains or the sum vanishes.
double mle_local(std::span<const double> knn_distances);

/// Two-scale correlation integral: log(C(r2)/C(r1)) / log(r2/r1) with r1, r2
/// the median distances to the k1-th and k2-th neighbor.
double corrint_global(const Matrix& data, const NeighborTable& table, int k1, int k2);
/// Final ratio given the pair counts; NaN when c1 = 0 or r1 = r2.
double corrint_from_counts(long long c1, long long c2, double r1, double r2);

/// Per-point estimates from the ratio mu = T_2/T_1 via
/// d = -log(1 - F(mu))/log(mu), with F the plotting position rank/(M+1)
/// over the full finite-mu ranking. The ceil(alpha N) largest mu are
/// discarded (no estimate). Fewer than 10 retained points -> all NaN.
std::vector<double> twonn_local(const NeighborTable& table, double alpha);

/// Reciprocal of the mean pairwise squared cosine between neighbor offsets,
/// over the k(k-1)/2 unordered distinct pairs. include_self_pairs adds the
/// k diagonal terms (cos^2 = 1), matching the method's reference
/// implementation, which samples pairs with replacement; that form shrinks
/// the estimate at small k and converges to the default as k grows.
std::vector<double> abid_local(const Matrix& data, const NeighborTable& table,
                               bool include_self_pairs = false);

/// Angle- and distance-calibrated candidate search: Monte Carlo reference
/// neighborhoods per candidate dimension, KL matching of the ML-fitted
/// distance statistic and the fitted angle concentration.
double danco(const Matrix& data, const NeighborTable& table, int k, int calib_sets,
             RandomStream s);

// pieces shared with the calibration path
double danco_ml_fit(std::span<const double> normalized_distances, double d_max);
double vmf_concentration(std::span<const double> angles);

// --- aggregation ---

enum class Aggregate { Mean, Median, Mode, MedianOfMeans, MeanOfMedians };

/// NaN entries are excluded. Mode rounds to the nearest integer (ties to the
/// smaller); the block statistics use 10 equal contiguous blocks with the
/// remainder absorbed by the last.
double aggregate(std::span<const double> per_point, Aggregate method);
AggregateSet aggregate_all(std::span<const double> per_point);
long defined_count(std::span<const double> per_point);

/// Neighborhood size the estimator's table must hold (2 for TwoNN, k2 for
/// CorrInt, k otherwise).
int required_table_k(const EstimatorConfig& config);

LidResult run_estimator(const PointCloud& cloud, const EstimatorConfig& config);
/// Same, over a precomputed table holding at least required_table_k columns.
LidResult run_estimator(const PointCloud& cloud, const EstimatorConfig& config,
                        const NeighborTable& table);

/// Structured text form of a result (method, parameters, aggregates,
/// defined count; per-point values optional).
std::string lid_result_to_text(const LidResult& result, bool with_per_point);

} // namespace geodim
