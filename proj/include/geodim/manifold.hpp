#pragma once

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "geodim/linalg.hpp"
#include "geodim/rng.hpp"

namespace geodim {

enum class ManifoldFamily {
    StMatrix,
    StVec,
    GrProj,
    GrVec,
    FlagVec,
    Pauli,
    Sphere,
    Gaussian,
    Affine,
    MBeta,
};

const char* family_name(ManifoldFamily f);
ManifoldFamily family_from_name(std::string_view name);

/// Parameter block identifying one manifold instance.
///
/// The group families use (n, k) or (n, k1, k2); the baseline families
/// (Sphere, Gaussian, Affine, MBeta) take their intrinsic dimension from
/// d_i_override. ambient_target = 0 requests the minimal ambient dimension;
/// larger values are reached through a Haar isometry.
struct ManifoldSpec {
    ManifoldFamily family = ManifoldFamily::Sphere;
    int n = 0;
    int k = 0;
    int k1 = 0;
    int k2 = 0;
    int d_i_override = 0;
    long long ambient_target = 0;

    void validate() const; // throws std::invalid_argument
    std::string label() const; // stable path fragment, e.g. "gr-vec/n4/k2"
};

int intrinsic_dim(const ManifoldSpec& spec);
long long min_ambient_dim(const ManifoldSpec& spec);
long long ambient_dim(const ManifoldSpec& spec); // resolved target

/// Sample matrix plus ground-truth metadata. d_i and the ambient dimension
/// are fixed at creation; the distortion log is append-only.
struct PointCloud {
    Eigen::MatrixXd data; // N x d_a, row per sample
    double d_i = 0.0;     // real-valued to admit fractal exports
    std::string family;
    std::string seed_lineage;
    std::vector<std::string> distortion_log;
    bool non_manifold = false;
    int n = 0, k_param = 0, k1 = 0, k2 = 0; // spec echo, 0 when not applicable

    int count() const { return static_cast<int>(data.rows()); }
    int ambient() const { return static_cast<int>(data.cols()); }
};

// --- exact coordinate maps (one embedded row each) ---

/// Column-stacked n x k orthonormal-column matrix.
Vector st_matrix_coords(const Matrix& x);
/// Vectorized projector x x^T.
Vector gr_proj_coords(const Matrix& x);
/// k x k minors of x against lexicographic row k-subsets (Pluecker-type map).
Vector gr_vec_coords(const Matrix& x);
/// gr_vec_coords(x) followed by the column stacking of v (k x k rotation).
Vector st_vec_coords(const Matrix& x, const Matrix& v);
/// Products of (rows Q, first k1 cols) and (rows P, next k2 cols) minors of o,
/// (Q, P) pairs in lexicographic order with Q major.
Vector flag_vec_coords(const Matrix& o, int k1, int k2);

/// Lexicographic k-subsets of {0..n-1}; throws resource_limit_error when
/// C(n, k) exceeds the coordinate cap (1e7).
std::vector<std::vector<int>> lex_subsets(int n, int k);
long long binomial(int n, int k);

// --- Pauli embedding pieces ---

/// Columns are the n^2 orthonormal invariant-subspace basis vectors, indexed
/// by (a, b) with a major; component order of the length-n^4 vectors is
/// (c1, c2, c3, c4) row-major.
ComplexMatrix pauli_invariant_basis(int n);
/// Random unit fiducial in the invariant subspace (complex-normal
/// coefficients on the basis above).
ComplexVector pauli_fiducial(int n, RandomStream s);
/// Apply u (x) conj(u) (x) u (x) conj(u) to a length-n^4 vector through four
/// mode contractions; the n^4 x n^4 matrix is never formed.
ComplexVector pauli_apply_rep(const ComplexMatrix& u, const ComplexVector& psi);
/// Real parts then imaginary parts.
Vector realify(const ComplexVector& psi);
/// Diagnostic: residuals ||rep(g) h - h|| for the shift and phase generators.
/// Reported, never asserted to vanish.
std::array<double, 2> pauli_generator_residuals(int n, const ComplexVector& h);

// --- samplers ---

PointCloud sample_cloud(const ManifoldSpec& spec, int count, const RandomStream& root);

PointCloud sample_st_matrix(const ManifoldSpec& spec, int count, const RandomStream& root);
PointCloud sample_st_vec(const ManifoldSpec& spec, int count, const RandomStream& root);
PointCloud sample_gr_proj(const ManifoldSpec& spec, int count, const RandomStream& root);
PointCloud sample_gr_vec(const ManifoldSpec& spec, int count, const RandomStream& root);
PointCloud sample_flag_vec(const ManifoldSpec& spec, int count, const RandomStream& root);
PointCloud sample_pauli(const ManifoldSpec& spec, int count, const RandomStream& root);

PointCloud sample_sphere(int d_i, long long d_a, int count, const RandomStream& root);
PointCloud sample_gaussian(int d_i, long long d_a, int count, const RandomStream& root);
PointCloud sample_affine(int d_i, long long d_a, int count, const RandomStream& root);
PointCloud sample_mbeta(int d_i, long long d_a, int count, const RandomStream& root);

/// Rank-deficient constraint matrix whose nullspace carries the affine cloud;
/// exposed so the nullspace residual can be checked externally.
Matrix affine_constraint_matrix(int d_a, int rank, RandomStream s);

/// Coordinatewise sin(cos(2 pi x)).
Eigen::RowVectorXd mbeta_map(const Eigen::RowVectorXd& x);

/// Right-multiply all rows by the first rows of a Haar orthogonal matrix of
/// size d_a_target (a distance-preserving embedding). Identity when the
/// target equals the current ambient dimension.
PointCloud embed_pad(const PointCloud& cloud, long long d_a_target, RandomStream s);

} // namespace geodim
