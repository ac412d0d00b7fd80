#include "geodim/manifold.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "geodim/errors.hpp"
#include "geodim/parallel.hpp"

namespace geodim {

namespace {

constexpr long long kCoordinateCap = 10'000'000; // subset-enumeration guard

bool is_prime(int n) {
    if (n < 2) return false;
    for (int d = 2; static_cast<long long>(d) * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

bool is_group_family(ManifoldFamily f) {
    switch (f) {
        case ManifoldFamily::StMatrix:
        case ManifoldFamily::StVec:
        case ManifoldFamily::GrProj:
        case ManifoldFamily::GrVec:
        case ManifoldFamily::FlagVec:
        case ManifoldFamily::Pauli:
            return true;
        default:
            return false;
    }
}

void require(bool ok, const char* msg) {
    if (!ok) throw std::invalid_argument(msg);
}

PointCloud cloud_shell(const ManifoldSpec& spec, int count, const RandomStream& root,
                       long long d_a) {
    PointCloud cloud;
    cloud.data.resize(count, d_a);
    cloud.d_i = intrinsic_dim(spec);
    cloud.family = family_name(spec.family);
    cloud.seed_lineage = root.lineage();
    cloud.n = spec.n;
    cloud.k_param = spec.k;
    cloud.k1 = spec.k1;
    cloud.k2 = spec.k2;
    return cloud;
}

void check_count(int count) { require(count >= 1, "sample: N must be positive"); }

// Pads to the requested ambient dimension when the spec asks for more than
// the minimal one.
PointCloud finish_cloud(PointCloud cloud, const ManifoldSpec& spec, const RandomStream& root) {
    const long long target = ambient_dim(spec);
    if (target > cloud.ambient()) return embed_pad(cloud, target, root.child("embed"));
    return cloud;
}

} // namespace

const char* family_name(ManifoldFamily f) {
    switch (f) {
        case ManifoldFamily::StMatrix: return "st-matrix";
        case ManifoldFamily::StVec: return "st-vec";
        case ManifoldFamily::GrProj: return "gr-proj";
        case ManifoldFamily::GrVec: return "gr-vec";
        case ManifoldFamily::FlagVec: return "flag-vec";
        case ManifoldFamily::Pauli: return "pauli";
        case ManifoldFamily::Sphere: return "sphere";
        case ManifoldFamily::Gaussian: return "gaussian";
        case ManifoldFamily::Affine: return "affine";
        case ManifoldFamily::MBeta: return "mbeta";
    }
    return "unknown";
}

ManifoldFamily family_from_name(std::string_view name) {
    for (ManifoldFamily f :
         {ManifoldFamily::StMatrix, ManifoldFamily::StVec, ManifoldFamily::GrProj,
          ManifoldFamily::GrVec, ManifoldFamily::FlagVec, ManifoldFamily::Pauli,
          ManifoldFamily::Sphere, ManifoldFamily::Gaussian, ManifoldFamily::Affine,
          ManifoldFamily::MBeta})
        if (name == family_name(f)) return f;
    throw std::invalid_argument("unknown manifold family: " + std::string(name));
}

void ManifoldSpec::validate() const {
    switch (family) {
        case ManifoldFamily::StMatrix:
        case ManifoldFamily::StVec:
        case ManifoldFamily::GrProj:
        case ManifoldFamily::GrVec:
            require(n >= 1, "spec: n must be positive");
            require(k >= 1 && k <= n, "spec: require 1 <= k <= n");
            break;
        case ManifoldFamily::FlagVec:
            require(n >= 1, "spec: n must be positive");
            require(k1 >= 1 && k2 >= 1, "spec: require k1, k2 >= 1");
            require(k1 + k2 <= n, "spec: require k1 + k2 <= n");
            break;
        case ManifoldFamily::Pauli:
            require(is_prime(n), "spec: Pauli requires prime n");
            break;
        case ManifoldFamily::Sphere:
        case ManifoldFamily::Gaussian:
        case ManifoldFamily::Affine:
        case ManifoldFamily::MBeta:
            require(d_i_override >= 1, "spec: baseline families need d_i_override >= 1");
            break;
    }
    if (ambient_target != 0)
        require(ambient_target >= min_ambient_dim(*this),
                "spec: ambient_target below the minimal ambient dimension");
}

std::string ManifoldSpec::label() const {
    std::string out = family_name(family);
    if (is_group_family(family)) {
        out += "/n" + std::to_string(n);
        if (family == ManifoldFamily::FlagVec)
            out += "/k" + std::to_string(k1) + "." + std::to_string(k2);
        else if (family != ManifoldFamily::Pauli)
            out += "/k" + std::to_string(k);
    } else {
        out += "/d" + std::to_string(d_i_override);
    }
    out += "/a" + std::to_string(ambient_dim(*this));
    return out;
}

int intrinsic_dim(const ManifoldSpec& spec) {
    spec.validate();
    switch (spec.family) {
        case ManifoldFamily::StMatrix:
        case ManifoldFamily::StVec:
            return spec.n * spec.k - spec.k * (spec.k + 1) / 2;
        case ManifoldFamily::GrProj:
        case ManifoldFamily::GrVec:
            return spec.k * (spec.n - spec.k);
        case ManifoldFamily::FlagVec:
            return (spec.k1 + spec.k2) * spec.n - spec.k1 * spec.k1 -
                   spec.k2 * spec.k2 - spec.k1 * spec.k2;
        case ManifoldFamily::Pauli:
            return spec.n * spec.n;
        default:
            return spec.d_i_override;
    }
}

long long min_ambient_dim(const ManifoldSpec& spec) {
    switch (spec.family) {
        case ManifoldFamily::StMatrix:
            return static_cast<long long>(spec.n) * spec.k;
        case ManifoldFamily::StVec:
            return binomial(spec.n, spec.k) + static_cast<long long>(spec.k) * spec.k;
        case ManifoldFamily::GrProj:
            return static_cast<long long>(spec.n) * spec.n;
        case ManifoldFamily::GrVec:
            return binomial(spec.n, spec.k);
        case ManifoldFamily::FlagVec:
            return binomial(spec.n, spec.k1) * binomial(spec.n, spec.k2);
        case ManifoldFamily::Pauli: {
            const long long n4 = static_cast<long long>(spec.n) * spec.n * spec.n * spec.n;
            return 2 * n4;
        }
        case ManifoldFamily::Sphere:
            return spec.d_i_override + 1;
        default:
            return spec.d_i_override;
    }
}

long long ambient_dim(const ManifoldSpec& spec) {
    return spec.ambient_target != 0 ? spec.ambient_target : min_ambient_dim(spec);
}

long long binomial(int n, int k) {
    if (k < 0 || n < 0 || k > n) return 0;
    k = std::min(k, n - k);
    long long acc = 1;
    for (int i = 1; i <= k; ++i) {
        if (acc > 200'000'000'000'000'000LL / std::max(1, n))
            throw resource_limit_error("binomial: value exceeds the supported range");
        acc = acc * (n - k + i) / i;
    }
    return acc;
}

std::vector<std::vector<int>> lex_subsets(int n, int k) {
    const long long total = binomial(n, k);
    if (total > kCoordinateCap)
        throw resource_limit_error("lex_subsets: C(n,k) exceeds the coordinate cap");
    std::vector<std::vector<int>> out;
    out.reserve(static_cast<std::size_t>(total));
    std::vector<int> cur(k);
    for (int i = 0; i < k; ++i) cur[i] = i;
    while (true) {
        out.push_back(cur);
        int i = k - 1;
        while (i >= 0 && cur[i] == n - k + i) --i;
        if (i < 0) break;
        ++cur[i];
        for (int j = i + 1; j < k; ++j) cur[j] = cur[j - 1] + 1;
    }
    return out;
}

Vector st_matrix_coords(const Matrix& x) {
    Vector out(x.rows() * x.cols());
    for (int j = 0; j < x.cols(); ++j) out.segment(j * x.rows(), x.rows()) = x.col(j);
    return out;
}

Vector gr_proj_coords(const Matrix& x) {
    const Matrix p = x * x.transpose();
    Vector out(p.rows() * p.cols());
    for (int j = 0; j < p.cols(); ++j) out.segment(j * p.rows(), p.rows()) = p.col(j);
    return out;
}

namespace {

Vector minor_vector(const Matrix& x, const std::vector<std::vector<int>>& subsets,
                    const std::vector<int>& cols) {
    Vector out(static_cast<long>(subsets.size()));
    for (std::size_t q = 0; q < subsets.size(); ++q)
        out(static_cast<long>(q)) = minor_det(x, subsets[q], cols);
    return out;
}

std::vector<int> iota_cols(int first, int count) {
    std::vector<int> cols(count);
    for (int i = 0; i < count; ++i) cols[i] = first + i;
    return cols;
}

} // namespace

Vector gr_vec_coords(const Matrix& x) {
    const int n = static_cast<int>(x.rows());
    const int k = static_cast<int>(x.cols());
    return minor_vector(x, lex_subsets(n, k), iota_cols(0, k));
}

Vector st_vec_coords(const Matrix& x, const Matrix& v) {
    const Vector gr = gr_vec_coords(x);
    Vector out(gr.size() + v.rows() * v.cols());
    out.head(gr.size()) = gr;
    out.tail(v.rows() * v.cols()) = st_matrix_coords(v);
    return out;
}

Vector flag_vec_coords(const Matrix& o, int k1, int k2) {
    const int n = static_cast<int>(o.rows());
    const Vector dq = minor_vector(o, lex_subsets(n, k1), iota_cols(0, k1));
    const Vector dp = minor_vector(o, lex_subsets(n, k2), iota_cols(k1, k2));
    Vector out(dq.size() * dp.size());
    for (long q = 0; q < dq.size(); ++q)
        out.segment(q * dp.size(), dp.size()) = dq(q) * dp;
    return out;
}

ComplexMatrix pauli_invariant_basis(int n) {
    require(is_prime(n), "pauli_invariant_basis: n must be prime");
    const long n4 = static_cast<long>(n) * n * n * n;
    ComplexMatrix basis = ComplexMatrix::Zero(n4, static_cast<long>(n) * n);
    const double amp = 1.0 / std::sqrt(static_cast<double>(n));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            const long col = static_cast<long>(a) * n + b;
            for (int c = 0; c < n; ++c) {
                const long c2 = (c + a) % n;
                const long c3 = (c + b) % n;
                const long c4 = (c + a + b) % n;
                const long flat = ((static_cast<long>(c) * n + c2) * n + c3) * n + c4;
                basis(flat, col) = amp;
            }
        }
    return basis;
}

ComplexVector pauli_fiducial(int n, RandomStream s) {
    const ComplexMatrix basis = pauli_invariant_basis(n);
    ComplexVector coeffs(basis.cols());
    for (long i = 0; i < coeffs.size(); ++i) coeffs(i) = s.complex_gaussian();
    ComplexVector h = basis * coeffs;
    h /= h.norm();
    return h;
}

ComplexVector pauli_apply_rep(const ComplexMatrix& u, const ComplexVector& psi) {
    const int n = static_cast<int>(u.rows());
    require(u.cols() == n, "pauli_apply_rep: matrix must be square");
    const long n4 = static_cast<long>(n) * n * n * n;
    require(psi.size() == n4, "pauli_apply_rep: vector length must be n^4");

    const ComplexMatrix uconj = u.conjugate();
    ComplexVector cur = psi;
    ComplexVector next(n4);
    ComplexVector x(n), y(n);
    for (int mode = 0; mode < 4; ++mode) {
        const ComplexMatrix& mat = (mode % 2 == 0) ? u : uconj;
        long stride = 1;
        for (int t = mode + 1; t < 4; ++t) stride *= n;
        const long block = stride * n;
        const long blocks = n4 / block;
        for (long b = 0; b < blocks; ++b)
            for (long off = 0; off < stride; ++off) {
                const long base = b * block + off;
                for (int c = 0; c < n; ++c) x(c) = cur(base + c * stride);
                y.noalias() = mat * x;
                for (int c = 0; c < n; ++c) next(base + c * stride) = y(c);
            }
        cur.swap(next);
    }
    return cur;
}

Vector realify(const ComplexVector& psi) {
    Vector out(2 * psi.size());
    out.head(psi.size()) = psi.real();
    out.tail(psi.size()) = psi.imag();
    return out;
}

std::array<double, 2> pauli_generator_residuals(int n, const ComplexVector& h) {
    ComplexMatrix shift = ComplexMatrix::Zero(n, n);
    for (int c = 0; c < n; ++c) shift((c + 1) % n, c) = 1.0;
    ComplexMatrix phase = ComplexMatrix::Zero(n, n);
    const std::complex<double> omega =
        std::exp(std::complex<double>(0.0, 2.0 * std::numbers::pi / n));
    for (int c = 0; c < n; ++c) phase(c, c) = std::pow(omega, c);
    const double rx = (pauli_apply_rep(shift, h) - h).norm();
    const double rz = (pauli_apply_rep(phase, h) - h).norm();
    return {rx, rz};
}

PointCloud sample_st_matrix(const ManifoldSpec& spec, int count, const RandomStream& root) {
    require(spec.family == ManifoldFamily::StMatrix, "sample_st_matrix: wrong family");
    spec.validate();
    check_count(count);
    PointCloud cloud = cloud_shell(spec, count, root, static_cast<long long>(spec.n) * spec.k);
    parallel_for(0, static_cast<std::size_t>(count), [&](std::size_t i) {
        RandomStream s = root.child("row/" + std::to_string(i));
        const Matrix o = haar_orthogonal(spec.n, s);
        cloud.data.row(i) = st_matrix_coords(o.leftCols(spec.k)).transpose();
    });
    return finish_cloud(std::move(cloud), spec, root);
}

PointCloud sample_gr_proj(const ManifoldSpec& spec, int count, const RandomStream& root) {
    require(spec.family == ManifoldFamily::GrProj, "sample_gr_proj: wrong family");
    spec.validate();
    check_count(count);
    PointCloud cloud = cloud_shell(spec, count, root, static_cast<long long>(spec.n) * spec.n);
    parallel_for(0, static_cast<std::size_t>(count), [&](std::size_t i) {
        RandomStream s = root.child("row/" + std::to_string(i));
        const Matrix o = haar_orthogonal(spec.n, s);
        cloud.data.row(i) = gr_proj_coords(o.leftCols(spec.k)).transpose();
    });
    return finish_cloud(std::move(cloud), spec, root);
}

PointCloud sample_gr_vec(const ManifoldSpec& spec, int count, const RandomStream& root) {
    require(spec.family == ManifoldFamily::GrVec, "sample_gr_vec: wrong family");
    spec.validate();
    check_count(count);
    const auto subsets = lex_subsets(spec.n, spec.k); // throws past the coordinate cap
    const auto cols = iota_cols(0, spec.k);
    PointCloud cloud = cloud_shell(spec, count, root, static_cast<long long>(subsets.size()));
    parallel_for(0, static_cast<std::size_t>(count), [&](std::size_t i) {
        RandomStream s = root.child("row/" + std::to_string(i));
        const Matrix o = haar_orthogonal(spec.n, s);
        cloud.data.row(i) = minor_vector(o.leftCols(spec.k), subsets, cols).transpose();
    });
    return finish_cloud(std::move(cloud), spec, root);
}

PointCloud sample_st_vec(const ManifoldSpec& spec, int count, const RandomStream& root) {
    require(spec.family == ManifoldFamily::StVec, "sample_st_vec: wrong family");
    spec.validate();
    check_count(count);
    const auto subsets = lex_subsets(spec.n, spec.k);
    const auto cols = iota_cols(0, spec.k);
    const long long d = static_cast<long long>(subsets.size()) +
                        static_cast<long long>(spec.k) * spec.k;
    PointCloud cloud = cloud_shell(spec, count, root, d);
    parallel_for(0, static_cast<std::size_t>(count), [&](std::size_t i) {
        RandomStream s = root.child("row/" + std::to_string(i));
        const Matrix o = haar_orthogonal(spec.n, s);
        const Matrix v = haar_special_orthogonal(spec.k, s);
        Vector row(d);
        row.head(static_cast<long>(subsets.size())) = minor_vector(o.leftCols(spec.k), subsets, cols);
        row.tail(static_cast<long>(spec.k) * spec.k) = st_matrix_coords(v);
        cloud.data.row(i) = row.transpose();
    });
    return finish_cloud(std::move(cloud), spec, root);
}

PointCloud sample_flag_vec(const ManifoldSpec& spec, int count, const RandomStream& root) {
    require(spec.family == ManifoldFamily::FlagVec, "sample_flag_vec: wrong family");
    spec.validate();
    check_count(count);
    const auto q_subsets = lex_subsets(spec.n, spec.k1);
    const auto p_subsets = lex_subsets(spec.n, spec.k2);
    const long long d = static_cast<long long>(q_subsets.size()) *
                        static_cast<long long>(p_subsets.size());
    if (d > kCoordinateCap)
        throw resource_limit_error("sample_flag_vec: coordinate count exceeds the cap");
    const auto q_cols = iota_cols(0, spec.k1);
    const auto p_cols = iota_cols(spec.k1, spec.k2);
    PointCloud cloud = cloud_shell(spec, count, root, d);
    parallel_for(0, static_cast<std::size_t>(count), [&](std::size_t i) {
        RandomStream s = root.child("row/" + std::to_string(i));
        const Matrix o = haar_orthogonal(spec.n, s);
        const Vector dq = minor_vector(o, q_subsets, q_cols);
        const Vector dp = minor_vector(o, p_subsets, p_cols);
        Vector row(d);
        for (long q = 0; q < dq.size(); ++q)
            row.segment(q * dp.size(), dp.size()) = dq(q) * dp;
        cloud.data.row(i) = row.transpose();
    });
    return finish_cloud(std::move(cloud), spec, root);
}

PointCloud sample_pauli(const ManifoldSpec& spec, int count, const RandomStream& root) {
    require(spec.family == ManifoldFamily::Pauli, "sample_pauli: wrong family");
    spec.validate();
    check_count(count);
    const ComplexVector h = pauli_fiducial(spec.n, root.child("pauli/fiducial"));
    const long long n4 = static_cast<long long>(spec.n) * spec.n * spec.n * spec.n;
    PointCloud cloud = cloud_shell(spec, count, root, 2 * n4);
    parallel_for(0, static_cast<std::size_t>(count), [&](std::size_t i) {
        RandomStream s = root.child("row/" + std::to_string(i));
        const ComplexMatrix u = haar_unitary(spec.n, s);
        cloud.data.row(i) = realify(pauli_apply_rep(u, h)).transpose();
    });
    return finish_cloud(std::move(cloud), spec, root);
}

namespace {

PointCloud baseline_shell(const char* family, int d_i, long long d_a, int count,
                          const RandomStream& root) {
    PointCloud cloud;
    cloud.data.resize(count, d_a);
    cloud.d_i = d_i;
    cloud.family = family;
    cloud.seed_lineage = root.lineage();
    return cloud;
}

} // namespace

PointCloud sample_sphere(int d_i, long long d_a, int count, const RandomStream& root) {
    require(d_i >= 1, "sample_sphere: d_i must be positive");
    require(d_a >= d_i + 1, "sample_sphere: require d_a >= d_i + 1");
    check_count(count);
    PointCloud cloud = baseline_shell("sphere", d_i, d_i + 1, count, root);
    parallel_for(0, static_cast<std::size_t>(count), [&](std::size_t i) {
        RandomStream s = root.child("row/" + std::to_string(i));
        Vector g(d_i + 1);
        do {
            for (int j = 0; j <= d_i; ++j) g(j) = s.normal();
        } while (g.norm() < 1e-300);
        cloud.data.row(i) = (g / g.norm()).transpose();
    });
    if (d_a > cloud.ambient()) return embed_pad(cloud, d_a, root.child("embed"));
    return cloud;
}

PointCloud sample_gaussian(int d_i, long long d_a, int count, const RandomStream& root) {
    require(d_i >= 1, "sample_gaussian: d_i must be positive");
    require(d_a >= d_i, "sample_gaussian: require d_a >= d_i");
    check_count(count);
    PointCloud cloud = baseline_shell("gaussian", d_i, d_i, count, root);
    parallel_for(0, static_cast<std::size_t>(count), [&](std::size_t i) {
        RandomStream s = root.child("row/" + std::to_string(i));
        for (int j = 0; j < d_i; ++j) cloud.data(i, j) = s.normal();
    });
    if (d_a > cloud.ambient()) return embed_pad(cloud, d_a, root.child("embed"));
    return cloud;
}

Matrix affine_constraint_matrix(int d_a, int rank, RandomStream s) {
    require(d_a >= 1, "affine_constraint_matrix: d_a must be positive");
    require(rank >= 0 && rank <= d_a, "affine_constraint_matrix: invalid rank");
    if (rank == 0) return Matrix::Zero(d_a, d_a);
    Matrix b(d_a, rank), c(d_a, rank);
    for (int i = 0; i < d_a; ++i)
        for (int j = 0; j < rank; ++j) b(i, j) = s.normal();
    for (int i = 0; i < d_a; ++i)
        for (int j = 0; j < rank; ++j) c(i, j) = s.normal();
    return b * c.transpose();
}

PointCloud sample_affine(int d_i, long long d_a, int count, const RandomStream& root) {
    require(d_i >= 1 && d_i <= d_a, "sample_affine: require 1 <= d_i <= d_a");
    check_count(count);
    const int da = static_cast<int>(d_a);
    const int rank = da - d_i;

    // The second Gaussian factor fixes both the constraint matrix and its
    // nullspace, so rebuild it here exactly as affine_constraint_matrix does.
    RandomStream cs = root.child("affine/constraint");
    Matrix basis;
    if (rank == 0) {
        basis = Matrix::Identity(da, da);
    } else {
        Matrix b(da, rank), c(da, rank);
        for (int i = 0; i < da; ++i)
            for (int j = 0; j < rank; ++j) b(i, j) = cs.normal();
        for (int i = 0; i < da; ++i)
            for (int j = 0; j < rank; ++j) c(i, j) = cs.normal();
        Eigen::HouseholderQR<Matrix> qr(c);
        const Matrix q = qr.householderQ();
        basis = q.rightCols(d_i);
    }

    PointCloud cloud = baseline_shell("affine", d_i, d_a, count, root);
    parallel_for(0, static_cast<std::size_t>(count), [&](std::size_t i) {
        RandomStream s = root.child("row/" + std::to_string(i));
        Vector z(d_i);
        for (int j = 0; j < d_i; ++j) z(j) = s.normal();
        cloud.data.row(i) = (basis * z).transpose();
    });
    return cloud;
}

Eigen::RowVectorXd mbeta_map(const Eigen::RowVectorXd& x) {
    return (2.0 * std::numbers::pi * x.array()).cos().sin().matrix();
}

PointCloud sample_mbeta(int d_i, long long d_a, int count, const RandomStream& root) {
    require(d_i >= 1, "sample_mbeta: d_i must be positive");
    require(d_a >= d_i, "sample_mbeta: require d_a >= d_i");
    check_count(count);
    PointCloud cloud = baseline_shell("mbeta", d_i, d_i, count, root);
    parallel_for(0, static_cast<std::size_t>(count), [&](std::size_t i) {
        RandomStream s = root.child("row/" + std::to_string(i));
        Eigen::RowVectorXd x(d_i);
        for (int j = 0; j < d_i; ++j) x(j) = s.uniform01();
        cloud.data.row(i) = mbeta_map(x);
    });
    if (d_a > cloud.ambient()) return embed_pad(cloud, d_a, root.child("embed"));
    return cloud;
}

PointCloud embed_pad(const PointCloud& cloud, long long d_a_target, RandomStream s) {
    const long long cur = cloud.ambient();
    if (d_a_target < cur)
        throw std::invalid_argument("embed_pad: target below the current ambient dimension");
    if (d_a_target == cur) return cloud;
    const Matrix q = haar_orthogonal(static_cast<int>(d_a_target), s);
    PointCloud out = cloud;
    out.data = cloud.data * q.topRows(cur);
    return out;
}

PointCloud sample_cloud(const ManifoldSpec& spec, int count, const RandomStream& root) {
    spec.validate();
    switch (spec.family) {
        case ManifoldFamily::StMatrix: return sample_st_matrix(spec, count, root);
        case ManifoldFamily::StVec: return sample_st_vec(spec, count, root);
        case ManifoldFamily::GrProj: return sample_gr_proj(spec, count, root);
        case ManifoldFamily::GrVec: return sample_gr_vec(spec, count, root);
        case ManifoldFamily::FlagVec: return sample_flag_vec(spec, count, root);
        case ManifoldFamily::Pauli: return sample_pauli(spec, count, root);
        case ManifoldFamily::Sphere:
            return sample_sphere(spec.d_i_override, ambient_dim(spec), count, root);
        case ManifoldFamily::Gaussian:
            return sample_gaussian(spec.d_i_override, ambient_dim(spec), count, root);
        case ManifoldFamily::Affine:
            return sample_affine(spec.d_i_override, ambient_dim(spec), count, root);
        case ManifoldFamily::MBeta:
            return sample_mbeta(spec.d_i_override, ambient_dim(spec), count, root);
    }
    throw std::invalid_argument("sample_cloud: unknown family");
}

} // namespace geodim
