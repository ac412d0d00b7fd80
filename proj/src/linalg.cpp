#include "geodim/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace geodim {

namespace {

constexpr double kPivotFloor = 1e-12;

void check_positive(int n, const char* who) {
    if (n < 1) throw std::invalid_argument(std::string(who) + ": dimension must be positive");
}

} // namespace

Matrix haar_orthogonal(int n, RandomStream& s) {
    check_positive(n, "haar_orthogonal");
    Matrix g(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) g(i, j) = s.normal();
    Eigen::HouseholderQR<Matrix> qr(g);
    Matrix q = qr.householderQ();
    const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int j = 0; j < n; ++j)
        if (r(j, j) < 0.0) q.col(j) = -q.col(j);
    return q;
}

Matrix haar_special_orthogonal(int k, RandomStream& s) {
    check_positive(k, "haar_special_orthogonal");
    Matrix o = haar_orthogonal(k, s);
    if (o.determinant() < 0.0) o.col(k - 1) = -o.col(k - 1);
    return o;
}

ComplexMatrix haar_unitary(int n, RandomStream& s) {
    check_positive(n, "haar_unitary");
    ComplexMatrix g(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) g(i, j) = s.complex_gaussian();
    Eigen::HouseholderQR<ComplexMatrix> qr(g);
    ComplexMatrix q = qr.householderQ();
    const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int j = 0; j < n; ++j) {
        const std::complex<double> d = r(j, j);
        const double a = std::abs(d);
        if (a > 0.0) q.col(j) *= d / a;
    }
    return q;
}

double minor_det(const Matrix& m, std::span<const int> row_set,
                 std::span<const int> col_set) {
    const int k = static_cast<int>(row_set.size());
    if (col_set.size() != row_set.size())
        throw std::invalid_argument("minor_det: row and column lists differ in length");
    if (k == 0) return 1.0; // empty minor by convention
    if (k > m.rows() || k > m.cols())
        throw std::invalid_argument("minor_det: selection larger than the matrix");

    auto validate = [](std::span<const int> idx, long bound, const char* what) {
        std::vector<int> sorted(idx.begin(), idx.end());
        std::sort(sorted.begin(), sorted.end());
        for (std::size_t i = 0; i < sorted.size(); ++i) {
            if (sorted[i] < 0 || sorted[i] >= bound)
                throw std::invalid_argument(std::string("minor_det: ") + what + " index out of range");
            if (i > 0 && sorted[i] == sorted[i - 1])
                throw std::invalid_argument(std::string("minor_det: duplicate ") + what + " index");
        }
    };
    validate(row_set, m.rows(), "row");
    validate(col_set, m.cols(), "column");

    // in-place LU with partial pivoting on the selected submatrix
    std::vector<double> a(static_cast<std::size_t>(k) * k);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j)
            a[static_cast<std::size_t>(i) * k + j] = m(row_set[i], col_set[j]);

    double det = 1.0;
    for (int c = 0; c < k; ++c) {
        int pivot = c;
        double best = std::abs(a[static_cast<std::size_t>(c) * k + c]);
        for (int i = c + 1; i < k; ++i) {
            const double v = std::abs(a[static_cast<std::size_t>(i) * k + c]);
            if (v > best) {
                best = v;
                pivot = i;
            }
        }
        if (best < kPivotFloor) return 0.0;
        if (pivot != c) {
            for (int j = 0; j < k; ++j)
                std::swap(a[static_cast<std::size_t>(pivot) * k + j],
                          a[static_cast<std::size_t>(c) * k + j]);
            det = -det;
        }
        const double p = a[static_cast<std::size_t>(c) * k + c];
        det *= p;
        for (int i = c + 1; i < k; ++i) {
            const double f = a[static_cast<std::size_t>(i) * k + c] / p;
            for (int j = c + 1; j < k; ++j)
                a[static_cast<std::size_t>(i) * k + j] -= f * a[static_cast<std::size_t>(c) * k + j];
        }
    }
    return det;
}

SymEig sym_eig_desc(const Matrix& s) {
    if (s.rows() != s.cols())
        throw std::invalid_argument("sym_eig_desc: matrix must be square");
    const double scale = std::max(1.0, s.cwiseAbs().maxCoeff());
    const double asym = (s - s.transpose()).cwiseAbs().maxCoeff();
    if (asym > 1e-8 * scale)
        throw std::invalid_argument("sym_eig_desc: matrix is not symmetric");

    const Matrix sym = 0.5 * (s + s.transpose());
    Eigen::SelfAdjointEigenSolver<Matrix> solver(sym);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("sym_eig_desc: eigensolver failed to converge");

    const int n = static_cast<int>(s.rows());
    SymEig out;
    out.values = solver.eigenvalues().reverse();
    out.vectors.resize(n, n);
    for (int j = 0; j < n; ++j) out.vectors.col(j) = solver.eigenvectors().col(n - 1 - j);
    return out;
}

} // namespace geodim
