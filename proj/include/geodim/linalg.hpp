#pragma once

#include <Eigen/Dense>
#include <span>

#include "geodim/rng.hpp"

namespace geodim {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

/// Haar-distributed matrix on O(n): QR of a standard-normal matrix with the
/// sign of the R diagonal absorbed into Q.
Matrix haar_orthogonal(int n, RandomStream& s);

/// Haar on SO(k); the last column of an O(k) draw is negated when det = -1.
Matrix haar_special_orthogonal(int k, RandomStream& s);

/// Haar on U(n): complex Gaussian QR with the R diagonal phase absorbed.
ComplexMatrix haar_unitary(int n, RandomStream& s);

/// Determinant of the square submatrix selected by the ordered index lists.
/// LU with partial pivoting; a pivot below 1e-12 reports a singular
/// submatrix as 0. Throws std::invalid_argument on duplicate or
/// out-of-range indices or mismatched list lengths.
double minor_det(const Matrix& m, std::span<const int> row_set,
                 std::span<const int> col_set);

struct SymEig {
    Vector values;  // descending
    Matrix vectors; // columns aligned with values
};

/// Eigendecomposition of a symmetric matrix, eigenvalues descending.
/// Throws std::invalid_argument when the input is not symmetric within
/// 1e-8 (relative to the largest entry, floored at 1).
SymEig sym_eig_desc(const Matrix& s);

} // namespace geodim
