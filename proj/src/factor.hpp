#pragma once

#include <vector>

#include "qmatrix.hpp"

namespace qcf {

struct QRResult {
    QMatrix Q; // unitary
    QMatrix R; // upper triangular, positive real diagonal
};

/// QR of a square nonsingular matrix by modified Gram-Schmidt on the columns
/// (one reorthogonalization pass). Throws Error(singular_input) when a
/// residual norm falls to eps_rank * column scale.
QRResult gram_schmidt_qr(const QMatrix& s, const Tolerance& tol);

/// Numerical rank by quaternion row reduction with largest-norm full pivoting;
/// pivots at or below eps_rank * ||A||_F count as zero.
int rank(const QMatrix& a, const Tolerance& tol);

/// Quaternion inner product u* v of two column vectors.
Quaternion dot(const QMatrix& u, const QMatrix& v);

/// Orthonormal basis of span(cols), rank revealing. Columns of `against`
/// (assumed orthonormal) are projected away first and not included.
QMatrix orthonormal_columns(const QMatrix& cols, const Tolerance& tol,
                            const QMatrix* against = nullptr);

/// Extend orthonormal columns (n x r) to an n x n unitary matrix.
QMatrix complete_unitary(const QMatrix& q);

/// Basis of the right null space {x : A x = 0}, one column per kernel vector.
QMatrix kernel_basis(const QMatrix& a, const Tolerance& tol);

struct SVDResult {
    QMatrix U;                 // m x m unitary
    QMatrix V;                 // n x n unitary
    std::vector<double> sigma; // min(m, n) values, descending
};

/// Quaternion SVD A = U diag(sigma) V by one-sided Jacobi on the columns.
SVDResult svd(const QMatrix& a, const Tolerance& tol);

struct EigenPair {
    Complex value;    // standard eigenvalue, Im >= 0
    int multiplicity; // algebraic
};
using EigenList = std::vector<EigenPair>;

/// Standard right eigenvalues with algebraic multiplicities, sorted
/// descending under succeq. Computed from the complex adjoint matrix,
/// clustered at eps_eig * (1 + ||A||) and conjugate-paired.
EigenList right_eigenvalues(const QMatrix& a, const Tolerance& tol);

// ---- real-linear machinery (the map v -> Av - v*lambda is only R-linear) ----

struct RMatrix {
    int rows{0}, cols{0};
    std::vector<double> e;

    RMatrix() = default;
    RMatrix(int r, int c) : rows(r), cols(c), e(static_cast<size_t>(r) * c) {}
    double& at(int i, int j) { return e[static_cast<size_t>(i) * cols + j]; }
    double at(int i, int j) const { return e[static_cast<size_t>(i) * cols + j]; }
    double frobenius() const;
};

std::vector<double> qvec_to_real(const QMatrix& v);
QMatrix real_to_qvec(const std::vector<double>& x, int n);

/// 4n x 4n real matrix of v -> A v - v lambda.
RMatrix sylvester_real(const QMatrix& a, const Complex& lambda);

/// Null space basis of a real matrix via row reduction.
std::vector<std::vector<double>> real_kernel(RMatrix m, double pivot_threshold);

/// Particular solution of M x = b (free variables zero). Returns false when
/// the system is inconsistent at the given thresholds.
bool real_solve(RMatrix m, std::vector<double> b, std::vector<double>& x,
                double pivot_threshold, double residual_threshold);

} // namespace qcf
