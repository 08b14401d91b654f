#pragma once

#include <complex>
#include <vector>

#include "quat.hpp"

namespace qcf {

/// Dense complex matrix, row-major. Internal helper for the adjoint
/// representation and its eigenvalues.
class CMatrix {
public:
    CMatrix() = default;
    CMatrix(int rows, int cols) : rows_(rows), cols_(cols), e_(static_cast<size_t>(rows) * cols) {}

    static CMatrix identity(int n);

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    Complex& operator()(int i, int j) { return e_[static_cast<size_t>(i) * cols_ + j]; }
    const Complex& operator()(int i, int j) const { return e_[static_cast<size_t>(i) * cols_ + j]; }

    CMatrix operator*(const CMatrix& o) const;
    CMatrix operator-(const CMatrix& o) const;
    CMatrix conj_transpose() const;

    double frobenius() const;

private:
    int rows_{0}, cols_{0};
    std::vector<Complex> e_;
};

/// All eigenvalues via Householder Hessenberg reduction followed by
/// Wilkinson-shifted QR. Throws Error(no_convergence) past iter_cap steps.
std::vector<Complex> eigenvalues(CMatrix a, int iter_cap);

/// tr((z I - A)^{-1}), the logarithmic derivative of det(z I - A). Used to
/// polish clustered eigenvalues of defective matrices.
Complex shifted_inverse_trace(const CMatrix& a, const Complex& z);

} // namespace qcf
