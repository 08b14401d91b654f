#pragma once

#include <string>
#include <vector>

#include "cmatrix.hpp"
#include "quat.hpp"

namespace qcf {

/// Dense m x n quaternion matrix, row-major, immutable by convention once built.
class QMatrix {
public:
    QMatrix() = default;
    QMatrix(int rows, int cols) : rows_(rows), cols_(cols), e_(static_cast<size_t>(rows) * cols) {}

    static QMatrix identity(int n);
    static QMatrix zero(int rows, int cols) { return QMatrix(rows, cols); }
    static QMatrix diagonal(const std::vector<Quaternion>& d);
    static QMatrix jordan_block(int n, const Complex& lambda);

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    Quaternion& operator()(int i, int j) { return e_[static_cast<size_t>(i) * cols_ + j]; }
    const Quaternion& operator()(int i, int j) const { return e_[static_cast<size_t>(i) * cols_ + j]; }

    bool operator==(const QMatrix&) const = default;

    QMatrix operator+(const QMatrix& o) const;
    QMatrix operator-(const QMatrix& o) const;
    QMatrix operator*(const QMatrix& o) const;
    QMatrix operator*(double s) const;
    /// Entrywise right scalar multiple A * s (column-space combinations).
    QMatrix operator*(const Quaternion& s) const;

    /// Conjugate transpose A*.
    QMatrix conj_transpose() const;

    double frobenius() const;
    double max_norm() const;

    QMatrix block(int i0, int j0, int rows, int cols) const;
    void set_block(int i0, int j0, const QMatrix& b);
    QMatrix column(int j) const;
    void set_column(int j, const QMatrix& v);

    /// A (+) B on the diagonal.
    QMatrix direct_sum(const QMatrix& o) const;

    /// Simultaneous row/column reorder: result(i, j) = (*this)(perm[i], perm[j]).
    QMatrix symmetric_permute(const std::vector<int>& perm) const;

    QMatrix power(int k) const;

private:
    int rows_{0}, cols_{0};
    std::vector<Quaternion> e_;
};

inline double residual(const QMatrix& a, const QMatrix& b) { return (a - b).frobenius(); }

/// Complex adjoint: writing A = A1 + A2 j entrywise, returns
/// [[A1, A2], [-conj(A2), conj(A1)]]. Multiplicative and *-preserving.
CMatrix adjoint_complex(const QMatrix& a);

/// JSON matrix format {"rows": n, "cols": m, "entries": [[[w,x,y,z],...],...]}.
std::string matrix_to_json(const QMatrix& a);
QMatrix matrix_from_json(const std::string& text);

/// "w+xi+yj+zk" with 6 significant digits, terms with zero coefficient dropped.
std::string format_quaternion(const Quaternion& q);

} // namespace qcf
