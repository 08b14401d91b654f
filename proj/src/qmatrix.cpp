#include "qmatrix.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <json.hpp>

#include "error.hpp"

namespace qcf {

QMatrix QMatrix::identity(int n) {
    QMatrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = Quaternion::one();
    return m;
}

QMatrix QMatrix::diagonal(const std::vector<Quaternion>& d) {
    QMatrix m(static_cast<int>(d.size()), static_cast<int>(d.size()));
    for (int i = 0; i < m.rows(); ++i) m(i, i) = d[i];
    return m;
}

QMatrix QMatrix::jordan_block(int n, const Complex& lambda) {
    QMatrix m(n, n);
    for (int i = 0; i < n; ++i) {
        m(i, i) = from_complex(lambda);
        if (i + 1 < n) m(i, i + 1) = Quaternion::one();
    }
    return m;
}

QMatrix QMatrix::operator+(const QMatrix& o) const {
    QMatrix r(rows_, cols_);
    for (size_t i = 0; i < e_.size(); ++i) r.e_[i] = e_[i] + o.e_[i];
    return r;
}

QMatrix QMatrix::operator-(const QMatrix& o) const {
    QMatrix r(rows_, cols_);
    for (size_t i = 0; i < e_.size(); ++i) r.e_[i] = e_[i] - o.e_[i];
    return r;
}

QMatrix QMatrix::operator*(const QMatrix& o) const {
    if (cols_ != o.rows_)
        throw Error(ErrorCode::shape_mismatch, "matrix product: inner dimensions differ");
    QMatrix r(rows_, o.cols_);
    for (int i = 0; i < rows_; ++i)
        for (int k = 0; k < cols_; ++k) {
            const Quaternion& a = (*this)(i, k);
            if (a.is_zero()) continue;
            for (int j = 0; j < o.cols_; ++j)
                r(i, j) += a * o(k, j);
        }
    return r;
}

QMatrix QMatrix::operator*(double s) const {
    QMatrix r(rows_, cols_);
    for (size_t i = 0; i < e_.size(); ++i) r.e_[i] = e_[i] * s;
    return r;
}

QMatrix QMatrix::operator*(const Quaternion& s) const {
    QMatrix r(rows_, cols_);
    for (size_t i = 0; i < e_.size(); ++i) r.e_[i] = e_[i] * s;
    return r;
}

QMatrix QMatrix::conj_transpose() const {
    QMatrix r(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j)
            r(j, i) = conjugate((*this)(i, j));
    return r;
}

double QMatrix::frobenius() const {
    double s = 0.0;
    for (const Quaternion& q : e_) s += q.norm_sq();
    return std::sqrt(s);
}

double QMatrix::max_norm() const {
    double m = 0.0;
    for (const Quaternion& q : e_) m = std::max(m, q.norm());
    return m;
}

QMatrix QMatrix::block(int i0, int j0, int rows, int cols) const {
    QMatrix r(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j)
            r(i, j) = (*this)(i0 + i, j0 + j);
    return r;
}

void QMatrix::set_block(int i0, int j0, const QMatrix& b) {
    for (int i = 0; i < b.rows(); ++i)
        for (int j = 0; j < b.cols(); ++j)
            (*this)(i0 + i, j0 + j) = b(i, j);
}

QMatrix QMatrix::column(int j) const { return block(0, j, rows_, 1); }

void QMatrix::set_column(int j, const QMatrix& v) { set_block(0, j, v); }

QMatrix QMatrix::direct_sum(const QMatrix& o) const {
    QMatrix r(rows_ + o.rows_, cols_ + o.cols_);
    r.set_block(0, 0, *this);
    r.set_block(rows_, cols_, o);
    return r;
}

QMatrix QMatrix::symmetric_permute(const std::vector<int>& perm) const {
    QMatrix r(rows_, cols_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j)
            r(i, j) = (*this)(perm[i], perm[j]);
    return r;
}

QMatrix QMatrix::power(int k) const {
    QMatrix r = identity(rows_);
    for (int t = 0; t < k; ++t) r = r * (*this);
    return r;
}

CMatrix adjoint_complex(const QMatrix& a) {
    const int m = a.rows(), n = a.cols();
    CMatrix r(2 * m, 2 * n);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < n; ++j) {
            ComplexPair p = complex_split(a(i, j));
            r(i, j) = p.z1;
            r(i, j + n) = p.z2;
            r(i + m, j) = -std::conj(p.z2);
            r(i + m, j + n) = std::conj(p.z1);
        }
    return r;
}

std::string matrix_to_json(const QMatrix& a) {
    nlohmann::json rows = nlohmann::json::array();
    for (int i = 0; i < a.rows(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (int j = 0; j < a.cols(); ++j) {
            const Quaternion& q = a(i, j);
            row.push_back({q.w, q.x, q.y, q.z});
        }
        rows.push_back(row);
    }
    nlohmann::json out{{"rows", a.rows()}, {"cols", a.cols()}, {"entries", rows}};
    return out.dump();
}

QMatrix matrix_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::parse, std::string("matrix JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("rows") || !j.contains("cols") || !j.contains("entries"))
        throw Error(ErrorCode::parse, "matrix JSON: expected object with rows, cols, entries");
    int rows = 0, cols = 0;
    try {
        rows = j["rows"].get<int>();
        cols = j["cols"].get<int>();
    } catch (const nlohmann::json::exception&) {
        throw Error(ErrorCode::parse, "matrix JSON: rows/cols must be integers");
    }
    if (rows <= 0 || cols <= 0)
        throw Error(ErrorCode::parse, "matrix JSON: rows and cols must be positive");
    const auto& entries = j["entries"];
    if (!entries.is_array() || static_cast<int>(entries.size()) != rows)
        throw Error(ErrorCode::parse, "matrix JSON: entries must hold one array per row");
    QMatrix a(rows, cols);
    for (int i = 0; i < rows; ++i) {
        const auto& row = entries[i];
        if (!row.is_array() || static_cast<int>(row.size()) != cols)
            throw Error(ErrorCode::parse, "matrix JSON: row length differs from cols");
        for (int jx = 0; jx < cols; ++jx) {
            const auto& q = row[jx];
            if (!q.is_array() || q.size() != 4 || !q[0].is_number())
                throw Error(ErrorCode::parse, "matrix JSON: each entry must be a [w,x,y,z] number array");
            a(i, jx) = Quaternion{q[0].get<double>(), q[1].get<double>(), q[2].get<double>(),
                                  q[3].get<double>()};
        }
    }
    return a;
}

std::string format_quaternion(const Quaternion& q) {
    std::ostringstream os;
    os.precision(6);
    bool first = true;
    auto term = [&](double c, const char* unit) {
        if (c == 0.0) return;
        if (first) {
            os << c << unit;
            first = false;
        } else {
            os << (c < 0 ? " - " : " + ") << std::abs(c) << unit;
        }
    };
    term(q.w, "");
    term(q.x, "i");
    term(q.y, "j");
    term(q.z, "k");
    if (first) os << 0.0;
    return os.str();
}

} // namespace qcf
