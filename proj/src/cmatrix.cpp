#include "cmatrix.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "error.hpp"

namespace qcf {

CMatrix CMatrix::identity(int n) {
    CMatrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

CMatrix CMatrix::operator*(const CMatrix& o) const {
    CMatrix r(rows_, o.cols_);
    for (int i = 0; i < rows_; ++i)
        for (int k = 0; k < cols_; ++k) {
            Complex a = (*this)(i, k);
            if (a == Complex{}) continue;
            for (int j = 0; j < o.cols_; ++j)
                r(i, j) += a * o(k, j);
        }
    return r;
}

CMatrix CMatrix::operator-(const CMatrix& o) const {
    CMatrix r(rows_, cols_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j)
            r(i, j) = (*this)(i, j) - o(i, j);
    return r;
}

CMatrix CMatrix::conj_transpose() const {
    CMatrix r(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j)
            r(j, i) = std::conj((*this)(i, j));
    return r;
}

double CMatrix::frobenius() const {
    double s = 0.0;
    for (const Complex& c : e_) s += std::norm(c);
    return std::sqrt(s);
}

namespace {

// Householder reduction to upper Hessenberg form, in place.
void hessenberg_reduce(CMatrix& a) {
    const int n = a.rows();
    for (int k = 0; k + 2 < n; ++k) {
        double scale = 0.0;
        for (int i = k + 1; i < n; ++i) scale += std::abs(a(i, k));
        if (scale == 0.0) continue;

        std::vector<Complex> v(n - k - 1);
        double vnorm2 = 0.0;
        for (int i = k + 1; i < n; ++i) {
            v[i - k - 1] = a(i, k) / scale;
            vnorm2 += std::norm(v[i - k - 1]);
        }
        double alpha = std::sqrt(vnorm2);
        if (alpha == 0.0) continue;
        Complex phase = v[0] == Complex{} ? Complex{1.0, 0.0} : v[0] / std::abs(v[0]);
        v[0] += phase * alpha;
        double vv = 0.0;
        for (const Complex& c : v) vv += std::norm(c);
        if (vv == 0.0) continue;

        // A <- (I - 2 v v*/v*v) A (both sides).
        for (int j = k; j < n; ++j) {
            Complex s{};
            for (int i = k + 1; i < n; ++i) s += std::conj(v[i - k - 1]) * a(i, j);
            s *= 2.0 / vv;
            for (int i = k + 1; i < n; ++i) a(i, j) -= v[i - k - 1] * s;
        }
        for (int i = 0; i < n; ++i) {
            Complex s{};
            for (int j = k + 1; j < n; ++j) s += a(i, j) * v[j - k - 1];
            s *= 2.0 / vv;
            for (int j = k + 1; j < n; ++j) a(i, j) -= s * std::conj(v[j - k - 1]);
        }
        for (int i = k + 2; i < n; ++i) a(i, k) = 0.0;
    }
}

// Eigenvalues of a 2x2 block; returns the root closer to d as first.
std::pair<Complex, Complex> eig2(const Complex& a, const Complex& b, const Complex& c, const Complex& d) {
    Complex tr = a + d;
    Complex half = (a - d) * 0.5;
    Complex disc = std::sqrt(half * half + b * c);
    Complex m1 = tr * 0.5 + disc;
    Complex m2 = tr * 0.5 - disc;
    if (std::abs(m1 - d) <= std::abs(m2 - d)) return {m1, m2};
    return {m2, m1};
}

struct Givens {
    Complex x, y; // unnormalized; rotation rows are (conj(x), conj(y)) / r and (-y, x) / r
    double r;
};

} // namespace

std::vector<Complex> eigenvalues(CMatrix a, int iter_cap) {
    const int n = a.rows();
    if (n != a.cols())
        throw Error(ErrorCode::invalid_argument, "eigenvalues: matrix must be square");
    std::vector<Complex> out;
    out.reserve(n);
    if (n == 0) return out;

    hessenberg_reduce(a);
    const double eps = std::numeric_limits<double>::epsilon();
    const double anorm = a.frobenius();

    int hi = n - 1;
    int iters = 0;
    while (hi >= 0) {
        // deflate trailing 1x1 / find the active window start
        int lo = hi;
        while (lo > 0) {
            double s = std::abs(a(lo - 1, lo - 1)) + std::abs(a(lo, lo));
            if (s == 0.0) s = anorm;
            if (std::abs(a(lo, lo - 1)) <= eps * s) {
                a(lo, lo - 1) = 0.0;
                break;
            }
            --lo;
        }
        if (lo == hi) {
            out.push_back(a(hi, hi));
            --hi;
            continue;
        }
        if (lo == hi - 1) {
            auto [m1, m2] = eig2(a(lo, lo), a(lo, hi), a(hi, lo), a(hi, hi));
            out.push_back(m1);
            out.push_back(m2);
            hi -= 2;
            continue;
        }
        if (++iters > iter_cap)
            throw Error(ErrorCode::no_convergence, "eigenvalues: QR iteration cap exceeded");

        // Wilkinson shift from the trailing 2x2 of the window.
        Complex mu = eig2(a(hi - 1, hi - 1), a(hi - 1, hi), a(hi, hi - 1), a(hi, hi)).first;
        // Exceptional shift every so often to break stagnation cycles.
        if (iters % 30 == 0)
            mu = a(hi, hi) + Complex{std::abs(a(hi, hi - 1)), 0.0};

        // Explicit shifted QR sweep on the window [lo, hi].
        std::vector<Givens> rot(hi - lo);
        for (int k = lo; k < hi + 1; ++k) a(k, k) -= mu;
        for (int k = lo; k < hi; ++k) {
            Complex x = a(k, k);
            Complex y = a(k + 1, k);
            double r = std::sqrt(std::norm(x) + std::norm(y));
            rot[k - lo] = {x, y, r};
            if (r == 0.0) continue;
            for (int j = k; j <= hi; ++j) {
                Complex t1 = a(k, j), t2 = a(k + 1, j);
                a(k, j) = (std::conj(x) * t1 + std::conj(y) * t2) / r;
                a(k + 1, j) = (-y * t1 + x * t2) / r;
            }
        }
        for (int k = lo; k < hi; ++k) {
            const Givens& g = rot[k - lo];
            if (g.r == 0.0) continue;
            int bottom = std::min(k + 1, hi);
            for (int i = lo; i <= bottom; ++i) {
                Complex t1 = a(i, k), t2 = a(i, k + 1);
                a(i, k) = (t1 * g.x + t2 * g.y) / g.r;
                a(i, k + 1) = (-t1 * std::conj(g.y) + t2 * std::conj(g.x)) / g.r;
            }
        }
        for (int k = lo; k < hi + 1; ++k) a(k, k) += mu;
    }
    return out;
}

Complex shifted_inverse_trace(const CMatrix& a, const Complex& z) {
    const int n = a.rows();
    CMatrix m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            m(i, j) = (i == j ? z : Complex{}) - a(i, j);
    // LU with partial pivoting
    std::vector<int> perm(n);
    for (int i = 0; i < n; ++i) perm[i] = i;
    for (int k = 0; k < n; ++k) {
        int p = k;
        for (int i = k + 1; i < n; ++i)
            if (std::abs(m(i, k)) > std::abs(m(p, k))) p = i;
        if (p != k) {
            for (int j = 0; j < n; ++j) std::swap(m(p, j), m(k, j));
            std::swap(perm[p], perm[k]);
        }
        if (m(k, k) == Complex{})
            throw Error(ErrorCode::internal, "shifted_inverse_trace: singular shift");
        for (int i = k + 1; i < n; ++i) {
            Complex f = m(i, k) / m(k, k);
            m(i, k) = f;
            for (int j = k + 1; j < n; ++j) m(i, j) -= f * m(k, j);
        }
    }
    Complex trace{};
    std::vector<Complex> x(n);
    for (int col = 0; col < n; ++col) {
        for (int i = 0; i < n; ++i) x[i] = perm[i] == col ? Complex{1.0, 0.0} : Complex{};
        for (int i = 0; i < n; ++i)
            for (int k = 0; k < i; ++k) x[i] -= m(i, k) * x[k];
        for (int i = n - 1; i >= 0; --i) {
            for (int k = i + 1; k < n; ++k) x[i] -= m(i, k) * x[k];
            x[i] /= m(i, i);
        }
        trace += x[col];
    }
    return trace;
}

} // namespace qcf
