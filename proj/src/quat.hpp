#pragma once

#include <cmath>
#include <complex>

namespace qcf {

using Complex = std::complex<double>;

/// Real quaternion w + xi + yj + zk.
struct Quaternion {
    double w{0.0}, x{0.0}, y{0.0}, z{0.0};

    constexpr Quaternion() = default;
    constexpr Quaternion(double w_, double x_, double y_, double z_)
        : w(w_), x(x_), y(y_), z(z_) {}
    constexpr explicit Quaternion(double real) : w(real) {}
    explicit Quaternion(const Complex& c) : w(c.real()), x(c.imag()) {}

    constexpr bool operator==(const Quaternion&) const = default;

    constexpr Quaternion operator-() const { return {-w, -x, -y, -z}; }

    constexpr Quaternion& operator+=(const Quaternion& o) {
        w += o.w; x += o.x; y += o.y; z += o.z;
        return *this;
    }
    constexpr Quaternion& operator-=(const Quaternion& o) {
        w -= o.w; x -= o.x; y -= o.y; z -= o.z;
        return *this;
    }
    constexpr Quaternion& operator*=(double s) {
        w *= s; x *= s; y *= s; z *= s;
        return *this;
    }

    friend constexpr Quaternion operator+(Quaternion a, const Quaternion& b) { return a += b; }
    friend constexpr Quaternion operator-(Quaternion a, const Quaternion& b) { return a -= b; }
    friend constexpr Quaternion operator*(Quaternion a, double s) { return a *= s; }
    friend constexpr Quaternion operator*(double s, Quaternion a) { return a *= s; }
    friend constexpr Quaternion operator/(Quaternion a, double s) { return a *= (1.0 / s); }

    // Hamilton product, ij = k.
    friend constexpr Quaternion operator*(const Quaternion& a, const Quaternion& b) {
        return {a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
                a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
                a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
                a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w};
    }

    constexpr double norm_sq() const { return w * w + x * x + y * y + z * z; }
    double norm() const {
        if (x == 0.0 && y == 0.0 && z == 0.0) return std::abs(w);
        return std::sqrt(norm_sq());
    }
    double imag_norm() const { return std::sqrt(x * x + y * y + z * z); }

    constexpr bool is_zero() const { return w == 0.0 && x == 0.0 && y == 0.0 && z == 0.0; }

    static constexpr Quaternion zero() { return {}; }
    static constexpr Quaternion one() { return {1.0, 0.0, 0.0, 0.0}; }
    static constexpr Quaternion i() { return {0.0, 1.0, 0.0, 0.0}; }
    static constexpr Quaternion j() { return {0.0, 0.0, 1.0, 0.0}; }
    static constexpr Quaternion k() { return {0.0, 0.0, 0.0, 1.0}; }
};

/// The split q = z1 + z2*j with z1 = w + xi, z2 = y + zi.
struct ComplexPair {
    Complex z1, z2;
};

struct Tolerance {
    double eps_rank{1e-9};
    double eps_eig{1e-8};
    double eps_canon{1e-8};
};

constexpr Quaternion conjugate(const Quaternion& q) { return {q.w, -q.x, -q.y, -q.z}; }

inline Quaternion inverse(const Quaternion& q) { return conjugate(q) / q.norm_sq(); }

inline Quaternion normalized(const Quaternion& q) { return q / q.norm(); }

constexpr ComplexPair complex_split(const Quaternion& q) {
    return {Complex{q.w, q.x}, Complex{q.y, q.z}};
}

constexpr Quaternion from_split(const Complex& z1, const Complex& z2) {
    return {z1.real(), z1.imag(), z2.real(), z2.imag()};
}

inline Quaternion from_complex(const Complex& c) { return {c.real(), c.imag(), 0.0, 0.0}; }

/// True when the imaginary norm is at most eps*(1+|q|); applied before any
/// branch that dispatches on real vs nonreal.
inline bool is_real(const Quaternion& q, double eps) {
    return q.imag_norm() <= eps * (1.0 + q.norm());
}

/// The unique similar complex number with nonnegative imaginary part.
inline Complex standardize(const Quaternion& q) {
    return {q.w, q.imag_norm()};
}

/// Unit s with s^{-1} q s = standardize(q). Closed form s = normalize(i + u)
/// with u the normalized imaginary part; falls back to s = j at u = -i.
Quaternion standardizing_conjugator(const Quaternion& q, double eps_canon = 1e-8);

/// Total order (1.1) on C: a+bi >= c+di iff (a >= c and b == d) or b > d.
constexpr bool succeq(const Complex& u, const Complex& v) {
    return (u.real() >= v.real() && u.imag() == v.imag()) || u.imag() > v.imag();
}

/// Strict variant: succeq(u, v) and u != v.
constexpr bool succ(const Complex& u, const Complex& v) {
    return succeq(u, v) && u != v;
}

} // namespace qcf
