#include "factor.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "error.hpp"

namespace qcf {

Quaternion dot(const QMatrix& u, const QMatrix& v) {
    Quaternion s{};
    for (int i = 0; i < u.rows(); ++i) s += conjugate(u(i, 0)) * v(i, 0);
    return s;
}

QRResult gram_schmidt_qr(const QMatrix& s, const Tolerance& tol) {
    if (s.rows() != s.cols())
        throw Error(ErrorCode::invalid_argument, "gram_schmidt_qr: matrix must be square");
    const int n = s.rows();
    QMatrix q(n, n), r(n, n);
    for (int j = 0; j < n; ++j) {
        QMatrix v = s.column(j);
        const double scale = v.frobenius();
        for (int pass = 0; pass < 2; ++pass) {
            for (int i = 0; i < j; ++i) {
                QMatrix qi = q.column(i);
                Quaternion c = dot(qi, v);
                v = v - qi * c;
                r(i, j) += c;
            }
        }
        const double rho = v.frobenius();
        if (rho <= tol.eps_rank * scale || rho == 0.0)
            throw Error(ErrorCode::singular_input,
                        "gram_schmidt_qr: column " + std::to_string(j) + " is numerically dependent");
        r(j, j) = Quaternion{rho};
        q.set_column(j, v * (1.0 / rho));
    }
    return {q, r};
}

int rank(const QMatrix& a, const Tolerance& tol) {
    QMatrix m = a;
    const int rows = m.rows(), cols = m.cols();
    const double thr = tol.eps_rank * m.frobenius();
    int r = 0;
    while (r < rows && r < cols) {
        int pi = r, pj = r;
        double best = 0.0;
        for (int i = r; i < rows; ++i)
            for (int j = r; j < cols; ++j) {
                double nv = m(i, j).norm();
                if (nv > best) { best = nv; pi = i; pj = j; }
            }
        if (best <= thr) break;
        for (int j = 0; j < cols; ++j) std::swap(m(r, j), m(pi, j));
        for (int i = 0; i < rows; ++i) std::swap(m(i, r), m(i, pj));
        Quaternion pinv = inverse(m(r, r));
        for (int i = r + 1; i < rows; ++i) {
            if (m(i, r).is_zero()) continue;
            Quaternion f = m(i, r) * pinv;
            for (int j = r; j < cols; ++j) m(i, j) = m(i, j) - f * m(r, j);
        }
        ++r;
    }
    return r;
}

QMatrix orthonormal_columns(const QMatrix& cols, const Tolerance& tol, const QMatrix* against) {
    const int n = cols.rows();
    std::vector<QMatrix> basis;
    for (int j = 0; j < cols.cols(); ++j) {
        QMatrix v = cols.column(j);
        const double scale = v.frobenius();
        for (int pass = 0; pass < 2; ++pass) {
            if (against)
                for (int i = 0; i < against->cols(); ++i) {
                    QMatrix qi = against->column(i);
                    v = v - qi * dot(qi, v);
                }
            for (const QMatrix& qi : basis) v = v - qi * dot(qi, v);
        }
        const double rho = v.frobenius();
        if (rho > tol.eps_rank * std::max(scale, 1.0) && rho > 0.0)
            basis.push_back(v * (1.0 / rho));
    }
    QMatrix out(n, static_cast<int>(basis.size()));
    for (size_t j = 0; j < basis.size(); ++j) out.set_column(static_cast<int>(j), basis[j]);
    return out;
}

QMatrix complete_unitary(const QMatrix& q) {
    const int n = q.rows();
    QMatrix out(n, n);
    out.set_block(0, 0, q);
    int have = q.cols();
    while (have < n) {
        int best_c = -1;
        double best_rho = -1.0;
        QMatrix best_v;
        for (int c = 0; c < n; ++c) {
            QMatrix v(n, 1);
            v(c, 0) = Quaternion::one();
            for (int pass = 0; pass < 2; ++pass)
                for (int i = 0; i < have; ++i) {
                    QMatrix qi = out.column(i);
                    v = v - qi * dot(qi, v);
                }
            double rho = v.frobenius();
            if (rho > best_rho) { best_rho = rho; best_c = c; best_v = v; }
        }
        if (best_c < 0 || best_rho <= 0.0)
            throw Error(ErrorCode::internal, "complete_unitary: no independent direction found");
        out.set_column(have, best_v * (1.0 / best_rho));
        ++have;
    }
    return out;
}

QMatrix kernel_basis(const QMatrix& a, const Tolerance& tol) {
    const int m = a.rows(), n = a.cols();
    QMatrix r = a;
    const double thr = tol.eps_rank * r.frobenius();
    std::vector<int> pivot_col;
    int row = 0;
    for (int col = 0; col < n && row < m; ++col) {
        int p = -1;
        double best = thr;
        for (int i = row; i < m; ++i) {
            double nv = r(i, col).norm();
            if (nv > best) { best = nv; p = i; }
        }
        if (p < 0) continue;
        for (int j = 0; j < n; ++j) std::swap(r(p, j), r(row, j));
        Quaternion pinv = inverse(r(row, col));
        for (int j = 0; j < n; ++j) r(row, j) = pinv * r(row, j);
        r(row, col) = Quaternion::one();
        for (int i = 0; i < m; ++i) {
            if (i == row || r(i, col).is_zero()) continue;
            Quaternion f = r(i, col);
            for (int j = 0; j < n; ++j) r(i, j) = r(i, j) - f * r(row, j);
            r(i, col) = Quaternion::zero();
        }
        pivot_col.push_back(col);
        ++row;
    }
    std::vector<int> free_col;
    for (int c = 0, t = 0; c < n; ++c) {
        if (t < static_cast<int>(pivot_col.size()) && pivot_col[t] == c) { ++t; continue; }
        free_col.push_back(c);
    }
    QMatrix basis(n, static_cast<int>(free_col.size()));
    for (size_t t = 0; t < free_col.size(); ++t) {
        int f = free_col[t];
        basis(f, static_cast<int>(t)) = Quaternion::one();
        for (size_t i = 0; i < pivot_col.size(); ++i)
            basis(pivot_col[i], static_cast<int>(t)) = -r(static_cast<int>(i), f);
    }
    return basis;
}

SVDResult svd(const QMatrix& a, const Tolerance& tol) {
    (void)tol;
    const int m = a.rows(), n = a.cols();
    QMatrix w = a;
    QMatrix v = QMatrix::identity(n);
    const double conv = 5e-14;
    const int sweep_cap = 100;

    for (int sweep = 0;; ++sweep) {
        bool rotated = false;
        for (int p = 0; p < n - 1; ++p)
            for (int q = p + 1; q < n; ++q) {
                double app = 0.0, aqq = 0.0;
                Quaternion g{};
                for (int i = 0; i < m; ++i) {
                    app += w(i, p).norm_sq();
                    aqq += w(i, q).norm_sq();
                    g += conjugate(w(i, p)) * w(i, q);
                }
                double gn = g.norm();
                // the absolute floor covers rotation-injected roundoff on
                // strongly graded column pairs, which never passes the
                // relative test
                double noise = 16.0 * std::numeric_limits<double>::epsilon() * std::max(app, aqq);
                if (app == 0.0 || aqq == 0.0 ||
                    gn <= std::max(conv * std::sqrt(app * aqq), noise))
                    continue;
                rotated = true;
                Quaternion u = g / gn;
                double tau = (aqq - app) / (2.0 * gn);
                double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                double c = 1.0 / std::sqrt(1.0 + t * t);
                double s = t * c;
                Quaternion su = u * s;
                Quaternion suc = conjugate(su);
                for (int i = 0; i < m; ++i) {
                    Quaternion wp = w(i, p), wq = w(i, q);
                    w(i, p) = wp * c - wq * suc;
                    w(i, q) = wp * su + wq * c;
                }
                for (int i = 0; i < n; ++i) {
                    Quaternion vp = v(i, p), vq = v(i, q);
                    v(i, p) = vp * c - vq * suc;
                    v(i, q) = vp * su + vq * c;
                }
            }
        if (!rotated) break;
        if (sweep + 1 >= sweep_cap)
            throw Error(ErrorCode::no_convergence, "svd: Jacobi sweep cap exceeded");
    }

    std::vector<double> norms(n);
    for (int j = 0; j < n; ++j) {
        double s = 0.0;
        for (int i = 0; i < m; ++i) s += w(i, j).norm_sq();
        norms[j] = std::sqrt(s);
    }
    std::vector<int> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](int x, int y) { return norms[x] > norms[y]; });

    const int k = std::min(m, n);
    SVDResult out;
    out.sigma.resize(k);
    const double sig_max = norms.empty() ? 0.0 : norms[idx[0]];
    const double tiny = (sig_max > 0.0 ? sig_max : 1.0) * 1e-13;

    std::vector<QMatrix> ukept;
    for (int t = 0; t < k; ++t) {
        out.sigma[t] = norms[idx[t]];
        if (norms[idx[t]] > tiny)
            ukept.push_back(w.column(idx[t]) * (1.0 / norms[idx[t]]));
    }
    QMatrix upart(m, static_cast<int>(ukept.size()));
    for (size_t t = 0; t < ukept.size(); ++t) upart.set_column(static_cast<int>(t), ukept[t]);
    out.U = complete_unitary(upart);

    out.V = QMatrix(n, n);
    for (int t = 0; t < n; ++t) {
        QMatrix col = v.column(idx[t]);
        for (int i = 0; i < n; ++i) out.V(t, i) = conjugate(col(i, 0));
    }
    return out;
}

namespace {

// Cluster complex values whose pairwise distance stays within radius.
struct Cluster {
    Complex sum{};
    int count{0};
    Complex mean() const { return sum / static_cast<double>(count); }
};

} // namespace

EigenList right_eigenvalues(const QMatrix& a, const Tolerance& tol) {
    if (a.rows() != a.cols())
        throw Error(ErrorCode::invalid_argument, "right_eigenvalues: matrix must be square");
    const int n = a.rows();
    if (n == 0) return {};

    CMatrix chi = adjoint_complex(a);
    std::vector<Complex> ev = eigenvalues(chi, 100 * std::max(n, 4));
    double rho = 0.0;
    for (Complex& l : ev) {
        if (l.imag() < 0) l = std::conj(l);
        rho = std::max(rho, std::abs(l));
    }

    // Computed eigenvalues of a defective block of size m scatter like
    // eps^(1/m) around the true value, far beyond eps_eig. The clustering
    // radius therefore carries a defect-aware floor; the refinement below
    // recovers the lost accuracy.
    const double snap = tol.eps_eig * (1.0 + a.frobenius());
    const double radius =
        std::max(snap, 0.5 * (1.0 + rho) *
                           std::pow(std::numeric_limits<double>::epsilon(), 1.0 / (2.0 * n)));

    std::vector<Cluster> clusters;
    for (const Complex& l : ev) {
        bool placed = false;
        for (Cluster& c : clusters)
            if (std::abs(c.mean() - l) <= radius) {
                c.sum += l;
                ++c.count;
                placed = true;
                break;
            }
        if (!placed) clusters.push_back({l, 1});
    }
    // second pass merges clusters that drifted together
    for (bool merged = true; merged;) {
        merged = false;
        for (size_t i = 0; i < clusters.size() && !merged; ++i)
            for (size_t j = i + 1; j < clusters.size() && !merged; ++j)
                if (std::abs(clusters[i].mean() - clusters[j].mean()) <= radius) {
                    clusters[i].sum += clusters[j].sum;
                    clusters[i].count += clusters[j].count;
                    clusters.erase(clusters.begin() + static_cast<long>(j));
                    merged = true;
                }
    }

    EigenList out;
    for (const Cluster& c : clusters) {
        if (c.count % 2 != 0)
            throw Error(ErrorCode::no_convergence,
                        "right_eigenvalues: conjugate pairing failed at the clustering radius");
        Complex value = c.mean();
        if (c.count >= 4) {
            // multiplicity-aware Newton on the logarithmic derivative;
            // the adjoint multiplicity at the root is the cluster size for a
            // real candidate and half of it above the axis
            double mult = std::abs(value.imag()) <= radius ? c.count : c.count / 2;
            Complex z = value;
            for (int it = 0; it < 5; ++it) {
                Complex s;
                try {
                    s = shifted_inverse_trace(chi, z);
                } catch (const Error&) {
                    break; // z hit an exact eigenvalue; keep it
                }
                if (s == Complex{} || !std::isfinite(s.real()) || !std::isfinite(s.imag())) break;
                Complex next = z - mult / s;
                if (!std::isfinite(next.real()) || !std::isfinite(next.imag())) break;
                z = next;
            }
            if (std::abs(z - value) <= 2.0 * radius) value = z;
            if (value.imag() < 0.0) value = std::conj(value);
        }
        if (std::abs(value.imag()) <= snap) value = Complex{value.real(), 0.0};
        out.push_back({value, c.count / 2});
    }

    // group imaginary parts that agree within the snap so the (Im, Re) sort
    // is reproducible across runs
    std::vector<double> ims;
    for (const EigenPair& p : out) ims.push_back(p.value.imag());
    std::sort(ims.begin(), ims.end());
    std::vector<std::pair<double, double>> groups; // raw lo, snapped value
    for (size_t i = 0; i < ims.size();) {
        size_t j = i;
        while (j + 1 < ims.size() && ims[j + 1] - ims[j] <= snap) ++j;
        double mean = 0.0;
        for (size_t k = i; k <= j; ++k) mean += ims[k];
        groups.emplace_back(ims[i], mean / static_cast<double>(j - i + 1));
        i = j + 1;
    }
    for (EigenPair& p : out) {
        double im = p.value.imag();
        // nearest group wins; group spans never overlap by construction
        double best = groups.front().second;
        for (const auto& [lo, snapped] : groups) {
            (void)lo;
            if (std::abs(im - snapped) < std::abs(im - best)) best = snapped;
        }
        p.value = Complex{p.value.real(), best};
    }

    std::sort(out.begin(), out.end(), [](const EigenPair& p, const EigenPair& q) {
        return succ(p.value, q.value);
    });
    return out;
}

double RMatrix::frobenius() const {
    double s = 0.0;
    for (double x : e) s += x * x;
    return std::sqrt(s);
}

std::vector<double> qvec_to_real(const QMatrix& v) {
    std::vector<double> x(static_cast<size_t>(v.rows()) * 4);
    for (int i = 0; i < v.rows(); ++i) {
        x[4 * i + 0] = v(i, 0).w;
        x[4 * i + 1] = v(i, 0).x;
        x[4 * i + 2] = v(i, 0).y;
        x[4 * i + 3] = v(i, 0).z;
    }
    return x;
}

QMatrix real_to_qvec(const std::vector<double>& x, int n) {
    QMatrix v(n, 1);
    for (int i = 0; i < n; ++i)
        v(i, 0) = Quaternion{x[4 * i + 0], x[4 * i + 1], x[4 * i + 2], x[4 * i + 3]};
    return v;
}

RMatrix sylvester_real(const QMatrix& a, const Complex& lambda) {
    const int n = a.rows();
    RMatrix m(4 * n, 4 * n);
    const Quaternion lq = from_complex(lambda);
    const Quaternion units[4] = {Quaternion::one(), Quaternion::i(), Quaternion::j(),
                                 Quaternion::k()};
    for (int p = 0; p < n; ++p)
        for (int c = 0; c < 4; ++c) {
            QMatrix ecol(n, 1);
            ecol(p, 0) = units[c];
            QMatrix img = a * ecol - ecol * lq;
            std::vector<double> col = qvec_to_real(img);
            for (int i = 0; i < 4 * n; ++i) m.at(i, 4 * p + c) = col[i];
        }
    return m;
}

namespace {

// In-place real RREF; returns pivot columns.
std::vector<int> real_rref(RMatrix& m, double thr) {
    std::vector<int> pivots;
    int row = 0;
    for (int col = 0; col < m.cols && row < m.rows; ++col) {
        int p = -1;
        double best = thr;
        for (int i = row; i < m.rows; ++i)
            if (std::abs(m.at(i, col)) > best) { best = std::abs(m.at(i, col)); p = i; }
        if (p < 0) continue;
        for (int j = 0; j < m.cols; ++j) std::swap(m.at(p, j), m.at(row, j));
        double inv = 1.0 / m.at(row, col);
        for (int j = 0; j < m.cols; ++j) m.at(row, j) *= inv;
        m.at(row, col) = 1.0;
        for (int i = 0; i < m.rows; ++i) {
            if (i == row || m.at(i, col) == 0.0) continue;
            double f = m.at(i, col);
            for (int j = 0; j < m.cols; ++j) m.at(i, j) -= f * m.at(row, j);
            m.at(i, col) = 0.0;
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

} // namespace

std::vector<std::vector<double>> real_kernel(RMatrix m, double pivot_threshold) {
    const int n = m.cols;
    std::vector<int> pivots = real_rref(m, pivot_threshold);
    std::vector<int> free_col;
    for (int c = 0, t = 0; c < n; ++c) {
        if (t < static_cast<int>(pivots.size()) && pivots[t] == c) { ++t; continue; }
        free_col.push_back(c);
    }
    std::vector<std::vector<double>> basis;
    for (int f : free_col) {
        std::vector<double> x(n, 0.0);
        x[f] = 1.0;
        for (size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = -m.at(static_cast<int>(i), f);
        basis.push_back(std::move(x));
    }
    return basis;
}

bool real_solve(RMatrix m, std::vector<double> b, std::vector<double>& x, double pivot_threshold,
                double residual_threshold) {
    const int rows = m.rows, cols = m.cols;
    RMatrix aug(rows, cols + 1);
    for (int i = 0; i < rows; ++i) {
        for (int j = 0; j < cols; ++j) aug.at(i, j) = m.at(i, j);
        aug.at(i, cols) = b[i];
    }
    // eliminate on the coefficient part only
    std::vector<int> pivots;
    int row = 0;
    for (int col = 0; col < cols && row < rows; ++col) {
        int p = -1;
        double best = pivot_threshold;
        for (int i = row; i < rows; ++i)
            if (std::abs(aug.at(i, col)) > best) { best = std::abs(aug.at(i, col)); p = i; }
        if (p < 0) continue;
        for (int j = 0; j <= cols; ++j) std::swap(aug.at(p, j), aug.at(row, j));
        double inv = 1.0 / aug.at(row, col);
        for (int j = 0; j <= cols; ++j) aug.at(row, j) *= inv;
        aug.at(row, col) = 1.0;
        for (int i = 0; i < rows; ++i) {
            if (i == row || aug.at(i, col) == 0.0) continue;
            double f = aug.at(i, col);
            for (int j = 0; j <= cols; ++j) aug.at(i, j) -= f * aug.at(row, j);
            aug.at(i, col) = 0.0;
        }
        pivots.push_back(col);
        ++row;
    }
    for (int i = row; i < rows; ++i)
        if (std::abs(aug.at(i, cols)) > residual_threshold) return false;
    x.assign(cols, 0.0);
    for (size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = aug.at(static_cast<int>(i), cols);
    return true;
}

} // namespace qcf
