#include "schur.hpp"

#include <algorithm>
#include <cmath>

#include <json.hpp>

#include "error.hpp"

namespace qcf {

Partition conjugate_partition(const Partition& m) {
    if (m.empty()) return {};
    Partition r(m[0]);
    for (int i = 1; i <= m[0]; ++i)
        r[i - 1] = static_cast<int>(std::count_if(m.begin(), m.end(), [i](int mj) { return mj >= i; }));
    return r;
}

Partition weyr_characteristic(const QMatrix& a, double lambda, const Tolerance& tol) {
    const int n = a.rows();
    QMatrix shifted = a - QMatrix::identity(n) * lambda;
    if (rank(shifted, tol) == n)
        throw Error(ErrorCode::not_an_eigenvalue,
                    "weyr_characteristic: A - lambda I has full rank");
    Partition r;
    QMatrix power = QMatrix::identity(n);
    int prev = n;
    while (true) {
        power = power * shifted;
        int cur = rank(power, tol);
        if (cur == prev) break;
        r.push_back(prev - cur);
        prev = cur;
        if (cur == 0) break;
    }
    return r;
}

QMatrix modified_jordan(const EigenList& eigs, const std::vector<Partition>& weyrs) {
    if (eigs.size() != weyrs.size())
        throw Error(ErrorCode::bad_shape, "modified_jordan: one Weyr list per eigenvalue required");
    int n = 0;
    for (size_t t = 0; t < eigs.size(); ++t) {
        const Partition& w = weyrs[t];
        if (w.empty())
            throw Error(ErrorCode::bad_shape, "modified_jordan: empty Weyr list");
        int sum = 0;
        for (size_t i = 0; i < w.size(); ++i) {
            if (w[i] <= 0 || (i > 0 && w[i] > w[i - 1]))
                throw Error(ErrorCode::bad_shape, "modified_jordan: Weyr list must be decreasing");
            sum += w[i];
        }
        if (sum != eigs[t].multiplicity)
            throw Error(ErrorCode::bad_shape,
                        "modified_jordan: Weyr sum differs from eigenvalue multiplicity");
        n += sum;
    }
    QMatrix b(n, n);
    int off = 0;
    for (size_t t = 0; t < eigs.size(); ++t) {
        const Partition& w = weyrs[t];
        const Quaternion lq = from_complex(eigs[t].value);
        int pos = off;
        for (size_t i = 0; i < w.size(); ++i) {
            for (int d = 0; d < w[i]; ++d) b(pos + d, pos + d) = lq;
            if (i + 1 < w.size())
                for (int d = 0; d < w[i + 1]; ++d)
                    b(pos + d, pos + w[i] + d) = Quaternion::one();
            pos += w[i];
        }
        off = pos;
    }
    return b;
}

namespace {

// Layered generalized-eigenvector basis for one real eigenvalue, ordered so
// that (A - lambda I) maps layer l+1 onto the leading columns of layer l.
QMatrix weyr_layer_basis(const QMatrix& a, double lambda, const Partition& weyr,
                         const Tolerance& tol) {
    const int n = a.rows();
    const int s = static_cast<int>(weyr.size());
    QMatrix shifted = a - QMatrix::identity(n) * lambda;

    std::vector<QMatrix> kernels(s + 1); // kernels[l] spans ker(shifted^l)
    kernels[0] = QMatrix(n, 0);
    QMatrix power = QMatrix::identity(n);
    for (int l = 1; l <= s; ++l) {
        power = power * shifted;
        kernels[l] = orthonormal_columns(kernel_basis(power, tol), tol);
        int expect = 0;
        for (int i = 0; i < l && i < s; ++i) expect += weyr[i];
        if (kernels[l].cols() != expect)
            throw Error(ErrorCode::internal, "weyr_layer_basis: kernel dimension mismatch");
    }

    std::vector<QMatrix> layers(s + 1);
    for (int l = s; l >= 1; --l) {
        QMatrix from_above(n, 0);
        if (l < s) from_above = shifted * layers[l + 1];
        int extra = weyr[l - 1] - from_above.cols();
        QMatrix layer(n, weyr[l - 1]);
        layer.set_block(0, 0, from_above);
        if (extra > 0) {
            // candidates from ker(shifted^l), independent modulo the lower
            // kernel and what already arrived from above
            QMatrix occupied(n, kernels[l - 1].cols() + from_above.cols());
            occupied.set_block(0, 0, kernels[l - 1]);
            occupied.set_block(0, kernels[l - 1].cols(), from_above);
            QMatrix wall = orthonormal_columns(occupied, tol);
            QMatrix picked = orthonormal_columns(kernels[l], tol, &wall);
            if (picked.cols() < extra)
                throw Error(ErrorCode::internal, "weyr_layer_basis: layer completion failed");
            layer.set_block(0, from_above.cols(), picked.block(0, 0, n, extra));
        }
        layers[l] = layer;
    }

    int total = 0;
    for (int x : weyr) total += x;
    QMatrix out(n, total);
    int pos = 0;
    for (int l = 1; l <= s; ++l) {
        out.set_block(0, pos, layers[l]);
        pos += weyr[l - 1];
    }
    return out;
}

} // namespace

SchurRealForm strengthened_schur(const QMatrix& a, const Tolerance& tol) {
    if (a.rows() != a.cols())
        throw Error(ErrorCode::invalid_argument, "strengthened_schur: matrix must be square");
    const int n = a.rows();
    const double scale = 1.0 + a.frobenius();

    EigenList eigs = right_eigenvalues(a, tol);
    for (const EigenPair& p : eigs)
        if (p.value.imag() != 0.0)
            throw Error(ErrorCode::non_real_spectrum,
                        "strengthened_schur: eigenvalue with nonreal part present");

    // eigs is succeq-descending; for reals that is plain descending order
    std::vector<Partition> weyrs;
    SchurRealForm form;
    QMatrix s_cols(n, 0);
    for (const EigenPair& p : eigs) {
        Partition w = weyr_characteristic(a, p.value.real(), tol);
        int sum = 0;
        for (int x : w) sum += x;
        if (sum != p.multiplicity)
            throw Error(ErrorCode::internal,
                        "strengthened_schur: Weyr total differs from algebraic multiplicity");
        QMatrix basis = weyr_layer_basis(a, p.value.real(), w, tol);
        QMatrix joined(n, s_cols.cols() + basis.cols());
        joined.set_block(0, 0, s_cols);
        joined.set_block(0, s_cols.cols(), basis);
        s_cols = joined;
        for (int x : w) {
            form.lambdas.push_back(p.value.real());
            form.sizes.push_back(x);
        }
        weyrs.push_back(std::move(w));
    }

    QRResult qr = gram_schmidt_qr(s_cols, tol);
    form.U = qr.Q;
    QMatrix f = form.U.conj_transpose() * a * form.U;

    // project onto the exact block pattern, then check the residual
    const int blocks = static_cast<int>(form.sizes.size());
    std::vector<int> start(blocks + 1, 0);
    for (int b = 0; b < blocks; ++b) start[b + 1] = start[b] + form.sizes[b];

    QMatrix exact = f;
    for (int b = 0; b < blocks; ++b)
        for (int i = start[b]; i < start[b + 1]; ++i)
            for (int j = start[b]; j < start[b + 1]; ++j)
                exact(i, j) = (i == j) ? Quaternion{form.lambdas[b]} : Quaternion::zero();
    for (int b = 0; b < blocks; ++b)
        for (int c = 0; c < b; ++c)
            for (int i = start[b]; i < start[b + 1]; ++i)
                for (int j = start[c]; j < start[c + 1]; ++j)
                    exact(i, j) = Quaternion::zero();
    for (int b = 0; b + 1 < blocks; ++b) {
        if (form.lambdas[b] != form.lambdas[b + 1]) continue;
        // F_{b,b+1} upper triangular with positive real diagonal
        for (int i = 0; i < form.sizes[b]; ++i)
            for (int j = 0; j < form.sizes[b + 1]; ++j) {
                Quaternion& q = exact(start[b] + i, start[b + 1] + j);
                if (i > j) q = Quaternion::zero();
                if (i == j) {
                    q = Quaternion{q.w};
                    if (q.w <= tol.eps_canon)
                        throw Error(ErrorCode::internal,
                                    "strengthened_schur: coupling diagonal not positive");
                }
            }
    }
    if (residual(f, exact) > tol.eps_canon * scale)
        throw Error(ErrorCode::internal, "strengthened_schur: residual above tolerance");
    form.F = exact;
    return form;
}

bool verify_block_diag_stabilizer(const SchurRealForm& form, const QMatrix& v,
                                  const Tolerance& tol) {
    const int blocks = static_cast<int>(form.sizes.size());
    std::vector<int> start(blocks + 1, 0);
    for (int b = 0; b < blocks; ++b) start[b + 1] = start[b] + form.sizes[b];
    const double thr = tol.eps_canon * (1.0 + form.F.frobenius()) * 10.0;

    QMatrix g = v.conj_transpose() * form.F * v;
    for (int b = 0; b < blocks; ++b) {
        for (int i = start[b]; i < start[b + 1]; ++i)
            for (int j = start[b]; j < start[b + 1]; ++j) {
                Quaternion want = (i == j) ? Quaternion{form.lambdas[b]} : Quaternion::zero();
                if ((g(i, j) - want).norm() > thr) return false;
            }
        for (int c = 0; c < b; ++c)
            for (int i = start[b]; i < start[b + 1]; ++i)
                for (int j = start[c]; j < start[c + 1]; ++j)
                    if (g(i, j).norm() > thr) return false;
    }
    for (int b = 0; b < blocks; ++b)
        for (int c = 0; c < blocks; ++c) {
            if (b == c) continue;
            for (int i = start[b]; i < start[b + 1]; ++i)
                for (int j = start[c]; j < start[c + 1]; ++j)
                    if (v(i, j).norm() > thr) return false;
        }
    return true;
}

std::string schur_to_json(const SchurRealForm& form) {
    nlohmann::json out{{"U", nlohmann::json::parse(matrix_to_json(form.U))},
                       {"F", nlohmann::json::parse(matrix_to_json(form.F))},
                       {"lambdas", form.lambdas},
                       {"sizes", form.sizes}};
    return out.dump();
}

} // namespace qcf
